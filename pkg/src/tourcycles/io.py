"""External formats: digraph6, plain matrix text and JSON/CSV reports."""

from __future__ import annotations

import csv
import io as _io
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator

from . import __version__
from .core import MAX_ORDER, Tournament, TournamentError

DIGRAPH6_HEADER = ">>digraph6<<"
SCHEMA_VERSION = "tourcycles.report/1"
REPORT_KINDS = ("census", "verification", "crossover", "enumeration", "spectral")
CSV_COLUMNS = ("object_id", "n", "m", "value_class", "exact_value")
CSV_CHECK_COLUMNS = CSV_COLUMNS + ("lhs", "rhs", "verdict")


class FormatError(ValueError):
    """Base class for malformed input."""


class HeaderError(FormatError):
    """Missing '&' or a bad size field."""


class TruncatedError(FormatError):
    """Too few or too many payload characters."""


class NotATournamentError(FormatError):
    """Well-formed digraph whose adjacency is not a tournament."""


class MatrixTextError(FormatError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(msg + where)


@dataclass(frozen=True)
class RawDigraph:
    """Adjacency rows of a decoded digraph that need not be a tournament."""

    n: int
    rows: tuple[int, ...]

    def has_arc(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)


# ---------------------------------------------------------------------------
# digraph6


def _encode_size(n: int) -> str:
    if n < 63:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))


def _decode_size(body: str) -> tuple[int, int]:
    """Return (n, characters consumed)."""
    if not body:
        raise HeaderError("missing size field")

    def val(c: str) -> int:
        v = ord(c) - 63
        if not 0 <= v < 64:
            raise HeaderError(f"invalid size character {c!r}")
        return v

    if body[0] != "~":
        return val(body[0]), 1
    if len(body) >= 2 and body[1] == "~":
        if len(body) < 8:
            raise HeaderError("truncated 8-byte size field")
        n = 0
        for c in body[2:8]:
            n = (n << 6) | val(c)
        return n, 8
    if len(body) < 4:
        raise HeaderError("truncated 4-byte size field")
    n = 0
    for c in body[1:4]:
        n = (n << 6) | val(c)
    return n, 4


def encode_digraph6(t: Tournament | RawDigraph) -> str:
    n = t.n
    bits = []
    for i in range(n):
        r = t.rows[i]
        bits.extend((r >> j) & 1 for j in range(n))
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        chars.append(chr(63 + v))
    return "&" + _encode_size(n) + "".join(chars)


def decode_digraph6_raw(line: str) -> RawDigraph:
    s = line.strip()
    if s.startswith(DIGRAPH6_HEADER):
        s = s[len(DIGRAPH6_HEADER):]
    if not s.startswith("&"):
        raise HeaderError("digraph6 record must start with '&'")
    n, used = _decode_size(s[1:])
    if n > MAX_ORDER:
        raise HeaderError(f"order {n} exceeds guard {MAX_ORDER}")
    payload = s[1 + used:]
    need = -(-n * n // 6)
    if len(payload) < need:
        raise TruncatedError(f"expected {need} payload characters, got {len(payload)}")
    if len(payload) > need:
        raise TruncatedError(f"trailing data: expected {need} payload characters, got {len(payload)}")
    rows = [0] * n
    k = 0
    for c in payload:
        v = ord(c) - 63
        if not 0 <= v < 64:
            raise TruncatedError(f"invalid payload character {c!r}")
        for s_ in range(5, -1, -1):
            if k < n * n:
                if (v >> s_) & 1:
                    rows[k // n] |= 1 << (k % n)
            elif (v >> s_) & 1:
                raise TruncatedError("nonzero padding bits")
            k += 1
    return RawDigraph(n, tuple(rows))


def decode_digraph6(line: str, *, relaxed: bool = False) -> Tournament | RawDigraph:
    """Decode one record; ``relaxed`` returns a RawDigraph instead of rejecting
    non-tournament adjacency."""
    raw = decode_digraph6_raw(line)
    try:
        return Tournament(raw.n, raw.rows)
    except TournamentError as exc:
        if relaxed:
            return raw
        raise NotATournamentError(str(exc)) from None


# ---------------------------------------------------------------------------
# matrix text


def read_matrix_text(text: str) -> Tournament:
    lines = [(k + 1, ln) for k, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise MatrixTextError("empty matrix")
    grid = []
    for lineno, ln in lines:
        row = []
        col = 0
        for ch in ln:
            if ch.isspace():
                continue
            col += 1
            if ch not in "01":
                raise MatrixTextError(f"stray character {ch!r}", lineno, col)
            row.append(ch == "1")
        grid.append((lineno, row))
    n = len(grid)
    for lineno, row in grid:
        if len(row) != n:
            raise MatrixTextError(f"ragged row: {len(row)} entries, expected {n}", lineno)
    for i, (lineno, row) in enumerate(grid):
        if row[i]:
            raise MatrixTextError(f"diagonal entry ({i},{i}) is 1", lineno, i + 1)
        for j in range(i + 1, n):
            if row[j] == grid[j][1][i]:
                kind = "both" if row[j] else "neither"
                raise MatrixTextError(f"non-tournament pair ({i},{j}): {kind} arcs present", lineno, j + 1)
    rows = tuple(sum(1 << j for j, b in enumerate(row) if b) for _, row in grid)
    return Tournament(n, rows)


def write_matrix_text(t: Tournament) -> str:
    return "\n".join(" ".join("1" if (t.rows[i] >> j) & 1 else "0" for j in range(t.n)) for i in range(t.n)) + "\n"


# ---------------------------------------------------------------------------
# corpora


def detect_format(text: str) -> str:
    for ln in text.splitlines():
        s = ln.strip()
        if not s:
            continue
        if s.startswith("&") or s.startswith(DIGRAPH6_HEADER):
            return "digraph6"
        return "matrix"
    raise FormatError("empty input")


def iter_corpus(text: str, fmt: str | None = None) -> Iterator[Tournament]:
    """Yield tournaments from digraph6 lines or blank-line separated matrices."""
    fmt = fmt or detect_format(text)
    if fmt == "digraph6":
        for k, ln in enumerate(text.splitlines(), 1):
            s = ln.strip()
            if not s or s == DIGRAPH6_HEADER:
                continue
            try:
                yield decode_digraph6(s)
            except FormatError as exc:
                raise type(exc)(f"record {k}: {exc}") from None
    elif fmt == "matrix":
        block: list[str] = []
        for ln in text.splitlines() + [""]:
            if ln.strip():
                block.append(ln)
            elif block:
                yield read_matrix_text("\n".join(block))
                block = []
    else:
        raise FormatError(f"unknown format {fmt!r}")


def read_corpus(path: str | Path, fmt: str | None = None) -> list[Tournament]:
    return list(iter_corpus(Path(path).read_text(encoding="utf-8"), fmt))


# ---------------------------------------------------------------------------
# reports


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class ReportDocument:
    kind: str
    payload: list[dict]
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in REPORT_KINDS:
            raise ValueError(f"unknown report kind {self.kind!r}")

    @classmethod
    def create(cls, kind: str, payload: Iterable[dict], input_spec: str = "") -> "ReportDocument":
        prov = {
            "tool": "tourcycles",
            "version": __version__,
            "input": input_spec,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }
        return cls(kind, [_jsonable(dict(r)) for r in payload], prov)

    @property
    def passed(self) -> bool:
        verdicts = [r["verdict"] for r in self.payload if "verdict" in r]
        return all(v == "pass" for v in verdicts)

    def to_json(self) -> str:
        doc = {"schema": SCHEMA_VERSION, "kind": self.kind, "provenance": self.provenance, "payload": self.payload}
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        doc = json.loads(text)
        if doc.get("schema") != SCHEMA_VERSION:
            raise FormatError(f"unsupported report schema {doc.get('schema')!r}")
        return cls(doc["kind"], doc["payload"], doc["provenance"])

    def to_csv(self) -> str:
        checks = any("verdict" in r for r in self.payload)
        cols = CSV_CHECK_COLUMNS if checks else CSV_COLUMNS
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in self.payload:
            w.writerow(["" if r.get(c) is None else _csv_cell(r.get(c)) for c in cols])
        return buf.getvalue()

    def write(self, path: str | Path, fmt: str = "json") -> None:
        text = self.to_json() if fmt == "json" else self.to_csv()
        Path(path).write_text(text, encoding="utf-8")


def _csv_cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)
