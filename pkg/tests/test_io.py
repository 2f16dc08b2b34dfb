from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from tourcycles.core import (
    SNDR13_ROWS, Tournament, f_map, qr, rlt, rndr9, sndr13, three_cycle, transitive, umin11, umin13, wreath_delta,
)
from tourcycles.io import (
    CSV_COLUMNS, DIGRAPH6_HEADER, FormatError, HeaderError, MatrixTextError, NotATournamentError, RawDigraph,
    ReportDocument, TruncatedError, decode_digraph6, detect_format, encode_digraph6, iter_corpus,
    read_matrix_text, write_matrix_text,
)
from test_core import random_tournament


def constructor_outputs():
    out = [transitive(n) for n in range(1, 14)] + [rlt(n) for n in range(1, 14, 2)]
    out += [qr(p) for p in (3, 7, 11)] + [sndr13(), wreath_delta(), rndr9(), umin11(), umin13(), three_cycle()]
    out += [f_map(transitive(k)) for k in range(1, 7)]
    return out


def slow_decode(line):
    """Independent reference: expand every payload character into a 6-bit string."""
    body = line[1:]
    if body[0] == "~":
        n = int("".join(format(ord(c) - 63, "06b") for c in body[1:4]), 2)
        payload = body[4:]
    else:
        n = ord(body[0]) - 63
        payload = body[1:]
    bits = "".join(format(ord(c) - 63, "06b") for c in payload)[: n * n]
    return n, [[int(bits[i * n + j]) for j in range(n)] for i in range(n)]


def is_tournament_matrix(n, a):
    return all(a[i][i] == 0 for i in range(n)) and all(a[i][j] + a[j][i] == 1 for i in range(n) for j in range(i + 1, n))


def raw_encode(n, a):
    bits = "".join(str(a[i][j]) for i in range(n) for j in range(n))
    bits += "0" * (-len(bits) % 6)
    size = chr(63 + n) if n < 63 else "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    return "&" + size + "".join(chr(63 + int(bits[k:k + 6], 2)) for k in range(0, len(bits), 6))


def test_digraph6_examples():
    t = decode_digraph6("&AO")
    assert t == transitive(2) and t.has_arc(0, 1)
    assert encode_digraph6(transitive(2)) == "&AO"
    s = encode_digraph6(three_cycle())
    assert len(s) == 4 and decode_digraph6(s) == three_cycle()
    assert decode_digraph6(encode_digraph6(sndr13())).rows == sndr13().rows


def test_round_trip_constructors_and_random():
    for t in constructor_outputs():
        assert decode_digraph6(encode_digraph6(t)) == t
        assert read_matrix_text(write_matrix_text(t)) == t
    rng = random.Random(11)
    for _ in range(500):
        n = rng.randint(1, 32)
        t = random_tournament(n, rng.getrandbits(n * (n - 1) // 2))
        assert decode_digraph6(encode_digraph6(t)) == t
        assert read_matrix_text(write_matrix_text(t)) == t


def test_long_size_form():
    for n in (63, 65, 101, 128):
        t = rlt(n) if n % 2 else transitive(n)
        s = encode_digraph6(t)
        assert s[1] == "~"
        assert decode_digraph6(s) == t


def test_decoder_agrees_with_slow_decoder_on_random_digraphs():
    rng = random.Random(3)
    for _ in range(400):
        n = rng.randint(1, 9)
        if rng.random() < 0.5:
            t = random_tournament(n, rng.getrandbits(n * (n - 1) // 2))
            a = t.matrix()
            if rng.random() < 0.5:
                i, j = rng.randrange(n), rng.randrange(n)
                a[i][j] ^= 1
        else:
            a = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
        line = raw_encode(n, a)
        sn, sa = slow_decode(line)
        assert (sn, sa) == (n, a)
        raw = decode_digraph6(line, relaxed=True)
        assert [[int(raw.has_arc(i, j)) for j in range(n)] for i in range(n)] == a
        if is_tournament_matrix(n, a):
            assert isinstance(decode_digraph6(line), Tournament)
        else:
            assert isinstance(raw, RawDigraph)
            with pytest.raises(NotATournamentError):
                decode_digraph6(line)


def test_both_arcs_rejected():
    line = raw_encode(2, [[0, 1], [1, 0]])
    with pytest.raises(NotATournamentError):
        decode_digraph6(line)


def test_error_categories():
    with pytest.raises(HeaderError):
        decode_digraph6("AO")
    with pytest.raises(HeaderError):
        decode_digraph6("&")
    with pytest.raises(HeaderError):
        decode_digraph6("&~A")
    with pytest.raises(TruncatedError):
        decode_digraph6("&C")
    with pytest.raises(TruncatedError):
        decode_digraph6("&AOO")
    with pytest.raises(TruncatedError):
        decode_digraph6("&AP")  # padding bit set
    assert issubclass(NotATournamentError, FormatError) and not issubclass(NotATournamentError, TruncatedError)


def test_header_line_tolerated():
    text = DIGRAPH6_HEADER + "\n" + encode_digraph6(qr(7)) + "\n\n" + encode_digraph6(rlt(7)) + "\n"
    assert detect_format(text) == "digraph6"
    assert list(iter_corpus(text)) == [qr(7), rlt(7)]
    assert decode_digraph6(DIGRAPH6_HEADER + "&AO") == transitive(2)


def test_matrix_text_examples():
    grid = "\n".join(" ".join(row) for row in SNDR13_ROWS)
    assert read_matrix_text(grid) == sndr13()
    assert read_matrix_text("\n".join(SNDR13_ROWS)) == sndr13()
    assert read_matrix_text("0") == transitive(1)
    assert write_matrix_text(transitive(2)) == "0 1\n0 0\n"


def test_matrix_text_errors():
    with pytest.raises(MatrixTextError) as e:
        read_matrix_text("0 1 0\n0 1 1\n1 0 0")
    assert "(1,1)" in str(e.value) and e.value.line == 2 and e.value.column == 2
    with pytest.raises(MatrixTextError, match="ragged"):
        read_matrix_text("0 1\n0")
    with pytest.raises(MatrixTextError, match="stray") as e:
        read_matrix_text("0 x\n0 0")
    assert e.value.column == 2
    with pytest.raises(MatrixTextError, match="both"):
        read_matrix_text("0 1\n1 0")
    with pytest.raises(MatrixTextError):
        read_matrix_text("  \n")


def test_matrix_corpus_blocks():
    text = write_matrix_text(qr(7)) + "\n" + write_matrix_text(rlt(5))
    assert detect_format(text) == "matrix"
    assert list(iter_corpus(text)) == [qr(7), rlt(5)]


def test_report_json_round_trip_and_csv():
    rows = [{"object_id": "QR_11", "n": 11, "m": 8, "value_class": "total", "exact_value": 7425},
            {"object_id": "x", "n": 9, "m": 8, "value_class": "ratio", "exact_value": Fraction(-639, 16)}]
    doc = ReportDocument.create("census", rows, "family=qr n=11")
    text = doc.to_json()
    data = json.loads(text)
    assert data["schema"] and data["provenance"]["version"]
    back = ReportDocument.from_json(text)
    assert back == doc and back.to_json() == text
    csv_text = doc.to_csv()
    assert csv_text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert csv_text.splitlines()[2].endswith("-639/16")
    assert doc.to_csv() == ReportDocument("census", doc.payload, {"other": 1}).to_csv()


def test_report_verification_columns_and_schema_check():
    doc = ReportDocument.create("verification", [{"object_id": "a", "n": 1, "m": None, "value_class": "x",
                                                   "exact_value": 1, "lhs": 1, "rhs": 2, "verdict": "fail"}])
    assert doc.to_csv().splitlines()[0].endswith("lhs,rhs,verdict")
    assert not doc.passed
    with pytest.raises(FormatError):
        ReportDocument.from_json(json.dumps({"schema": "other/9", "kind": "census", "payload": [], "provenance": {}}))
    with pytest.raises(ValueError):
        ReportDocument("plots", [], {})
