"""Command-line entry point: ``tourcycles {count,verify,crossover,enumerate}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import census as cz
from . import closedform as cf
from . import core
from . import io as tio
from . import iso
from .suites import SUITES, run_suite


class UsageError(Exception):
    pass


def _parse_m(text: str) -> list[int]:
    """``8`` or an inclusive range ``3:8``."""
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":", 1))
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --m value {text!r}; use 8 or 3:8") from None


def _connection(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad connection set {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tourcycles", description="Exact cycle census for tournaments.")
    sub = p.add_subparsers(dest="command", required=True)

    def output_flags(sp):
        sp.add_argument("--out", help="write the report to this path")
        sp.add_argument("--format", choices=("text", "json", "csv"), default=None,
                        help="report format (default: text on stdout, json for --out)")

    c = sub.add_parser("count", help="count m-cycles")
    c.add_argument("--family", help="tt, rlt, qr, rot, sndr13, umin9, umin11, umin13, rndr9")
    c.add_argument("--n", type=int)
    c.add_argument("--connection", type=_connection, default=(), help="connection set for --family rot, e.g. 2,3,4,8")
    c.add_argument("--in", dest="infile", help="digraph6 or matrix-text file (auto-detected)")
    c.add_argument("--m", type=_parse_m, required=True)
    c.add_argument("--per-arc", action="store_true")
    c.add_argument("--per-vertex", action="store_true")
    c.add_argument("--figure-eight", type=int, metavar="VERTEX", default=None,
                   help="also count figure-eight closed walks at VERTEX")
    c.add_argument("--unsafe-scale", action="store_true")
    c.add_argument("--workers", type=int, default=1)
    output_flags(c)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES))
    v.add_argument("--n-max", type=int, default=None)
    v.add_argument("--m", type=int, default=None)
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--budget", type=int, default=None, help="node budget for the DR search (conjectureA)")
    output_flags(v)

    x = sub.add_parser("crossover", help="sign table of c8(RLT_n) - c8(DR_n)")
    x.add_argument("--n-min", type=int, default=9)
    x.add_argument("--n-max", type=int, default=201)
    output_flags(x)

    e = sub.add_parser("enumerate", help="all regular tournaments of order n")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--strategy", choices=("split", "rows"), default="split")
    e.add_argument("--unsafe-scale", action="store_true")
    e.add_argument("--corpus-out", help="also write the class representatives as digraph6 lines")
    output_flags(e)
    return p


# ---------------------------------------------------------------------------


def _load_inputs(args) -> list[tuple[str, core.Tournament]]:
    if args.infile and args.family:
        raise UsageError("use either --family or --in, not both")
    if args.infile:
        path = Path(args.infile)
        if not path.exists():
            raise UsageError(f"input file not found: {path}")
        ts = tio.read_corpus(path)
        if not ts:
            raise UsageError(f"no tournaments in {path}")
        return [(f"{path.name}#{k}", t) for k, t in enumerate(ts)]
    if not args.family:
        raise UsageError("count needs --family or --in")
    spec = core.FamilySpec.parse(args.family, args.n, args.connection)
    t = core.build(spec)
    label = t.name or f"{args.family}_{args.n}"
    return [(label, t)]


def cmd_count(args) -> tio.ReportDocument:
    inputs = _load_inputs(args)
    for m in args.m:
        if m < 3:
            raise UsageError(f"m must be >= 3, got {m}")
        if m > cz.MAX_CYCLE_LENGTH and not args.unsafe_scale:
            raise UsageError(f"m={m} exceeds the guard {cz.MAX_CYCLE_LENGTH}; pass --unsafe-scale")
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    rows = []
    for label, t in inputs:
        if args.figure_eight is not None and not 0 <= args.figure_eight < t.n:
            raise UsageError(f"--figure-eight vertex {args.figure_eight} out of range for n={t.n}")
        for m in args.m:
            c = cz.count_cycles(t, m, unsafe_scale=args.unsafe_scale, workers=args.workers)
            rows.append({"object_id": label, "n": t.n, "m": m, "value_class": "total", "exact_value": c.total})
            if args.per_vertex:
                for v, x in enumerate(c.per_vertex):
                    rows.append({"object_id": f"{label} v={v}", "n": t.n, "m": m, "value_class": "per_vertex", "exact_value": x})
            if args.per_arc:
                u = cz.arc_uniformity(t, m, c)
                rows.append({"object_id": label, "n": t.n, "m": m, "value_class": "arc_uniform",
                             "exact_value": u.common_value if u.uniform else "not uniform"})
                for (i, j), x in sorted(c.per_arc.items()):
                    rows.append({"object_id": f"{label} {i}->{j}", "n": t.n, "m": m, "value_class": "per_arc", "exact_value": x})
            if args.figure_eight is not None:
                f = cz.count_figure_eight(t, args.figure_eight, m, unsafe_scale=args.unsafe_scale)
                rows.append({"object_id": f"{label} v={args.figure_eight}", "n": t.n, "m": m,
                             "value_class": "figure_eight", "exact_value": f.total})
                for (k, h), x in sorted(f.split_counts.items()):
                    rows.append({"object_id": f"{label} v={args.figure_eight} split={k}+{h}", "n": t.n, "m": m,
                                 "value_class": "figure_eight_split", "exact_value": x})
    if len(inputs) > 1:
        for m in args.m:
            vals = [r["exact_value"] for r in rows if r["m"] == m and r["value_class"] == "total"]
            rows.append({"object_id": "corpus", "n": None, "m": m, "value_class": "corpus_min", "exact_value": min(vals)})
            rows.append({"object_id": "corpus", "n": None, "m": m, "value_class": "corpus_max", "exact_value": max(vals)})
    src = args.infile or f"family={args.family} n={args.n} connection={list(args.connection)}"
    return tio.ReportDocument.create("census", rows, f"{src} m={args.m}")


def cmd_verify(args) -> tio.ReportDocument:
    kwargs = {}
    if args.suite == "formulas":
        if args.n_max is not None:
            kwargs["n_max"] = args.n_max
    elif args.suite == "recurrence":
        kwargs = {"m": args.m, "n": args.n}
    elif args.suite == "conjectureA" and args.budget is not None:
        kwargs["budget"] = args.budget
    elif args.n_max is not None or args.m is not None or args.n is not None:
        raise UsageError(f"suite {args.suite!r} takes no --n-max/--m/--n flags")
    checks = run_suite(args.suite, **kwargs)
    return tio.ReportDocument.create("verification", [c.row() for c in checks], f"suite={args.suite} {kwargs}")


def cmd_crossover(args) -> tio.ReportDocument:
    if args.n_min > args.n_max:
        raise UsageError("--n-min must not exceed --n-max")
    rep = cf.crossover_analysis(args.n_min, args.n_max)
    rows = []
    for n, v in rep.rows:
        sign = "positive" if v > 0 else "negative" if v < 0 else "zero"
        rows.append({"object_id": f"n={n}" + (" threshold" if n == rep.threshold else ""), "n": n, "m": 8,
                     "value_class": sign, "exact_value": v})
    rows.append({"object_id": "threshold", "n": rep.threshold, "m": 8, "value_class": "threshold", "exact_value": rep.threshold})
    for z, s in sorted(rep.cubic_signs.items()):
        rows.append({"object_id": f"cubic z={z}", "n": None, "m": None, "value_class": "cubic_sign", "exact_value": s,
                     "lhs": s, "rhs": cf.CUBIC_PATTERN[z], "verdict": "pass" if s == cf.CUBIC_PATTERN[z] else "fail"})
    return tio.ReportDocument.create("crossover", rows, f"n in [{args.n_min}, {args.n_max}]")


def cmd_enumerate(args) -> tio.ReportDocument:
    if args.n % 2 == 0 or args.n < 1:
        raise UsageError(f"--n must be odd and positive, got {args.n}")
    if args.n > iso.ENUM_GUARD and not args.unsafe_scale:
        raise UsageError(f"--n {args.n} exceeds the guard {iso.ENUM_GUARD}; pass --unsafe-scale")
    e = iso.enumerate_regular(args.n, strategy=args.strategy, unsafe_scale=args.unsafe_scale)
    if args.corpus_out:
        lines = [tio.DIGRAPH6_HEADER] + [tio.encode_digraph6(c.tournament) for c in e.classes]
        Path(args.corpus_out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    rows = []
    for k, c in enumerate(e.classes):
        for m, x in sorted(c.cycle_totals.items()):
            rows.append({"object_id": f"class {k} {c.form.data.decode()}", "n": args.n, "m": m,
                         "value_class": "total", "exact_value": x})
        rows.append({"object_id": f"class {k} {c.form.data.decode()}", "n": args.n, "m": None,
                     "value_class": "aut_order", "exact_value": c.aut_order})
        if args.n >= 7 and core.classify(c.tournament).is_doubly_regular:
            u = cz.arc_uniformity(c.tournament, 5)
            rows.append({"object_id": f"class {k} {c.form.data.decode()}", "n": args.n, "m": 5,
                         "value_class": "doubly_regular_per_arc",
                         "exact_value": u.common_value if u.uniform else "not uniform"})
    rows.append({"object_id": "classes", "n": args.n, "m": None, "value_class": "count", "exact_value": len(e.classes)})
    rows.append({"object_id": "labeled", "n": args.n, "m": None, "value_class": "count", "exact_value": e.labeled_total,
                 "lhs": e.labeled_total, "rhs": iso.count_labeled_regular(args.n),
                 "verdict": "pass" if e.labeled_total == iso.count_labeled_regular(args.n) else "fail"})
    if e.classes:
        m_top = max(e.classes[0].cycle_totals) if e.classes[0].cycle_totals else None
        if m_top is not None:
            lo, hi = e.extremes(m_top)
            rows.append({"object_id": "extremes", "n": args.n, "m": m_top, "value_class": "min", "exact_value": lo})
            rows.append({"object_id": "extremes", "n": args.n, "m": m_top, "value_class": "max", "exact_value": hi})
    return tio.ReportDocument.create("enumeration", rows, f"n={args.n} strategy={args.strategy}")


COMMANDS = {"count": cmd_count, "verify": cmd_verify, "crossover": cmd_crossover, "enumerate": cmd_enumerate}


def _text(doc: tio.ReportDocument) -> str:
    lines = []
    for r in doc.payload:
        parts = [str(r["object_id"])]
        if r.get("m") is not None:
            parts.append(f"m={r['m']}")
        parts.append(f"{r['value_class']}={r['exact_value']}")
        if "verdict" in r:
            parts.append(f"lhs={r['lhs']} rhs={r['rhs']} {r['verdict'].upper()}")
        lines.append("  ".join(parts))
    checks = [r for r in doc.payload if "verdict" in r]
    if checks:
        ok = sum(r["verdict"] == "pass" for r in checks)
        lines.append(f"{ok}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = COMMANDS[args.command](args)
    except (UsageError, core.TournamentError, cz.GuardError, tio.FormatError, OSError) as exc:
        print(f"tourcycles: error: {exc}", file=sys.stderr)
        return 2
    fmt = args.format or ("json" if args.out else "text")
    if args.out:
        if fmt == "text":
            Path(args.out).write_text(_text(doc), encoding="utf-8")
        else:
            doc.write(args.out, fmt)
    else:
        sys.stdout.write({"text": _text, "json": tio.ReportDocument.to_json, "csv": tio.ReportDocument.to_csv}[fmt](doc))
    return 0 if doc.passed else 1


if __name__ == "__main__":
    sys.exit(main())
