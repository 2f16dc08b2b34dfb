"""Verification suites: each returns rows with lhs, rhs and a pass/fail verdict."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import census as cz
from . import closedform as cf
from . import core
from . import iso
from . import spectral as sp

SNDR13_PER_VERTEX = (30618, 30604, 30610, 30598, 30618, 30608, 30604, 30594, 30594, 30612, 30612, 30598, 30610)
SNDR13_CHARPOLY = (4434, 9749, 18310, 20147, 19749, 13408, 8358, 3597, 1482, 351, 91, 0, 0, -1)
SNDR13_DISCRIMINANT = 157525764385770965120257003012282911852530325


@dataclass(frozen=True)
class Check:
    object_id: str
    n: int | None
    m: int | None
    value_class: str
    lhs: object
    rhs: object
    passed: bool | None = None

    @property
    def verdict(self) -> str:
        ok = self.lhs == self.rhs if self.passed is None else self.passed
        return "pass" if ok else "fail"

    def row(self) -> dict:
        return {
            "object_id": self.object_id,
            "n": self.n,
            "m": self.m,
            "value_class": self.value_class,
            "exact_value": self.lhs,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": self.verdict,
        }


def _odd(lo: int, hi: int) -> range:
    return range(lo | 1, hi + 1, 2)


def c8_total(t: core.Tournament) -> int:
    """c_8 by DFS for small orders and by the path-count route above 13."""
    if t.n <= 13:
        return cz.count_cycles(t, 8).total
    return cz.cycle_total_by_paths(t, 8)[0]


# ---------------------------------------------------------------------------


def suite_formulas(n_max: int = 15) -> list[Check]:
    out: list[Check] = []
    for n in _odd(9, n_max):
        out.append(Check(f"c8_rlt RLT_{n}", n, 8, "formula_vs_census", c8_total(core.rlt(n)), cf.eval_formula("c8_rlt", n)))
    for n in _odd(7, min(n_max, 13)):
        t = core.rlt(n)
        out.append(Check(f"c7_rlt RLT_{n}", n, 7, "formula_vs_census", cz.count_cycles(t, 7).total, cf.eval_formula("c7_rlt", n)))
        out.append(Check(f"c4_rlt RLT_{n}", n, 4, "formula_vs_census", cz.count_cycles(t, 4).total, cf.eval_formula("c4_rlt", n)))
        out.append(Check(f"c3_regular_max RLT_{n}", n, 3, "formula_vs_census", cz.count_cycles(t, 3).total,
                         cf.eval_formula("c3_regular_max", n)))
    for p in (7, 11, 19, 23):
        t = core.qr(p)
        if p >= 11:
            if p > 13:
                total, per_arc = cz.cycle_total_by_paths(t, 8)
            else:
                c = cz.count_cycles(t, 8)
                total, per_arc = c.total, c.per_arc
            out.append(Check(f"c8_dr QR_{p}", p, 8, "formula_vs_census", total, cf.eval_formula("c8_dr", p)))
            tt = (p - 3) // 4
            out.append(Check(f"per_arc_dr8 QR_{p}", p, 8, "formula_vs_census", sorted(set(per_arc.values())),
                             [cf.eval_formula("per_arc_dr8", tt)]))
        out.append(Check(f"c4_dr QR_{p}", p, 4, "formula_vs_census", cz.count_cycles(t, 4).total if p <= 19
                         else cz.cycle_total_by_paths(t, 4)[0], cf.eval_formula("c4_dr", p)))
    for p in (7, 11, 19):
        t = core.qr(p)
        tt = (p - 3) // 4
        # walks closing the arc i -> j into an 8-cycle run from j back to i
        vals = {cz.count_nonpath_walks(t, j, i, 7) for i, j in t.arcs()}
        out.append(Check(f"corr7_dr QR_{p}", p, 7, "formula_vs_census", sorted(vals), [cf.eval_formula("corr7_dr", tt)]))
        table = cz.walk_table(t, 7)
        for k in range(2, 8):
            i, j = next(iter(t.arcs()))
            for orient, (a, b) in (("forward", (i, j)), ("back", (j, i)), ("diagonal", (0, 0))):
                out.append(Check(f"dr_walk_entry QR_{p} k={k} {orient}", p, k, "formula_vs_walks",
                                 int(table.entry(k, a, b)), cf.eval_formula("dr_walk_entry", tt, k, orient)))
    for n in _odd(7, n_max):
        t = core.rlt(n)
        d = (n - 1) // 2
        fig = cz.count_figure_eight(t, 0, 8)
        out.append(Check(f"c8fig_rlt0 RLT_{n}", n, 8, "formula_vs_census", fig.total, cf.eval_formula("c8fig_rlt0", n)))
        out.append(Check(f"c35_rlt0 RLT_{n}", n, 8, "formula_vs_census", fig.split(3, 5), cf.eval_formula("c35_rlt0", d)))
        out.append(Check(f"c44_rlt0 RLT_{n}", n, 8, "formula_vs_census", fig.split(4, 4), cf.eval_formula("c44_rlt0", d)))
        for k, fid in ((3, "c3_rlt0"), (4, "c4_rlt0"), (5, "c5_rlt0")):
            out.append(Check(f"{fid} RLT_{n}", n, k, "formula_vs_census", cz.count_vertex_cycles(t, 0, k),
                             cf.eval_formula(fid, d)))
    system = coefficient_system_8()
    out.append(Check("coefficient_system m=8 vs c8_rlt", None, 8, "polynomial_identity",
                     system.polynomial.coeffs, cf.formula_polynomial("c8_rlt").coeffs))
    for m in (8,):
        out.append(Check("tangent_beta(8) series", None, m, "exact_rational", cf.tangent_beta(m), cf.tangent_beta_series(m)))
    return out


def coefficient_system_8() -> cf.CoefficientSystem:
    return cf.rlt_coefficient_system(8, cf.formula_polynomial("c7_rlt"), cf.formula_polynomial("c8fig_rlt0"))


def identity_tournaments() -> list[core.Tournament]:
    ts = [core.rlt(n) for n in (5, 7, 9, 11)] + [core.qr(p) for p in (7, 11)]
    ts += [core.sndr13(), core.umin9(), core.umin11(), core.rndr9()]
    return ts


def suite_identities() -> list[Check]:
    out = []
    nonreg = [core.transitive(6), core.f_map(core.transitive(3)), core.dominate_join(core.three_cycle(), core.transitive(2))]
    for t in identity_tournaments() + nonreg:
        names = ["kendall_c3"] + (["regular_c4", "c5_plus_2c4"] if t.semidegree is not None else [])
        for name in names:
            r = cz.verify_identity(name, t)
            out.append(Check(f"{name} {t.name or 'T'}", t.n, None, "identity", r.lhs, r.rhs))
    return out


def suite_recurrence(m: int | None = None, n: int | None = None) -> list[Check]:
    pairs = [(m, n)] if m is not None and n is not None else [
        (mm, nn) for mm in (range(4, 9) if m is None else [m]) for nn in _odd(mm, 13) if n is None or nn == n
    ]
    out = []
    for mm, nn in pairs:
        r = cz.rlt_recurrence(mm, nn)
        out.append(Check(r.name, nn, mm, "recurrence", r.lhs, r.rhs))
    return out


def suite_conjecture_a(budget: int = 200_000) -> list[Check]:
    out = []
    targets = [(core.qr(7), range(3, 8)), (core.qr(11), range(3, 9))]
    dr15 = iso.search_doubly_regular(15, budget)
    if dr15.found:
        targets.append((dr15.tournament, range(3, 7)))
    else:
        out.append(Check("search_doubly_regular(15)", 15, None, "search", "not found within budget", "found", False))
    for t, ms in targets:
        for m in ms:
            u = cz.arc_uniformity(t, m)
            out.append(Check(f"arc_uniformity {t.name or 'DR'} m={m}", t.n, m, "per_arc_uniform",
                             u.common_value, u.common_value, u.uniform and u.consistent))
    q19 = core.qr(19)
    total, per_arc = cz.cycle_total_by_paths(q19, 8)
    vals = set(per_arc.values())
    out.append(Check("arc_uniformity QR_19 m=8", 19, 8, "per_arc_uniform", sorted(vals), [cf.eval_formula("per_arc_dr8", 4)]))
    return out


def suite_spectral() -> list[Check]:
    out = []
    for p in (7, 11, 19, 23):
        t = core.qr(p)
        for m in (4, 6):
            s = sp.sigma_moment(t, m)
            b = sp.sigma_lower_bound(p, m)
            out.append(Check(f"sigma_{m} QR_{p} = bound", p, m, "float_rel_1e-6", s.value, float(b), s.within(float(b))))
    for t in (core.rlt(11), core.umin11(), core.rlt(9), core.umin9(), core.rndr9(), core.sndr13(), core.umin13()):
        for m in (4, 6):
            s = sp.sigma_moment(t, m)
            b = float(sp.sigma_lower_bound(t.n, m))
            out.append(Check(f"sigma_{m} {t.name} > bound", t.n, m, "float_strict_gt", s.value, b,
                             s.value - s.error_bound > b * (1 + 1e-6)))
        s = sp.sigma_moment(t, 3, allow_odd=True)
        out.append(Check(f"sigma_3 {t.name} ~ 0", t.n, 3, "float_abs", s.value, 0.0, abs(s.value) <= 1e-6 + s.error_bound))
    for t in identity_tournaments():
        p = sp.char_poly(t)
        out.append(Check(f"newton identities {t.name}", t.n, None, "exact_integer", sp.check_newton_identities(t, p), True))
        out.append(Check(f"tr3 = 3 c3 {t.name}", t.n, 3, "exact_integer", sp.trace_power(t, 3), 3 * cz.count_cycles(t, 3).total))
        if t.semidegree is not None:
            mo = sp.mean_outset_c3(t)
            out.append(Check(f"mean_outset_c3 {t.name}", t.n, 3, "exact_rational", mo.trace_formula, mo.direct))
    return out


def suite_appendix() -> list[Check]:
    out = []
    s13 = core.sndr13()
    c = cz.count_cycles(s13, 8)
    for v in range(13):
        out.append(Check(f"SNDR13 v={v + 1}", 13, 8, "per_vertex", c.per_vertex[v], SNDR13_PER_VERTEX[v]))
    out.append(Check("SNDR13 per-vertex sum", 13, 8, "exact_integer", sum(c.per_vertex), 397880))
    out.append(Check("SNDR13 8 * c8", 13, 8, "exact_integer", 8 * c.total, 397880))
    out.append(Check("SNDR13 c8", 13, 8, "exact_integer", c.total, 49735))
    p = sp.char_poly(s13).scaled(-1)
    out.append(Check("SNDR13 charpoly", 13, None, "exact_polynomial", p.coeffs, SNDR13_CHARPOLY))
    out.append(Check("SNDR13 discriminant", 13, None, "exact_integer", sp.discriminant(p), SNDR13_DISCRIMINANT))
    out.append(Check("SNDR13 aut order", 13, None, "exact_integer", iso.canonicalize(s13).aut_order, 1))
    named = [
        ("c8 Delta o Delta", core.wreath_delta(), 405),
        ("c8 R(2,3,4,8)", core.rndr9(), 477),
        ("c8 RLT_9", core.rlt(9), 441),
        ("c8 RLT_11", core.rlt(11), 6644),
        ("c8 RLT_13", core.rlt(13), 45903),
        ("c8 Umin_11", core.umin11(), 6605),
        ("c8 Umin_13", core.umin13(), 45475),
        ("c8 QR_11", core.qr(11), 7425),
    ]
    for label, t, want in named:
        out.append(Check(label, t.n, 8, "exact_integer", c8_total(t), want))
    for label, t, tr4, mean in (("Umin_11", core.umin11(), 784, Fraction(24, 11)),
                                ("Umin_13", core.umin13(), 1628, Fraction(48, 13)),
                                ("QR_11", core.qr(11), None, Fraction(5))):
        if tr4 is not None:
            out.append(Check(f"tr4 {label}", t.n, 4, "exact_integer", sp.trace_power(t, 4), tr4))
        mo = sp.mean_outset_c3(t)
        out.append(Check(f"mean out-set c3 {label}", t.n, 3, "exact_rational", mo.value, mean, mo.agree and mo.value == mean))
    for n in range(1, 11):
        out.append(Check(f"F_{n}(TT_{n}) ~ RLT_{2 * n + 1}", 2 * n + 1, None, "isomorphism",
                         iso.are_isomorphic(core.f_map(core.transitive(n)), core.rlt(2 * n + 1), unsafe_scale=True), True))
    out.append(Check("aut(Delta o Delta)", 9, None, "exact_integer", iso.canonicalize(core.wreath_delta()).aut_order, 81))
    f4 = core.f_map(core.dominate_join(core.three_cycle(), core.transitive(1)))
    out.append(Check("Delta o Delta !~ F_4(Delta => .)", 9, None, "isomorphism", iso.are_isomorphic(core.wreath_delta(), f4), False))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "formulas": suite_formulas,
    "identities": suite_identities,
    "recurrence": suite_recurrence,
    "conjectureA": suite_conjecture_a,
    "spectral": suite_spectral,
    "appendix": suite_appendix,
}


def run_suite(name: str, **kwargs) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    return SUITES[name](**kwargs)
