"""Exact rational arithmetic for the closed-form cycle counts.

Covers Bernoulli numbers and tangent coefficients, a catalogue of the factored
closed forms, the triangular coefficient system that lifts ``c_(m-1)(RLT_n)``
and the figure-eight count to ``c_m(RLT_n)``, and the RLT/DR crossover for
8-cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

Number = int | Fraction


class RationalPolynomial:
    """Univariate polynomial with ``Fraction`` coefficients, index = degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def linear(cls, a: Number, b: Number) -> "RationalPolynomial":
        """``a*x + b``."""
        return cls((b, a))

    @classmethod
    def constant(cls, c: Number) -> "RationalPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        k = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial(self.coeff(i) + other.coeff(i) for i in range(k))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = RationalPolynomial.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial.constant(other)
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def compose_linear(self, a: Number, b: Number) -> "RationalPolynomial":
        """``p(a*x + b)``."""
        lin = RationalPolynomial.linear(a, b)
        acc = RationalPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                terms.append(f"({c})" + ("" if k == 0 else f"*x^{k}"))
        return " + ".join(terms)


def _as_poly(x) -> RationalPolynomial:
    if isinstance(x, RationalPolynomial):
        return x
    return RationalPolynomial.constant(x)


X = RationalPolynomial((0, 1))


# ---------------------------------------------------------------------------
# Bernoulli and tangent numbers


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """B_m from  sum_{k=0}^{m} C(m+1, k) B_k = 0  (B_1 = -1/2)."""
    if m < 0:
        raise ValueError(f"bernoulli needs m >= 0, got {m}")
    if m == 0:
        return Fraction(1)
    s = sum(comb(m + 1, k) * bernoulli(k) for k in range(m))
    return -s / (m + 1)


def tangent_beta(m: int) -> Fraction:
    """Coefficient of z^(m-1) in tan z, via  2^m (2^m - 1) |B_m| / m!."""
    if m < 2 or m % 2:
        raise ValueError(f"tangent_beta needs even m >= 2, got {m}")
    return Fraction(2**m * (2**m - 1)) * abs(bernoulli(m)) / factorial(m)


def tan_series(order: int) -> list[Fraction]:
    """Maclaurin coefficients of tan z up to z^order, by dividing sin by cos."""
    sin = [Fraction(0)] * (order + 1)
    cos = [Fraction(0)] * (order + 1)
    for k in range(order + 1):
        if k % 2:
            sin[k] = Fraction((-1) ** ((k - 1) // 2), factorial(k))
        else:
            cos[k] = Fraction((-1) ** (k // 2), factorial(k))
    q = [Fraction(0)] * (order + 1)
    for k in range(order + 1):
        q[k] = sin[k] - sum(q[j] * cos[k - j] for j in range(k))
    return q


def tangent_beta_series(m: int) -> Fraction:
    if m < 2 or m % 2:
        raise ValueError(f"tangent_beta needs even m >= 2, got {m}")
    return tan_series(m - 1)[m - 1]


# ---------------------------------------------------------------------------
# closed-form catalogue


@dataclass(frozen=True)
class Factored:
    """``scale * prod(factors)`` with each factor a polynomial in one variable."""

    scale: Fraction
    factors: tuple[tuple[int, ...], ...]
    variable: str
    anchor: str

    def expand(self) -> RationalPolynomial:
        p = RationalPolynomial.constant(self.scale)
        for f in self.factors:
            p = p * RationalPolynomial(f)
        return p

    def __call__(self, x: Number) -> Fraction:
        v = self.scale
        for f in self.factors:
            v *= RationalPolynomial(f)(x)
        return v


def _lin(c: int) -> tuple[int, int]:
    """``x + c``."""
    return (c, 1)


def _F(num, den, *factors, variable="n", anchor=""):
    return Factored(Fraction(num, den), tuple(factors), variable, anchor)


CATALOG: dict[str, Factored] = {
    # maximum 3-cycle count of a regular tournament
    "c3_regular_max": _F(1, 24, (0, 1), _lin(1), _lin(-1), anchor="n(n+1)(n-1)/24"),
    "c4_rlt": _F(1, 48, (0, 1), _lin(1), _lin(-1), _lin(-3), anchor="n(n+1)(n-1)(n-3)/48"),
    "c4_dr": _F(1, 64, (0, 1), _lin(1), _lin(-1), _lin(-3), anchor="n(n+1)(n-1)(n-3)/64"),
    "c5_identity_total": _F(1, 160, (0, 1), _lin(-1), _lin(1), _lin(-3), _lin(3),
                            anchor="n(n-1)(n+1)(n-3)(n+3)/160"),
    "c7_rlt": _F(1, 128 * 15 * 7, _lin(1), (0, 1), _lin(-1), _lin(-3), _lin(-5), (127, -111, 15),
                 anchor="(n+1)n(n-1)(n-3)(n-5)(15n^2-111n+127)/(128*15*7)"),
    "c8_dr": _F(1, 256 * 8, _lin(1), (0, 1), _lin(-1), _lin(-3), _lin(-3), _lin(-7), (1, -7, 1),
                anchor="(n+1)n(n-1)(n-3)^2(n-7)(n^2-7n+1)/(256*8)"),
    "c8_rlt": _F(1, 161280, _lin(1), (0, 1), _lin(-1), _lin(-3), _lin(-5), _lin(-7), (510, -575, 83),
                 anchor="(n+1)n(n-1)(n-3)(n-5)(n-7)(83n^2-575n+510)/161280"),
    "c8fig_rlt0": _F(1, 5760, _lin(1), _lin(-1), _lin(-3), _lin(-5), (837, -646, 85),
                     anchor="(n+1)(n-1)(n-3)(n-5)(85n^2-646n+837)/5760"),
    "c8_diff": _F(1, 8 * 80640, _lin(1), (0, 1), _lin(-1), _lin(-3), _lin(-7), (-9255, 6610, -810, 17),
                  anchor="(n+1)n(n-1)(n-3)(n-7)(17n^3-810n^2+6610n-9255)/(8*80640)"),
    "per_arc_dr8": _F(2, 1, _lin(1), _lin(-1), (0, 1), (0, 1), (-11, -4, 16), variable="t",
                      anchor="2(t+1)(t-1)t^2(16t^2-4t-11)"),
    "corr7_dr": _F(2, 1, (0, 1), _lin(1), (1, -2, 30, 48), variable="t",
                   anchor="2t(t+1)(48t^3+30t^2-2t+1)"),
    "c3_rlt0": _F(1, 2, (0, 1), _lin(1), variable="delta", anchor="delta(delta+1)/2"),
    "c4_rlt0": _F(2, 3, (0, 1), _lin(1), _lin(-1), variable="delta", anchor="2delta(delta+1)(delta-1)/3"),
    "c5_rlt0": _F(1, 6, (0, 1), _lin(-1), _lin(1), (-4, 3), variable="delta",
                  anchor="delta(delta-1)(delta+1)(3delta-4)/6"),
    "c35_rlt0": _F(1, 120, _lin(-2), _lin(-1), (0, 1), _lin(1), (21, -82, 30), variable="delta",
                   anchor="(delta-2)(delta-1)delta(delta+1)(30delta^2-82delta+21)/120"),
    "c44_rlt0": _F(1, 36, _lin(-2), _lin(-1), (0, 1), _lin(1), (-5, 2), (-3, 8), variable="delta",
                   anchor="(delta-2)(delta-1)delta(delta+1)(2delta-5)(8delta-3)/36"),
    "c8fig_rlt0_delta": _F(1, 90, _lin(-2), _lin(-1), (0, 1), _lin(1), (69, -238, 85), variable="delta",
                           anchor="(delta-2)(delta-1)delta(delta+1)(85delta^2-238delta+69)/90"),
}

# Walk-count entries a^(k)_ij of A^k for DR_{4t+3}; "back" means j -> i is an arc,
# "forward" means i -> j, "diagonal" means i = j.
DR_WALK_ENTRIES: dict[tuple[int, str], Factored] = {
    (2, "forward"): _F(1, 1, (0, 1), variable="t", anchor="t"),
    (2, "back"): _F(1, 1, _lin(1), variable="t", anchor="t+1"),
    (3, "forward"): _F(1, 1, (0, 1), (1, 2), variable="t", anchor="t(2t+1)"),
    (3, "back"): _F(2, 1, (0, 1), _lin(1), variable="t", anchor="2t(t+1)"),
    (3, "diagonal"): _F(1, 1, (1, 2), _lin(1), variable="t", anchor="(2t+1)(t+1)"),
    (4, "back"): _F(1, 1, (0, 1), _lin(1), (1, 4), variable="t", anchor="t(t+1)(4t+1)"),
    (4, "diagonal"): _F(2, 1, (1, 2), (0, 1), _lin(1), variable="t", anchor="(2t+1)2t(t+1)"),
    (5, "back"): _F(1, 1, _lin(1), (1, 2), (1, 1, 4), variable="t", anchor="(t+1)(2t+1)(4t^2+t+1)"),
    (5, "diagonal"): _F(1, 1, (1, 2), (1, 4), _lin(1), (0, 1), variable="t",
                        anchor="(2t+1)(4t+1)(t+1)t"),
    (6, "back"): _F(1, 1, (0, 1), _lin(1), (4, 13, 20, 16), variable="t",
                    anchor="t(t+1)(16t^3+20t^2+13t+4)"),
    (7, "back"): _F(2, 1, (0, 1), _lin(1), (1, 9, 23, 28, 16), variable="t",
                    anchor="2t(t+1)(16t^4+28t^3+23t^2+9t+1)"),
}


def dr_walk_polynomial(k: int, orientation: str) -> RationalPolynomial:
    """a^(k)_ij of DR_{4t+3} as a polynomial in t.

    Catalog closed forms are used where available; other entries follow from
    A^3 = 2t A^2 + t A + (2t+1)(t+1) I with A^0 = I, A^1 = A.
    """
    if orientation not in ("forward", "back", "diagonal"):
        raise ValueError(f"orientation must be forward/back/diagonal, got {orientation!r}")
    if (k, orientation) in DR_WALK_ENTRIES:
        return DR_WALK_ENTRIES[(k, orientation)].expand()
    return _dr_walk_recurrence(k, orientation)


def _dr_walk_recurrence(k: int, orientation: str) -> RationalPolynomial:
    t = X
    one = RationalPolynomial.constant(1)
    if orientation == "diagonal":
        seq = [one, RationalPolynomial(), RationalPolynomial()]
    elif orientation == "forward":
        seq = [RationalPolynomial(), one, t]
    else:
        seq = [RationalPolynomial(), RationalPolynomial(), t + 1]
    c = (2 * t + 1) * (t + 1)
    while len(seq) <= k:
        p = len(seq)
        seq.append(2 * t * seq[p - 1] + t * seq[p - 2] + c * seq[p - 3])
    return seq[k]


FORMULA_IDS = tuple(CATALOG) + ("dr_walk_entry", "mean_outset_c3")


def eval_formula(fid: str, *args: int) -> Fraction:
    """Exact value of a named closed form.

    ``dr_walk_entry`` takes ``(t, k, orientation)``; ``mean_outset_c3`` takes
    ``(n, tr4)``; every other id takes one integer argument.
    """
    if fid == "dr_walk_entry":
        t, k, orientation = args
        return dr_walk_polynomial(k, orientation)(t)
    if fid == "mean_outset_c3":
        n, tr4 = args
        return Fraction((n + 1) * (n - 1) * (n - 3), 48) - Fraction(tr4, 4 * n)
    if fid not in CATALOG:
        raise KeyError(f"unknown formula id {fid!r}")
    if len(args) != 1:
        raise TypeError(f"formula {fid!r} takes exactly one argument")
    return CATALOG[fid](args[0])


def formula_polynomial(fid: str) -> RationalPolynomial:
    return CATALOG[fid].expand()


# ---------------------------------------------------------------------------
# coefficient system


@dataclass(frozen=True)
class CoefficientSystem:
    m: int
    f: tuple[Fraction, ...]          # right-hand sides f_0 .. f_(m-2)
    alpha: tuple[Fraction, ...]      # alpha_1 .. alpha_m
    polynomial: RationalPolynomial   # sum alpha_k n^k
    rows: tuple[tuple[Fraction, ...], ...]  # equation k: coefficients of alpha_1..alpha_(m-1)


def top_coefficient(m: int) -> Fraction:
    """(1 + (-1)^(m/2) beta(m)) / (m 2^m)."""
    return (1 + (-1) ** (m // 2) * tangent_beta(m)) / (m * 2**m)


def rlt_coefficient_system(m: int, alpha_prev: RationalPolynomial, beta_fig: RationalPolynomial) -> CoefficientSystem:
    """Lift the (m-1)-cycle polynomial and the figure-eight polynomial to c_m(RLT_n).

    ``alpha_prev`` are the coefficients of c_(m-1)(RLT_n) in ``n`` (degree
    m-1) and ``beta_fig`` those of c^(2)_m(RLT_n, 0) (degree m-2).  Equation
    ``k`` (0 <= k <= m-2) reads

        2(k+1-m) a_(k+1) + sum_{p=k+2}^{m-1} a_p 2^(p-k-1) (2 C(p,k) - m C(p-1,k)) = f_k

    with f_k = (m-1) alpha_prev_(k+1) + beta_fig_k
              + (m-k-2)/m 2^(-k-1) C(m,k) (1 + (-1)^(m/2) beta(m)).
    """
    if m < 4 or m % 2:
        raise ValueError(f"m must be even and >= 4, got {m}")
    if alpha_prev.degree > m - 1:
        raise ValueError(f"alpha_prev must have degree <= {m - 1}")
    if beta_fig.degree > m - 2:
        raise ValueError(f"beta_fig must have degree <= {m - 2}")
    tail = 1 + (-1) ** (m // 2) * tangent_beta(m)
    f = []
    for k in range(m - 1):
        fk = (m - 1) * alpha_prev.coeff(k + 1) + beta_fig.coeff(k)
        fk += Fraction(m - k - 2, m) * Fraction(comb(m, k), 2 ** (k + 1)) * tail
        f.append(fk)
    rows = []
    for k in range(m - 1):
        row = [Fraction(0)] * (m - 1)  # index p-1 for alpha_p
        row[k] = Fraction(2 * (k + 1 - m))
        for p in range(k + 2, m):
            row[p - 1] = Fraction(2 ** (p - k - 1) * (2 * comb(p, k) - m * comb(p - 1, k)))
        rows.append(tuple(row))
    alpha = [Fraction(0)] * (m + 1)
    alpha[m] = top_coefficient(m)
    for k in range(m - 2, -1, -1):
        pivot = rows[k][k]
        if pivot == 0:
            raise ArithmeticError(f"zero pivot in equation k={k}")
        s = f[k] - sum(rows[k][p - 1] * alpha[p] for p in range(k + 2, m))
        alpha[k + 1] = s / pivot
    poly = RationalPolynomial(alpha)
    return CoefficientSystem(m, tuple(f), tuple(alpha[1:]), poly, tuple(rows))


def interpolate(points: Sequence[tuple[Number, Number]]) -> RationalPolynomial:
    """Lagrange interpolation through ``points`` (exact)."""
    out = RationalPolynomial()
    for i, (xi, yi) in enumerate(points):
        term = RationalPolynomial.constant(yi)
        for j, (xj, _) in enumerate(points):
            if i != j:
                term = term * RationalPolynomial((Fraction(-xj, 1) / (xi - xj), Fraction(1, 1) / (xi - xj)))
        out = out + term
    return out


# ---------------------------------------------------------------------------
# crossover


@dataclass(frozen=True)
class CrossoverReport:
    threshold: int
    negative_range: tuple[int, int]
    difference_poly: RationalPolynomial
    rows: tuple[tuple[int, Fraction], ...]
    cubic_signs: dict[int, int]
    cubic_pattern_ok: bool
    matches_factored: bool


CUBIC = RationalPolynomial((-9255, 6610, -810, 17))
CUBIC_PATTERN = {1: -1, 2: 1, 8: 1, 9: -1, 37: -1, 38: 1}


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def crossover_analysis(n_min: int = 9, n_max: int = 201) -> CrossoverReport:
    """Sign table of c_8(RLT_n) - c_8(DR_n) over odd n in [n_min, n_max]."""
    diff = formula_polynomial("c8_rlt") - formula_polynomial("c8_dr")
    start = n_min if n_min % 2 else n_min + 1
    rows = tuple((n, diff(n)) for n in range(start, n_max + 1, 2))
    threshold = None
    for idx in range(len(rows)):
        if all(v > 0 for _, v in rows[idx:]):
            threshold = rows[idx][0]
            break
    neg = [n for n, v in rows if v < 0]
    # maximal run of negative values that ends right before the threshold
    hi = max((n for n in neg if threshold is None or n < threshold), default=None)
    lo = hi
    while lo is not None and (lo - 2) in neg:
        lo -= 2
    signs = {z: _sign(CUBIC(z)) for z in CUBIC_PATTERN}
    return CrossoverReport(
        threshold=threshold,
        negative_range=(lo, hi),
        difference_poly=diff,
        rows=rows,
        cubic_signs=signs,
        cubic_pattern_ok=signs == CUBIC_PATTERN,
        matches_factored=diff == formula_polynomial("c8_diff"),
    )
