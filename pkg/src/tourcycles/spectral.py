"""Exact characteristic polynomials, traces and discriminants, and numeric
moments of the imaginary parts of the non-Perron eigenvalues.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import Tournament, count_3cycles_in


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, ``coeffs[k]`` multiplies ``x^k``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(int(c) for c in cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1]

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scaled(self, s: int) -> "IntPolynomial":
        return IntPolynomial(tuple(s * c for c in self.coeffs))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}x^{k}" if k > 1 else f"{c}x")
        return "+".join(terms).replace("+-", "-") or "0"


# ---------------------------------------------------------------------------
# characteristic polynomial


def _int_matrix(t: Tournament) -> list[list[int]]:
    return t.matrix()


def _matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def trace_powers(t: Tournament, k_max: int) -> list[int]:
    """``[tr(A^1), ..., tr(A^k_max)]`` exactly."""
    a = _int_matrix(t)
    p = a
    out = []
    for k in range(1, k_max + 1):
        if k > 1:
            p = _matmul(p, a)
        out.append(sum(p[i][i] for i in range(t.n)))
    return out


def trace_power(t: Tournament, k: int) -> int:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return trace_powers(t, k)[-1]


def char_poly_berkowitz(t: Tournament) -> IntPolynomial:
    """det(xI - A) by Berkowitz's division-free algorithm."""
    a = _int_matrix(t)
    n = t.n
    # vect holds coefficients from highest degree down
    vect = [1, -a[0][0]]
    for r in range(1, n):
        # leading principal block of size r, row/column r
        R = [a[r][j] for j in range(r)]
        C = [a[i][r] for i in range(r)]
        M = [row[:r] for row in a[:r]]
        col = [1, -a[r][r]]
        v = C[:]
        for _ in range(r):
            col.append(-sum(R[i] * v[i] for i in range(r)))
            v = [sum(M[i][j] * v[j] for j in range(r)) for i in range(r)]
        # Toeplitz product: new = T * vect, T lower-triangular of size (r+2)x(r+1)
        new = []
        for i in range(r + 2):
            s = 0
            for j in range(r + 1):
                if 0 <= i - j < len(col):
                    s += col[i - j] * vect[j]
            new.append(s)
        vect = new
    return IntPolynomial(tuple(reversed(vect)))


def char_poly_newton(t: Tournament) -> IntPolynomial:
    """det(xI - A) from exact traces via Newton's identities."""
    n = t.n
    p = trace_powers(t, n)
    e = [1]
    for k in range(1, n + 1):
        s = sum((-1) ** (i - 1) * e[k - i] * p[i - 1] for i in range(1, k + 1))
        if s % k:
            raise ArithmeticError("Newton identity produced a non-integer coefficient")
        e.append(s // k)
    # det(xI - A) = sum_k (-1)^k e_k x^(n-k)
    coeffs = [0] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = (-1) ** k * e[k]
    return IntPolynomial(tuple(coeffs))


def char_poly(t: Tournament) -> IntPolynomial:
    """Monic characteristic polynomial det(xI - A), cross-checked by two methods.

    ``char_poly(t).scaled((-1) ** t.n)`` gives det(A - xI), ``-x^13 + ...`` form.
    """
    p = char_poly_berkowitz(t)
    q = char_poly_newton(t)
    if p != q:
        raise ArithmeticError("Berkowitz and Newton characteristic polynomials disagree")
    return p


def check_newton_identities(t: Tournament, p: IntPolynomial | None = None) -> bool:
    p = p or char_poly(t)
    n = t.n
    tr = trace_powers(t, n)
    e = [(-1) ** k * p.coeff(n - k) for k in range(n + 1)]
    for k in range(1, n + 1):
        s = sum((-1) ** (i - 1) * e[k - i] * tr[i - 1] for i in range(1, k + 1))
        if s != k * e[k]:
            return False
    return True


# ---------------------------------------------------------------------------
# resultant and discriminant


def _content(p: list[int]) -> int:
    g = 0
    for c in p:
        g = math.gcd(g, c)
    return g


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of ``a`` by ``b`` (coefficient lists, low degree first)."""
    r = a[:]
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and any(r):
        dr = len(r) - 1
        lr = r[-1]
        r = [lb * c for c in r]
        shift = dr - db
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    if e > 0:
        r = [c * lb**e for c in r]
    return r


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """Res(p, q) over Z by the subresultant algorithm."""
    A = list(p.coeffs)
    B = list(q.coeffs)
    if not A or not B:
        return 0
    if len(A) == 1 and len(B) == 1:
        return 1
    a = _content(A) * (1 if A[-1] > 0 else -1)
    b = _content(B) * (1 if B[-1] > 0 else -1)
    A = [c // a for c in A]
    B = [c // b for c in B]
    degA, degB = len(A) - 1, len(B) - 1
    t = a**degB * b**degA
    g = h = 1
    s = 1
    if degA < degB:
        A, B = B, A
        degA, degB = degB, degA
        if degA % 2 and degB % 2:
            s = -s
    while degB > 0:
        d = degA - degB
        if degA % 2 and degB % 2:
            s = -s
        R = _prem(A, B)
        if not R:
            return 0
        A = B
        div = g * h**d
        B = [c // div for c in R]
        g = A[-1]
        h = (g**d) // (h ** (d - 1)) if d >= 1 else h
        degA, degB = len(A) - 1, len(B) - 1
    # degB == 0
    h = (B[-1] ** degA) // (h ** (degA - 1)) if degA >= 1 else h
    return s * t * h


def discriminant(p: IntPolynomial) -> int:
    """(-1)^(d(d-1)/2) Res(p, p') / lead(p)."""
    if not p.coeffs:
        raise ValueError("discriminant of the zero polynomial is undefined")
    d = p.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return 1
    r = resultant(p, p.derivative())
    q, rem = divmod(r, p.lead)
    if rem:
        raise ArithmeticError("resultant not divisible by leading coefficient")
    return (-1) ** (d * (d - 1) // 2) * q


# ---------------------------------------------------------------------------
# rational polynomial helpers for square-free decomposition


def _fpoly(p: Sequence) -> list[Fraction]:
    cs = [Fraction(c) for c in p]
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _fdivmod(a: list[Fraction], b: list[Fraction]):
    a = a[:]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return _fpoly(q), a


def _fgcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        _, r = _fdivmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _fderiv(a: list[Fraction]) -> list[Fraction]:
    return _fpoly([k * c for k, c in enumerate(a)][1:])


def squarefree_decomposition(p: Sequence[int]) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: ``[(factor, multiplicity), ...]`` with monic square-free factors."""
    f = _fpoly(p)
    f = [c / f[-1] for c in f]
    out = []
    a = _fgcd(f, _fderiv(f))
    b, _ = _fdivmod(f, a)
    c, _ = _fdivmod(_fderiv(f), a)
    d = _fpoly([x - y for x, y in _zip_pad(c, _fderiv(b))])
    k = 1
    while len(b) > 1:
        a = _fgcd(b, d)
        if len(a) > 1:
            out.append((a, k))
        b, _ = _fdivmod(b, a)
        c, _ = _fdivmod(d, a)
        d = _fpoly([x - y for x, y in _zip_pad(c, _fderiv(b))])
        k += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


# ---------------------------------------------------------------------------
# numeric roots


def aberth_roots(coeffs: Sequence, tol: float = 1e-12, max_iter: int = 500) -> tuple[list[complex], list[float]]:
    """Simultaneous Aberth-Ehrlich iteration on a polynomial with simple roots.

    Returns roots and per-root inclusion radii ``d |p(z)| / |p'(z)|``.
    """
    c = [complex(float(x)) for x in coeffs]
    d = len(c) - 1
    if d < 1:
        return [], []
    lead = c[-1]
    c = [x / lead for x in c]
    if d == 1:
        z = -c[0]
        return [z], [0.0]
    poly = np.array(list(reversed(c)))
    dpoly = np.polyder(poly)
    # initial guesses on a circle bounded by the Cauchy radius
    radius = 1 + max(abs(x) for x in c[:-1])
    centre = -c[-2] / d
    zs = np.array([centre + radius * 0.5 * cmath.exp(2j * math.pi * (k + 0.25) / d + 0.4j) for k in range(d)])
    for _ in range(max_iter):
        pv = np.polyval(poly, zs)
        dv = np.polyval(dpoly, zs)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pv / dv
            diffs = zs[:, None] - zs[None, :]
            np.fill_diagonal(diffs, np.inf)
            s = np.sum(1.0 / diffs, axis=1)
            w = ratio / (1 - ratio * s)
        w = np.where(np.isfinite(w), w, 0)
        zs = zs - w
        scale = np.maximum(1.0, np.abs(zs))
        if np.all(np.abs(w) <= tol * scale):
            break
    else:
        raise ConvergenceError("Aberth iteration did not converge")
    # Newton polish
    for _ in range(3):
        pv = np.polyval(poly, zs)
        dv = np.polyval(dpoly, zs)
        step = np.where(dv != 0, pv / dv, 0)
        zs = zs - step
    pv = np.abs(np.polyval(poly, zs))
    dv = np.abs(np.polyval(dpoly, zs))
    # rounding error of Horner evaluation
    absval = np.polyval(np.abs(poly), np.abs(zs))
    pv = pv + 2 * d * np.finfo(float).eps * absval
    radii = [float(d * p / q) if q else math.inf for p, q in zip(pv, dv)]
    return [complex(z) for z in zs], radii


@dataclass(frozen=True)
class SigmaMoment:
    m: int
    value: float
    error_bound: float
    roots: tuple[complex, ...]

    def within(self, target: float, rel: float = 1e-6) -> bool:
        return abs(self.value - target) <= rel * max(abs(target), 1.0) + self.error_bound


def non_perron_roots(t: Tournament) -> tuple[list[complex], list[float]]:
    """Eigenvalues other than (one copy of) the Perron root (n-1)/2, with radii."""
    delta = t.semidegree
    if delta is None:
        raise ValueError("sigma moments are defined for regular tournaments only")
    p = char_poly(t)
    # exact deflation by (x - delta)
    q = [Fraction(c) for c in p.coeffs]
    quot, rem = _fdivmod(q, [Fraction(-delta), Fraction(1)])
    if rem:
        raise ArithmeticError("semidegree is not a root of the characteristic polynomial")
    if len(quot) <= 1:
        return [], []
    roots: list[complex] = []
    radii: list[float] = []
    for factor, mult in squarefree_decomposition(quot):
        zs, rs = aberth_roots(factor)
        roots += zs * mult
        radii += rs * mult
    return roots, radii


def sigma_moment(t: Tournament, m: int, *, allow_odd: bool = False, rel_tol: float = 1e-6) -> SigmaMoment:
    """Sum of the m-th powers of the imaginary parts of the non-Perron eigenvalues."""
    if m < 1 or (m % 2 and not allow_odd):
        raise ValueError(f"m must be a positive even integer, got {m}")
    roots, radii = non_perron_roots(t)
    value = 0.0
    magnitude = 0.0
    err = 0.0
    for z, r in zip(roots, radii):
        y = z.imag
        value += y**m
        magnitude += abs(y) ** m
        err += m * (abs(y) + r) ** (m - 1) * r
    # relative to the size of the summands: odd moments cancel to zero
    scale = max(magnitude, 1.0)
    if err > rel_tol * scale and err > 1e-9:
        raise ConvergenceError(f"sigma_{m} error bound {err:g} exceeds tolerance")
    return SigmaMoment(m, value, err, tuple(roots))


def sigma_lower_bound(n: int, m: int) -> Fraction:
    """(n-1) n^(m/2) / 2^m."""
    return Fraction((n - 1) * n ** (m // 2), 2**m)


# ---------------------------------------------------------------------------
# out-set 3-cycles


@dataclass(frozen=True)
class MeanOutsetC3:
    trace_formula: Fraction
    direct: Fraction

    @property
    def value(self) -> Fraction:
        return self.direct

    @property
    def agree(self) -> bool:
        return self.trace_formula == self.direct


def mean_outset_c3(t: Tournament) -> MeanOutsetC3:
    if t.semidegree is None:
        raise ValueError("mean_outset_c3 requires a regular tournament")
    n = t.n
    tr4 = trace_power(t, 4)
    formula = Fraction((n + 1) * (n - 1) * (n - 3), 48) - Fraction(tr4, 4 * n)
    direct = Fraction(sum(count_3cycles_in(t, t.rows[i]) for i in range(n)), n)
    return MeanOutsetC3(formula, direct)


@dataclass(frozen=True)
class SpectralSummary:
    charpoly: IntPolynomial
    traces: tuple[int, ...]
    sigma: dict[int, SigmaMoment]
    perron: Fraction | None


def spectral_summary(t: Tournament, sigma_orders: Sequence[int] = (2, 4, 6, 8)) -> SpectralSummary:
    p = char_poly(t)
    traces = tuple(trace_powers(t, 8))
    sig = {}
    perron = None
    if t.semidegree is not None:
        perron = Fraction(t.semidegree)
        sig = {m: sigma_moment(t, m) for m in sigma_orders}
    return SpectralSummary(p, traces, sig, perron)
