"""Exact counting of cycles, paths, walks and figure-eight closed walks.

Two independent routes are provided for cycle counts:

* depth-first enumeration of simple paths (``count_cycles``,
  ``count_vertex_cycles``, ``count_figure_eight``);
* walk algebra: matrix powers (``walk_table``) and inclusion-exclusion of walk
  counts over induced subtournaments (``path_count_matrix``).
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .core import Tournament, TournamentError, count_3cycles_in, iter_bits

MAX_CYCLE_LENGTH = 10
MAX_WALK_LENGTH = 12


class GuardError(ValueError):
    """Raised when a request exceeds the desk-scale guard without override."""


def _check_length(t: Tournament, m: int, unsafe_scale: bool):
    if m < 3 or m > t.n:
        raise ValueError(f"cycle length must satisfy 3 <= m <= n={t.n}, got m={m}")
    if m > MAX_CYCLE_LENGTH and not unsafe_scale:
        raise GuardError(f"m={m} exceeds the guard {MAX_CYCLE_LENGTH}; pass unsafe_scale=True")


# ---------------------------------------------------------------------------
# cycle census by enumeration


@dataclass(frozen=True)
class CycleCensus:
    m: int
    total: int
    per_vertex: tuple[int, ...]
    per_arc: dict[tuple[int, int], int] = field(repr=False)

    def arc(self, i: int, j: int) -> int:
        return self.per_arc[(i, j)]


def _census_from_start(rows: tuple[int, ...], in_rows: tuple[int, ...], m: int, s: int):
    """Cycles whose minimum vertex is ``s``: (count, per-vertex list, per-arc dict)."""
    n = len(rows)
    allowed = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)
    close = in_rows[s] & allowed
    vcount = [0] * n
    acount: Counter = Counter()
    path = [s]
    total = 0

    def dfs(v: int, visited: int, depth: int):
        nonlocal total
        # depth = number of vertices on the path so far
        if depth == m - 1:
            ends = rows[v] & close & ~visited
            k = ends.bit_count()
            if not k:
                return
            total += k
            for a, b in zip(path, path[1:]):
                acount[(a, b)] += k
            for u in path:
                vcount[u] += k
            while ends:
                low = ends & -ends
                w = low.bit_length() - 1
                ends ^= low
                vcount[w] += 1
                acount[(v, w)] += 1
                acount[(w, s)] += 1
            return
        nxt = rows[v] & allowed & ~visited
        while nxt:
            low = nxt & -nxt
            w = low.bit_length() - 1
            nxt ^= low
            path.append(w)
            dfs(w, visited | low, depth + 1)
            path.pop()

    dfs(s, 1 << s, 1)
    return total, vcount, dict(acount)


def _census_chunk(args):
    rows, in_rows, m, starts = args
    return [_census_from_start(rows, in_rows, m, s) for s in starts]


def count_cycles(t: Tournament, m: int, *, unsafe_scale: bool = False, workers: int = 1) -> CycleCensus:
    """Exact m-cycle census with per-vertex and per-arc tallies.

    Each cycle is enumerated once, anchored at its minimum vertex.
    """
    _check_length(t, m, unsafe_scale)
    n = t.n
    starts = list(range(n - m + 1))
    if workers > 1 and len(starts) > 1:
        chunks = [starts[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = [r for res in ex.map(_census_chunk, [(t.rows, t.in_rows, m, c) for c in chunks]) for r in res]
    else:
        parts = [_census_from_start(t.rows, t.in_rows, m, s) for s in starts]
    total = 0
    per_vertex = [0] * n
    per_arc = {a: 0 for a in t.arcs()}
    for cnt, vc, ac in parts:
        total += cnt
        for v in range(n):
            per_vertex[v] += vc[v]
        for a, c in ac.items():
            per_arc[a] += c
    return CycleCensus(m, total, tuple(per_vertex), per_arc)


def _cycles_through(rows: tuple[int, ...], v: int, k: int, forbidden: int = 0):
    """Vertex masks of the k-cycles through ``v`` avoiding ``forbidden``, with multiplicity."""
    close = 0
    for u, r in enumerate(rows):
        if (r >> v) & 1:
            close |= 1 << u
    out: list[int] = []

    def dfs(u: int, visited: int, depth: int):
        if depth == k - 1:
            ends = rows[u] & close & ~visited & ~forbidden
            while ends:
                low = ends & -ends
                ends ^= low
                out.append(visited | low)
            return
        nxt = rows[u] & ~visited & ~forbidden
        while nxt:
            low = nxt & -nxt
            nxt ^= low
            dfs(low.bit_length() - 1, visited | low, depth + 1)

    dfs(v, 1 << v, 1)
    return out


def count_vertex_cycles(t: Tournament, v: int, m: int, *, unsafe_scale: bool = False) -> int:
    """Number of m-cycles through ``v`` (closed m-walks from ``v`` with no repeats)."""
    _check_length(t, m, unsafe_scale)
    return len(_cycles_through(t.rows, v, m))


# ---------------------------------------------------------------------------
# figure-eight closed walks


@dataclass(frozen=True)
class FigureEightCensus:
    v: int
    m: int
    split_counts: dict[tuple[int, int], int]
    total: int
    empty_by_contract: bool = False

    def split(self, k: int, h: int) -> int:
        return self.split_counts.get((k, h), 0)


def count_figure_eight(t: Tournament, v: int, m: int, *, unsafe_scale: bool = False) -> FigureEightCensus:
    """Ordered concatenations of a k-cycle and an h-cycle through ``v`` sharing only ``v``.

    ``k + h = m`` and ``k, h >= 3``.  For ``m < 6`` the result is empty by
    contract and flagged as such.
    """
    n = t.n
    if m < 6:
        return FigureEightCensus(v, m, {}, 0, True)
    if m > 2 * (n - 1):
        raise ValueError(f"figure-eight length must satisfy m <= 2(n-1)={2 * (n - 1)}, got {m}")
    if m > 2 * MAX_CYCLE_LENGTH and not unsafe_scale:
        raise GuardError(f"m={m} exceeds the figure-eight guard; pass unsafe_scale=True")
    vbit = 1 << v
    splits: dict[tuple[int, int], int] = {}
    first_cache: dict[int, Counter] = {}
    for k in range(3, m - 2):
        h = m - k
        if k > n or h > n:
            continue
        if k not in first_cache:
            first_cache[k] = Counter(_cycles_through(t.rows, v, k))
        total = 0
        # second cycle avoids V(gamma_1) \ {v}
        for mask, mult in first_cache[k].items():
            total += mult * len(_cycles_through(t.rows, v, h, forbidden=mask & ~vbit))
        splits[(k, h)] = total
    return FigureEightCensus(v, m, splits, sum(splits.values()))


def overlapping_pairs(t: Tournament, v: int, k: int, h: int) -> int:
    """Ordered pairs (k-cycle, h-cycle) through ``v`` sharing some vertex besides ``v``."""
    vbit = 1 << v
    a = Counter(_cycles_through(t.rows, v, k))
    b = Counter(_cycles_through(t.rows, v, h))
    return sum(ca * cb for ma, ca in a.items() for mb, cb in b.items() if ma & mb != vbit)


# ---------------------------------------------------------------------------
# walk algebra


@dataclass(frozen=True)
class WalkTable:
    """Exact powers ``A^0 .. A^K`` of the adjacency matrix (Python integers)."""

    base: Tournament
    powers: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def K(self) -> int:
        return len(self.powers) - 1

    def entry(self, k: int, i: int, j: int) -> int:
        return int(self.powers[k][i, j])

    def power(self, k: int) -> np.ndarray:
        return self.powers[k]

    def trace(self, k: int) -> int:
        return int(sum(self.powers[k][i, i] for i in range(self.base.n)))

    def satisfies_dr_recurrence(self, t: int) -> bool:
        """Check  A^p = 2t A^(p-1) + t A^(p-2) + (2t+1)(t+1) A^(p-3)  for 3 <= p <= K."""
        c = (2 * t + 1) * (t + 1)
        for p in range(3, self.K + 1):
            rhs = 2 * t * self.powers[p - 1] + t * self.powers[p - 2] + c * self.powers[p - 3]
            if not np.array_equal(self.powers[p], rhs):
                return False
        return True


def adjacency(t: Tournament, dtype=object) -> np.ndarray:
    return np.array(t.matrix(), dtype=dtype)


def walk_table(t: Tournament, K: int) -> WalkTable:
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    a = adjacency(t)
    powers = [np.identity(t.n, dtype=object) * 1, a]
    for _ in range(2, K + 1):
        powers.append(powers[-1].dot(a))
    return WalkTable(t, tuple(powers))


def path_count_matrix(t: Tournament, length: int) -> np.ndarray:
    """``P[i, j]`` = number of simple paths with ``length`` arcs from ``i`` to ``j``.

    Inclusion-exclusion over vertex subsets ``X`` of size ``<= length + 1``::

        P = sum_X (-1)^(length+1-|X|) C(n-|X|, length+1-|X|) (A_X)^length

    where ``A_X`` is the adjacency matrix of the induced subtournament.  The
    diagonal is zero for ``length >= 1``.
    """
    n = t.n
    k = length + 1
    if length < 1:
        raise ValueError("length must be >= 1")
    a = np.array(t.matrix(), dtype=np.int64)
    if k > n:
        return np.zeros((n, n), dtype=object)
    if (max(k - 1, 1)) ** length * comb(n, k) > 2**62:
        raise GuardError("path_count_matrix would overflow 64-bit accumulation")
    acc = np.zeros(n * n, dtype=np.int64)
    chunk = 40000
    for s in range(2, k + 1):
        coef = (-1) ** (k - s) * comb(n - s, k - s)
        combos = combinations(range(n), s)
        while True:
            block = np.fromiter(
                (x for c in _take(combos, chunk) for x in c), dtype=np.int64
            )
            if block.size == 0:
                break
            idx = block.reshape(-1, s)
            sub = a[idx[:, :, None], idx[:, None, :]]
            pw = _batched_power(sub, length)
            flat = (idx[:, :, None] * n + idx[:, None, :]).ravel()
            acc += coef * _scatter_sum(flat, pw.ravel(), n * n)
    out = acc.reshape(n, n).astype(object)
    for i in range(n):
        out[i, i] = 0
    return out


def _scatter_sum(idx: np.ndarray, w: np.ndarray, size: int) -> np.ndarray:
    # float64 bincount is exact while every partial sum stays below 2**53
    if w.size and int(np.abs(w).max()) * w.size >= 2**53:
        res = np.zeros(size, dtype=np.int64)
        np.add.at(res, idx, w)
        return res
    return np.rint(np.bincount(idx, weights=w, minlength=size)).astype(np.int64)


def _take(it, k):
    for _ in range(k):
        try:
            yield next(it)
        except StopIteration:
            return


def _batched_power(m: np.ndarray, e: int) -> np.ndarray:
    result = None
    base = m
    while e:
        if e & 1:
            result = base if result is None else result @ base
        e >>= 1
        if e:
            base = base @ base
    return result


def path_counts(t: Tournament, length: int) -> dict[tuple[int, int], int]:
    p = path_count_matrix(t, length)
    return {(i, j): int(p[i, j]) for i in range(t.n) for j in range(t.n) if i != j}


def cycle_total_by_paths(t: Tournament, m: int) -> tuple[int, dict[tuple[int, int], int]]:
    """c_m(T) and per-arc counts via ``c_m(T, j->i) = p_(m-1)(i, j)``."""
    p = path_count_matrix(t, m - 1)
    per_arc = {(j, i): int(p[i, j]) for (j, i) in t.arcs()}
    s = sum(per_arc.values())
    if s % m:
        raise ArithmeticError(f"arc sum {s} not divisible by m={m}")
    return s // m, per_arc


# ---------------------------------------------------------------------------
# non-path walks (independent oracle)


@lru_cache(maxsize=64)
def _nonpath_from(rows: tuple[int, ...], i: int, length: int) -> tuple[int, ...]:
    """Non-path walks of ``length`` arcs from ``i`` to every vertex.

    A walk that is not a path is split at its first repeated vertex: a simple
    prefix ending at ``v`` with vertex set ``S`` followed by a step ``v -> w``
    with ``w`` in ``S`` and then an arbitrary walk.  Simple prefixes are grouped
    by (``S``, ``v``); walk suffix counts come from a plain recursion over
    out-neighbour lists.
    """
    n = len(rows)
    nbrs = [iter_bits(r) for r in rows]
    # walks[r][w] = tuple over j of the number of r-arc walks from w to j
    walks = [[tuple(1 if j == w else 0 for j in range(n)) for w in range(n)]]
    for _ in range(1, length):
        prev = walks[-1]
        cur = []
        for w in range(n):
            vec = [0] * n
            for x in nbrs[w]:
                px = prev[x]
                for j in range(n):
                    vec[j] += px[j]
            cur.append(tuple(vec))
        walks.append(cur)
    result = [0] * n
    layer = {(1 << i, i): 1}
    for steps in range(length):
        remaining = length - steps - 1
        suffix = walks[remaining]
        nxt: dict[tuple[int, int], int] = {}
        for (s, v), cnt in layer.items():
            for w in nbrs[v]:
                if (s >> w) & 1:
                    vec = suffix[w]
                    for j in range(n):
                        if vec[j]:
                            result[j] += cnt * vec[j]
                elif remaining:
                    key = (s | (1 << w), w)
                    nxt[key] = nxt.get(key, 0) + cnt
        layer = nxt
    return tuple(result)


def count_nonpath_walks(t: Tournament, i: int, j: int, length: int, *, unsafe_scale: bool = False) -> int:
    """Number of ``length``-arc walks from ``i`` to ``j`` that repeat a vertex."""
    if i == j:
        raise ValueError("count_nonpath_walks needs i != j")
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    if length > MAX_WALK_LENGTH and not unsafe_scale:
        raise GuardError(f"length {length} exceeds the guard {MAX_WALK_LENGTH}")
    return _nonpath_from(t.rows, i, length)[j]


# ---------------------------------------------------------------------------
# arc uniformity


@dataclass(frozen=True)
class ArcUniformity:
    m: int
    uniform: bool
    common_value: int | None
    consistent: bool


def arc_uniformity(t: Tournament, m: int, census: CycleCensus | None = None) -> ArcUniformity:
    c = census if census is not None else count_cycles(t, m)
    values = set(c.per_arc.values())
    if len(values) == 1:
        v = values.pop()
        consistent = v * t.n * (t.n - 1) == 2 * m * c.total
        return ArcUniformity(m, True, v, consistent)
    return ArcUniformity(m, False, None, True)


# ---------------------------------------------------------------------------
# identities


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def _require_regular(t: Tournament, name: str):
    if t.semidegree is None:
        raise ValueError(f"identity {name} requires a regular tournament")


def verify_identity(name: str, t: Tournament | None = None, *, m: int | None = None, n: int | None = None) -> IdentityCheck:
    """Check a classical counting identity with both sides computed independently.

    ``kendall_c3``: 2 c_3 = n(n-1)(2n-1)/6 - sum (out-degree)^2.
    ``regular_c4``: c_4 = n(n+1)(n-1)(n-3)/48 - sum c_3(out-set).
    ``c5_plus_2c4``: c_5 + 2 c_4 = n(n-1)(n+1)(n-3)(n+3)/160.
    ``rlt_recurrence``: self-similarity recurrence for RLT_n (needs ``m`` and ``n``).
    """
    if name == "kendall_c3":
        nn = t.n
        lhs = Fraction(2 * count_cycles(t, 3).total) if nn >= 3 else Fraction(0)
        rhs = Fraction(nn * (nn - 1) * (2 * nn - 1), 6) - sum(d * d for d in t.scores)
        return IdentityCheck(name, lhs, rhs)
    if name == "regular_c4":
        _require_regular(t, name)
        nn = t.n
        lhs = Fraction(count_cycles(t, 4).total) if nn >= 4 else Fraction(0)
        rhs = Fraction(nn * (nn + 1) * (nn - 1) * (nn - 3), 48) - sum(
            count_3cycles_in(t, t.rows[i]) for i in range(nn)
        )
        return IdentityCheck(name, lhs, rhs)
    if name == "c5_plus_2c4":
        _require_regular(t, name)
        nn = t.n
        c5 = count_cycles(t, 5).total if nn >= 5 else 0
        c4 = count_cycles(t, 4).total if nn >= 4 else 0
        lhs = Fraction(c5 + 2 * c4)
        rhs = Fraction(nn * (nn - 1) * (nn + 1) * (nn - 3) * (nn + 3), 160)
        return IdentityCheck(name, lhs, rhs)
    if name == "rlt_recurrence":
        if m is None or n is None:
            raise ValueError("rlt_recurrence needs m and n")
        return rlt_recurrence(m, n)
    raise ValueError(f"unknown identity {name!r}")


def _total(t: Tournament, m: int) -> int:
    return 0 if m > t.n else count_cycles(t, m, unsafe_scale=True).total


def rlt_recurrence(m: int, n: int) -> IdentityCheck:
    """(n-m+2)/(n+2) c_m(RLT_{n+2}) = (n+m)/n c_m(RLT_n) + c_{m-1}(RLT_n, 0) + c^(2)_m(RLT_n, 0)."""
    from .core import rlt

    if n % 2 == 0 or n < 1:
        raise ValueError(f"rlt_recurrence needs odd n, got {n}")
    if m < 3:
        raise ValueError(f"rlt_recurrence needs m >= 3, got {m}")
    small, big = rlt(n), rlt(n + 2)
    lhs = Fraction(n - m + 2, n + 2) * _total(big, m)
    vertex = count_vertex_cycles(small, 0, m - 1, unsafe_scale=True) if 3 <= m - 1 <= n else 0
    fig = count_figure_eight(small, 0, m).total if 6 <= m <= 2 * (n - 1) else 0
    rhs = Fraction(n + m, n) * _total(small, m) + vertex + fig
    return IdentityCheck(f"rlt_recurrence(m={m},n={n})", lhs, rhs)
