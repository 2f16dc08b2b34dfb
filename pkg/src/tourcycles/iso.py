"""Canonical labelling, isomorphism, automorphism counting, exhaustive
enumeration of regular tournaments and doubly-regular search.

The canonical form is the lexicographically smallest relabelled bit-matrix
among the leaves of an individualisation-refinement search tree.  The tree is
built only from isomorphism-invariant choices (vertex invariants, equitable
refinement, first non-singleton cell), so isomorphic inputs give identical
forms, and the number of leaves achieving the minimum is the order of the
automorphism group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb, factorial

from .census import GuardError, _cycles_through, count_cycles
from .core import Tournament, TournamentError, classify, count_3cycles_in, iter_bits

MAX_CANON_ORDER = 15


@dataclass(frozen=True)
class CanonicalForm:
    data: bytes
    aut_order: int
    tournament: Tournament = field(compare=False, repr=False)

    def __hash__(self):
        return hash(self.data)


def vertex_invariants(t: Tournament) -> list[tuple[int, int, int]]:
    """(out-degree, 3-cycles inside the out-set, 4-cycles through the vertex)."""
    return [
        (t.rows[v].bit_count(), count_3cycles_in(t, t.rows[v]), len(_cycles_through(t.rows, v, 4)) if t.n >= 4 else 0)
        for v in range(t.n)
    ]


def _refine(rows: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        new: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                sig = tuple((rows[v] & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new.append(groups[sig])
        if len(new) == len(cells):
            return new
        cells = new


def _form(rows: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = {v: p for p, v in enumerate(order)}
    out = []
    for v in order:
        r = 0
        for w in iter_bits(rows[v]):
            r |= 1 << (len(order) - 1 - pos[w])
        out.append(r)
    return tuple(out)


def _canon_search(t: Tournament):
    rows = t.rows
    inv = vertex_invariants(t)
    groups: dict[tuple, list[int]] = {}
    for v in range(t.n):
        groups.setdefault(inv[v], []).append(v)
    start = [groups[k] for k in sorted(groups)]
    best = [None, 0, None]  # form, count, order

    def search(cells):
        cells = _refine(rows, cells)
        for idx, c in enumerate(cells):
            if len(c) > 1:
                break
        else:
            order = [c[0] for c in cells]
            f = _form(rows, order)
            if best[0] is None or f < best[0]:
                best[0], best[1], best[2] = f, 1, order
            elif f == best[0]:
                best[1] += 1
            return
        cell = cells[idx]
        for v in cell:
            rest = [w for w in cell if w != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1:])

    search(start)
    return best


def canonicalize(t: Tournament, *, unsafe_scale: bool = False) -> CanonicalForm:
    if t.n > MAX_CANON_ORDER and not unsafe_scale:
        raise GuardError(f"canonicalize guard: n={t.n} > {MAX_CANON_ORDER}; pass unsafe_scale=True")
    from .io import encode_digraph6

    form, count, order = _canon_search(t)
    n = t.n
    # position p holds vertex order[p]; bit (n-1-q) of form[p] is arc p -> q
    rows = []
    for r in form:
        x = 0
        for q in range(n):
            if (r >> (n - 1 - q)) & 1:
                x |= 1 << q
        rows.append(x)
    canon = Tournament(n, tuple(rows))
    return CanonicalForm(encode_digraph6(canon).encode("ascii"), count, canon)


def quick_invariant(t: Tournament) -> tuple:
    return (t.n, tuple(sorted(t.scores)), tuple(sorted(vertex_invariants(t))))


def are_isomorphic(a: Tournament, b: Tournament, *, unsafe_scale: bool = False) -> bool:
    if a.n != b.n or sorted(a.scores) != sorted(b.scores):
        return False
    if quick_invariant(a) != quick_invariant(b):
        return False
    return canonicalize(a, unsafe_scale=unsafe_scale).data == canonicalize(b, unsafe_scale=unsafe_scale).data


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def tournament_classes(k: int) -> tuple[Tournament, ...]:
    """Canonical representatives of all tournaments of order ``k`` (k <= 6)."""
    if k > 6:
        raise TournamentError("tournament_classes is limited to k <= 6")
    if k == 0:
        return ()
    pairs = list(combinations(range(k), 2))
    seen: dict[bytes, Tournament] = {}
    for bits in range(1 << len(pairs)):
        rows = [0] * k
        for e, (i, j) in enumerate(pairs):
            if (bits >> e) & 1:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
        cf = canonicalize(Tournament(k, tuple(rows)))
        seen.setdefault(cf.data, cf.tournament)
    return tuple(seen[key] for key in sorted(seen))


def _margin_matrices(row_sums: list[int], col_sums: list[int]):
    """All 0-1 matrices (as lists of row masks) with the given margins."""
    k = len(row_sums)
    cols = len(col_sums)
    remaining = list(col_sums)
    out: list[int] = []

    def rec(i):
        if i == k:
            if not any(remaining):
                yield list(out)
            return
        rows_left = k - i - 1
        for chosen in combinations(range(cols), row_sums[i]):
            if any(remaining[c] == 0 for c in chosen):
                continue
            for c in chosen:
                remaining[c] -= 1
            if all(r <= rows_left for r in remaining):
                m = 0
                for c in chosen:
                    m |= 1 << c
                out.append(m)
                yield from rec(i + 1)
                out.pop()
            for c in chosen:
                remaining[c] += 1

    yield from rec(0)


def _candidates_split(n: int):
    """Regular tournaments with N+(0) = {1..d}, N-(0) = {d+1..2d} whose induced
    out-set and in-set are canonical class representatives."""
    d = (n - 1) // 2
    reps = tournament_classes(d) if d else (Tournament(1, (0,)),)
    if d == 0:
        yield Tournament(1, (0,))
        return
    full_out = ((1 << d) - 1) << 1
    for ro in reps:
        for ri in reps:
            rsum = [d - ro.rows[u].bit_count() for u in range(d)]
            csum = [1 + ri.rows[w].bit_count() for w in range(d)]
            if sum(rsum) != sum(csum):
                continue
            for b in _margin_matrices(rsum, csum):
                rows = [full_out]
                for u in range(d):
                    rows.append((ro.rows[u] << 1) | (b[u] << (d + 1)))
                for w in range(d):
                    beat_out = 0
                    for u in range(d):
                        if not (b[u] >> w) & 1:
                            beat_out |= 1 << (u + 1)
                    rows.append(1 | beat_out | (ri.rows[w] << (d + 1)))
                yield Tournament(n, tuple(rows))


def _candidates_rows(n: int):
    """Arc-by-arc backtracking over the upper triangle with N+(0) = {1..d}."""
    d = (n - 1) // 2
    if n == 1:
        yield Tournament(1, (0,))
        return
    rows = [0] * n
    outdeg = [0] * n
    rows[0] = ((1 << d) - 1) << 1
    outdeg[0] = d
    for v in range(d + 1, n):
        rows[v] |= 1
        outdeg[v] = 1
    pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n)]
    # games still to play per vertex, for pruning
    left = [0] * n
    for i, j in pairs:
        left[i] += 1
        left[j] += 1

    def rec(k):
        if k == len(pairs):
            yield Tournament(n, tuple(rows))
            return
        i, j = pairs[k]
        left[i] -= 1
        left[j] -= 1
        for winner, loser in ((i, j), (j, i)):
            if outdeg[winner] >= d:
                continue
            outdeg[winner] += 1
            if outdeg[loser] + left[loser] >= d and outdeg[winner] + left[winner] >= d:
                rows[winner] |= 1 << loser
                yield from rec(k + 1)
                rows[winner] &= ~(1 << loser)
            outdeg[winner] -= 1
        left[i] += 1
        left[j] += 1

    yield from rec(0)


@dataclass(frozen=True)
class RegularClass:
    form: CanonicalForm
    cycle_totals: dict[int, int]

    @property
    def tournament(self) -> Tournament:
        return self.form.tournament

    @property
    def aut_order(self) -> int:
        return self.form.aut_order


@dataclass(frozen=True)
class Enumeration:
    n: int
    strategy: str
    classes: tuple[RegularClass, ...]
    candidates: int

    @property
    def labeled_total(self) -> int:
        """Sum of n!/|Aut| over classes, the number of labelled regular tournaments."""
        return sum(factorial(self.n) // c.aut_order for c in self.classes)

    def extremes(self, m: int) -> tuple[int, int]:
        vals = [c.cycle_totals[m] for c in self.classes]
        return min(vals), max(vals)


ENUM_GUARD = 9


def enumerate_regular(n: int, *, strategy: str = "split", unsafe_scale: bool = False,
                      cycle_lengths: tuple[int, ...] | None = None) -> Enumeration:
    """All isomorphism classes of regular tournaments of odd order ``n``."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"regular tournaments need odd n, got {n}")
    if n > ENUM_GUARD and not unsafe_scale:
        raise GuardError(f"enumerate_regular guard: n={n} > {ENUM_GUARD}; pass unsafe_scale=True")
    gen = {"split": _candidates_split, "rows": _candidates_rows}.get(strategy)
    if gen is None:
        raise ValueError(f"unknown strategy {strategy!r}")
    seen: dict[bytes, CanonicalForm] = {}
    count = 0
    for cand in gen(n):
        count += 1
        cf = canonicalize(cand, unsafe_scale=unsafe_scale)
        seen.setdefault(cf.data, cf)
    lengths = cycle_lengths if cycle_lengths is not None else tuple(range(3, min(n, 8) + 1))
    classes = []
    for key in sorted(seen):
        cf = seen[key]
        totals = {m: count_cycles(cf.tournament, m).total for m in lengths}
        classes.append(RegularClass(cf, totals))
    return Enumeration(n, strategy, tuple(classes), count)


def count_labeled_regular(n: int) -> int:
    """Number of labelled regular tournaments of odd order ``n`` (independent DP)."""
    if n % 2 == 0:
        return 0
    d = (n - 1) // 2

    @lru_cache(maxsize=None)
    def ways(needs: tuple[int, ...]) -> int:
        # needs: sorted remaining out-degree demands of the remaining vertices
        if not needs:
            return 1
        first, rest = needs[0], needs[1:]
        if first < 0 or first > len(rest):
            return 0
        # the first vertex beats exactly `first` of the others; choose them per value class
        values = sorted(set(rest))
        mult = {v: rest.count(v) for v in values}
        total = 0

        def pick(idx, chosen_left, acc, new_needs):
            nonlocal total
            if idx == len(values):
                if chosen_left == 0:
                    total += acc * ways(tuple(sorted(new_needs)))
                return
            v = values[idx]
            c = mult[v]
            for k in range(min(c, chosen_left) + 1):
                # beaten vertices keep demand v; the others beat the first vertex
                nn = new_needs + [v] * k + [v - 1] * (c - k)
                if c - k and v - 1 < 0:
                    continue
                pick(idx + 1, chosen_left - k, acc * comb(c, k), nn)

        pick(0, first, 1, [])
        return total

    return ways(tuple([d] * n))


# ---------------------------------------------------------------------------
# doubly-regular search


@dataclass(frozen=True)
class DRSearchResult:
    n: int
    tournament: Tournament | None
    nodes: int
    budget: int
    exhausted: bool

    @property
    def found(self) -> bool:
        return self.tournament is not None


def search_doubly_regular(n: int, budget: int = 200_000) -> DRSearchResult:
    """Backtracking search for a doubly-regular tournament of order ``n = 4t+3``.

    Rows are fixed one at a time; every completed pair of rows must share
    exactly ``t`` out-neighbours.  Vertex 0 dominates ``1..2t+1`` and the row
    of vertex 1 is fixed up to relabelling.  ``exhausted`` is True only when
    the whole tree was searched; running out of budget yields ``found=False``
    with ``exhausted=False``.
    """
    if n % 4 != 3:
        raise ValueError(f"doubly-regular tournaments need n = 3 (mod 4), got {n}")
    t = (n - 3) // 4
    d = 2 * t + 1
    rows = [0] * n
    rows[0] = ((1 << d) - 1) << 1
    nodes = 0
    if n == 3:
        found = Tournament(3, (0b010, 0b100, 0b001))
        return DRSearchResult(n, found, 1, budget, False)
    r1 = 0
    for v in range(2, t + 2):
        r1 |= 1 << v
    for v in range(d + 1, d + t + 2):
        r1 |= 1 << v
    rows[1] = r1

    class Budget(Exception):
        pass

    def fixed_part(i):
        r = 0
        for j in range(i):
            if not (rows[j] >> i) & 1:
                r |= 1 << j
        return r

    def rec(i):
        nonlocal nodes
        if i == n:
            return True
        base = fixed_part(i)
        need = d - base.bit_count()
        free = list(range(i + 1, n))
        if need < 0 or need > len(free):
            return False
        for chosen in combinations(free, need):
            nodes += 1
            if nodes > budget:
                raise Budget
            r = base
            for c in chosen:
                r |= 1 << c
            if all((rows[h] & r).bit_count() == t for h in range(i)):
                rows[i] = r
                if rec(i + 1):
                    return True
        rows[i] = 0
        return False

    # rows 0 and 1 must already be compatible
    if (rows[0] & rows[1]).bit_count() != t:
        raise AssertionError("symmetry-breaking rows are inconsistent")
    try:
        ok = rec(2)
    except Budget:
        return DRSearchResult(n, None, nodes, budget, False)
    if not ok:
        return DRSearchResult(n, None, nodes, budget, True)
    found = Tournament(n, tuple(rows), f"DR_{n}")
    if not classify(found).is_doubly_regular:
        raise AssertionError("search produced a tournament that is not doubly-regular")
    return DRSearchResult(n, found, nodes, budget, False)
