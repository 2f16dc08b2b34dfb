"""Tournament representation, constructors for the named families, and
structural predicates.

A tournament of order ``n`` is stored as ``n`` bit-rows: bit ``j`` of row ``i``
is set iff ``i -> j``.  Vertices are ``0..n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

MAX_ORDER = 128


class TournamentError(ValueError):
    """Raised when an input violates a tournament or family invariant."""


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def iter_bits(mask: int) -> list[int]:
    return list(_bits(mask))


@dataclass(frozen=True, eq=True)
class Tournament:
    n: int
    rows: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise TournamentError(f"order must be positive, got {n}")
        if n > MAX_ORDER:
            raise TournamentError(f"order {n} exceeds the supported bound {MAX_ORDER}")
        if len(self.rows) != n:
            raise TournamentError(f"expected {n} rows, got {len(self.rows)}")
        full = (1 << n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full:
                raise TournamentError(f"row {i} has bits beyond column {n - 1}")
            if (r >> i) & 1:
                raise TournamentError(f"loop at vertex {i}: diagonal bit ({i},{i}) is set")
        for i in range(n):
            ri = self.rows[i]
            for j in range(i + 1, n):
                a = (ri >> j) & 1
                b = (self.rows[j] >> i) & 1
                if a == b:
                    kind = "both" if a else "neither"
                    raise TournamentError(
                        f"pair ({i},{j}) has {kind} orientation; "
                        "exactly one of i->j, j->i is required"
                    )

    # construction helpers -------------------------------------------------

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]], name: str = "") -> "Tournament":
        n = len(matrix)
        rows = []
        for i, row in enumerate(matrix):
            if len(row) != n:
                raise TournamentError(f"row {i} has length {len(row)}, expected {n}")
            r = 0
            for j, x in enumerate(row):
                if x not in (0, 1):
                    raise TournamentError(f"entry ({i},{j}) = {x!r} is not 0/1")
                if x:
                    r |= 1 << j
            rows.append(r)
        return cls(n, tuple(rows), name)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]], name: str = "") -> "Tournament":
        rows = [0] * n
        for i, j in arcs:
            rows[i] |= 1 << j
        return cls(n, tuple(rows), name)

    # basic queries ---------------------------------------------------------

    def has_arc(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def out_set(self, i: int) -> int:
        return self.rows[i]

    @cached_property
    def in_rows(self) -> tuple[int, ...]:
        cols = [0] * self.n
        for i, r in enumerate(self.rows):
            for j in _bits(r):
                cols[j] |= 1 << i
        return tuple(cols)

    def in_set(self, i: int) -> int:
        return self.in_rows[i]

    def out_degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def in_degree(self, i: int) -> int:
        return self.n - 1 - self.out_degree(i)

    @property
    def scores(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    @property
    def semidegree(self) -> int | None:
        s = self.scores
        if self.n % 2 == 1 and all(d == (self.n - 1) // 2 for d in s):
            return (self.n - 1) // 2
        return None

    def arcs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.rows[i])]

    def matrix(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def induced(self, vertices: Sequence[int]) -> "Tournament":
        """Subtournament on ``vertices``, relabelled ``0..k-1`` in the given order."""
        vs = list(vertices)
        idx = {v: k for k, v in enumerate(vs)}
        rows = []
        for v in vs:
            r = 0
            for w in _bits(self.rows[v]):
                if w in idx:
                    r |= 1 << idx[w]
            rows.append(r)
        return Tournament(len(vs), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "Tournament":
        """Tournament with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            r = 0
            for w in _bits(self.rows[v]):
                r |= 1 << perm[w]
            rows[perm[v]] = r
        return Tournament(self.n, tuple(rows), self.name)

    def __str__(self):
        return "\n".join(
            "".join("1" if (r >> j) & 1 else "0" for j in range(self.n)) for r in self.rows
        )


# ---------------------------------------------------------------------------
# family constructors


def transitive(n: int) -> Tournament:
    """TT_n: ``i -> j`` iff ``i < j``."""
    full = (1 << n) - 1
    rows = tuple(full & ~((1 << (i + 1)) - 1) for i in range(n))
    return Tournament(n, rows, f"TT_{n}")


def rotational(n: int, connection: Iterable[int], name: str = "") -> Tournament:
    """Circulant tournament on Z_n with ``i -> j`` iff ``(j - i) mod n`` is in ``connection``."""
    if n < 1 or n % 2 == 0:
        raise TournamentError(f"rotational tournaments need odd order, got n={n}")
    s = {d % n for d in connection}
    if 0 in s:
        raise TournamentError("rotational connection set must not contain 0")
    for d in range(1, n):
        if (d in s) == ((n - d) in s):
            raise TournamentError(
                f"rotational connection set must contain exactly one of {d}, {n - d}"
            )
    rows = []
    for i in range(n):
        r = 0
        for d in s:
            r |= 1 << ((i + d) % n)
        rows.append(r)
    return Tournament(n, tuple(rows), name or f"R_{n}({','.join(map(str, sorted(s)))})")


def rlt(n: int) -> Tournament:
    """The regular locally transitive tournament: connection set ``{1..(n-1)/2}``."""
    if n < 1 or n % 2 == 0:
        raise TournamentError(f"RLT_n needs odd n, got {n}")
    return rotational(n, range(1, (n - 1) // 2 + 1), f"RLT_{n}")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


def quadratic_residues(p: int) -> set[int]:
    return {(x * x) % p for x in range(1, p)}


def qr(p: int) -> Tournament:
    """Quadratic residue tournament: ``i -> j`` iff ``j - i`` is a nonzero square mod ``p``."""
    if not is_prime(p):
        raise TournamentError(f"QR_p needs p prime, got {p}")
    if p % 4 != 3:
        raise TournamentError(f"QR_p needs p = 3 (mod 4), got p={p} = {p % 4} (mod 4)")
    return rotational(p, quadratic_residues(p), f"QR_{p}")


SNDR13_ROWS = (
    "0111111000000",
    "0010101100011",
    "0001011000111",
    "0100011011001",
    "0011000111100",
    "0100100010111",
    "0000110101110",
    "1011010010010",
    "1110001001100",
    "1110010100001",
    "1101000101010",
    "1001100011001",
    "1000101110100",
)


def sndr13() -> Tournament:
    """The order-13 nearly-doubly-regular maximiser of c_8 (vertex ``k`` here is ``k+1`` there)."""
    return Tournament.from_matrix([[int(c) for c in row] for row in SNDR13_ROWS], "SNDR_13")


def cycle_blowup(t1: Tournament, t2: Tournament, t3: Tournament, name: str = "") -> Tournament:
    """Substitute three tournaments into the vertices of the 3-cycle.

    Block ``k`` dominates block ``k+1 (mod 3)``; arcs inside a block are copied.
    """
    parts = (t1, t2, t3)
    offsets = [0, t1.n, t1.n + t2.n]
    n = t1.n + t2.n + t3.n
    block = []
    for k, t in enumerate(parts):
        block.append(((1 << t.n) - 1) << offsets[k])
    rows = []
    for k, t in enumerate(parts):
        nxt = block[(k + 1) % 3]
        for r in t.rows:
            rows.append((r << offsets[k]) | nxt)
    return Tournament(n, tuple(rows), name)


def dominate_join(x: Tournament, y: Tournament, name: str = "") -> Tournament:
    """``x => y``: every vertex of ``x`` dominates every vertex of ``y``."""
    ymask = ((1 << y.n) - 1) << x.n
    rows = [r | ymask for r in x.rows] + [r << x.n for r in y.rows]
    return Tournament(x.n + y.n, tuple(rows), name)


def f_map(t: Tournament, name: str = "") -> Tournament:
    """The doubling map  [[A, A^T, 1], [A^T + I, A, 0], [0, 1, 0]]  of order ``2n+1``."""
    n = t.n
    cols = t.in_rows  # column j of A as a mask == row j of A^T
    apex = 2 * n
    rows = []
    for i in range(n):
        rows.append(t.rows[i] | (cols[i] << n) | (1 << apex))
    for i in range(n):
        rows.append((cols[i] | (1 << i)) | (t.rows[i] << n))
    rows.append(((1 << n) - 1) << n)
    return Tournament(2 * n + 1, tuple(rows), name)


def reverse(t: Tournament) -> Tournament:
    """Reverse every arc."""
    name = f"rev({t.name})" if t.name else ""
    return Tournament(t.n, t.in_rows, name)


def three_cycle() -> Tournament:
    return rlt(3)


def wreath_delta() -> Tournament:
    """Δ∘Δ: each vertex of the 3-cycle replaced by a 3-cycle."""
    d = three_cycle()
    return cycle_blowup(d, d, d, "Δ∘Δ")


def umin11_seed() -> Tournament:
    """Order-5 seed  Δ(•⇒•, •, •) ⇒ •."""
    return dominate_join(cycle_blowup(transitive(2), transitive(1), transitive(1)), transitive(1))


def umin13_seed() -> Tournament:
    """Order-6 seed  Δ(•⇒•, •⇒•, •) ⇒ •."""
    return dominate_join(cycle_blowup(transitive(2), transitive(2), transitive(1)), transitive(1))


def umin9() -> Tournament:
    return wreath_delta()


def umin11() -> Tournament:
    return f_map(umin11_seed(), "Umin_11")


def umin13() -> Tournament:
    return f_map(umin13_seed(), "Umin_13")


def rndr9() -> Tournament:
    return rotational(9, (2, 3, 4, 8), "R(2,3,4,8)")


# ---------------------------------------------------------------------------
# family specs


@dataclass(frozen=True)
class FamilySpec:
    """Tagged description of a tournament family member.

    ``kind`` is one of ``transitive``, ``rlt``, ``qr``, ``rotational``,
    ``sndr13``, ``matrix``.
    """

    kind: str
    n: int | None = None
    connection: tuple[int, ...] = ()
    rows: tuple[int, ...] = ()

    @classmethod
    def parse(cls, family: str, n: int | None = None, connection: Sequence[int] = ()) -> "FamilySpec":
        aliases = {"tt": "transitive", "transitive": "transitive", "rlt": "rlt", "qr": "qr",
                   "rot": "rotational", "rotational": "rotational", "sndr13": "sndr13",
                   "umin9": "umin9", "umin11": "umin11", "umin13": "umin13", "rndr9": "rndr9",
                   "wreath": "umin9"}
        key = family.lower()
        if key not in aliases:
            raise TournamentError(f"unknown family {family!r}; expected one of {sorted(aliases)}")
        return cls(aliases[key], n, tuple(connection))


_NAMED = {
    "sndr13": sndr13,
    "umin9": umin9,
    "umin11": umin11,
    "umin13": umin13,
    "rndr9": rndr9,
}


def build(spec: FamilySpec) -> Tournament:
    kind = spec.kind
    if kind in _NAMED:
        return _NAMED[kind]()
    if kind == "matrix":
        return Tournament(len(spec.rows), tuple(spec.rows))
    if spec.n is None:
        raise TournamentError(f"family {kind!r} needs an order n")
    if kind == "transitive":
        return transitive(spec.n)
    if kind == "rlt":
        return rlt(spec.n)
    if kind == "qr":
        return qr(spec.n)
    if kind == "rotational":
        return rotational(spec.n, spec.connection)
    raise TournamentError(f"unknown family kind {kind!r}")


# ---------------------------------------------------------------------------
# structure


def count_3cycles_in(t: Tournament, mask: int) -> int:
    """Number of cyclic triples inside the vertex set ``mask``."""
    vs = iter_bits(mask)
    total = 0
    for a, b, c in combinations(vs, 3):
        ab = (t.rows[a] >> b) & 1
        bc = (t.rows[b] >> c) & 1
        ca = (t.rows[c] >> a) & 1
        if ab == bc == ca:
            total += 1
    return total


def _near_regular(t: Tournament, mask: int) -> bool:
    degs = [(t.rows[v] & mask).bit_count() for v in _bits(mask)]
    return not degs or max(degs) - min(degs) <= 1


@dataclass(frozen=True)
class StructureReport:
    is_regular: bool
    semidegree: int | None
    is_doubly_regular: bool
    t: int | None
    is_locally_transitive: bool
    is_near_doubly_regular: bool


def classify(t: Tournament) -> StructureReport:
    n = t.n
    delta = t.semidegree
    regular = delta is not None
    dr_t = None
    doubly = False
    if regular and n % 4 == 3:
        cand = (n - 3) // 4
        doubly = all(
            (t.rows[i] & t.rows[j]).bit_count() == cand
            for i in range(n) for j in range(i + 1, n)
        )
        dr_t = cand if doubly else None
    local = all(
        count_3cycles_in(t, t.rows[i]) == 0 and count_3cycles_in(t, t.in_rows[i]) == 0
        for i in range(n)
    )
    ndr = regular and all(
        _near_regular(t, t.rows[i]) and _near_regular(t, t.in_rows[i]) for i in range(n)
    )
    return StructureReport(regular, delta, doubly, dr_t, local, ndr)
