from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from tourcycles.core import (
    FamilySpec, Tournament, TournamentError, build, classify, cycle_blowup, dominate_join, f_map,
    qr, reverse, rlt, rndr9, rotational, sndr13, three_cycle, transitive, umin11, umin13, wreath_delta,
)


def random_tournament(n: int, bits: int) -> Tournament:
    rows = [0] * n
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if (bits >> k) & 1:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
            k += 1
    return Tournament(n, tuple(rows))


tournaments = st.integers(1, 12).flatmap(
    lambda n: st.integers(0, 2 ** (n * (n - 1) // 2) - 1).map(lambda b: random_tournament(n, b)))


def test_rlt3_is_three_cycle():
    assert rlt(3).arcs() == [(0, 1), (1, 2), (2, 0)]


def test_qr7_out_set():
    assert qr(7).out_set(0) == 0b10110


def test_sndr13_row_one():
    t = sndr13()
    assert "".join(str(x) for x in t.matrix()[0]) == "0111111000000"
    assert t.semidegree == 6


@pytest.mark.parametrize("bad", ([[0, 1], [1, 0]], [[0, 0], [0, 0]], [[1, 0], [1, 0]]))
def test_invalid_matrix_rejected(bad):
    with pytest.raises(TournamentError):
        Tournament.from_matrix(bad)


def test_error_names_pair():
    with pytest.raises(TournamentError, match=r"\(0,2\)"):
        Tournament.from_matrix([[0, 1, 1], [0, 0, 1], [1, 0, 0]])


@pytest.mark.parametrize("p", [4, 9, 13, 5])
def test_qr_rejects_bad_order(p):
    with pytest.raises(TournamentError):
        qr(p)


def test_rotational_rejects_bad_set():
    with pytest.raises(TournamentError):
        rotational(7, (1, 6, 2))
    with pytest.raises(TournamentError):
        rotational(7, (1, 2))


def test_all_constructors_valid_up_to_101():
    for n in range(1, 102, 2):
        assert rlt(n).semidegree == (n - 1) // 2
    for n in range(1, 40):
        assert transitive(n).scores == tuple(range(n - 1, -1, -1))
    for p in (3, 7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83):
        assert qr(p).semidegree == (p - 1) // 2


def test_cycle_blowup_examples():
    t1 = transitive(1)
    assert cycle_blowup(t1, t1, t1) == three_cycle()
    b = cycle_blowup(transitive(2), t1, t1)
    # block k dominates block k+1: the singleton blocks get out-degrees 1 and 2
    assert b.scores == (2, 1, 1, 2)
    assert sorted(b.scores) == sorted((2, 1, 2, 1))
    w = wreath_delta()
    assert w.n == 9 and w.semidegree == 4


def test_dominate_join_examples():
    assert dominate_join(transitive(1), transitive(1)) == transitive(2)
    assert dominate_join(transitive(2), transitive(3)) == transitive(5)


def test_f_map_small_and_regular():
    c = f_map(transitive(1))
    assert c.n == 3 and c.semidegree == 1
    for t in (f_map(transitive(4)), umin11(), umin13()):
        assert classify(t).is_regular
    assert umin13().n == 13 and umin11().n == 11


def test_classify_examples():
    r = classify(qr(11))
    assert r.is_doubly_regular and r.t == 2
    r = classify(rlt(9))
    assert r.is_locally_transitive and not r.is_doubly_regular
    assert not classify(transitive(5)).is_regular


def test_qr_doubly_regular_and_rlt_locally_transitive():
    for p in (3, 7, 11, 19, 23):
        assert classify(qr(p)).is_doubly_regular
    for n in range(1, 52, 2):
        assert classify(rlt(n)).is_locally_transitive


def test_rndr9_near_doubly_regular():
    r = classify(rndr9())
    assert r.is_regular and r.is_near_doubly_regular


def test_reverse_examples():
    assert reverse(reverse(qr(11))) == qr(11)
    r = classify(reverse(qr(7)))
    assert r.is_doubly_regular and r.t == 1
    n = 6
    perm = [n - 1 - v for v in range(n)]
    assert reverse(transitive(n)) == transitive(n).relabel(perm)


@settings(max_examples=60, deadline=None)
@given(tournaments)
def test_reverse_preserves_classification(t):
    assert classify(reverse(t)) == classify(t)
    assert reverse(reverse(t)) == t


def test_family_spec_build():
    assert build(FamilySpec.parse("rlt", 9)) == rlt(9)
    assert build(FamilySpec.parse("rot", 9, (2, 3, 4, 8))) == rndr9()
    assert build(FamilySpec.parse("sndr13")) == sndr13()
    with pytest.raises(TournamentError):
        FamilySpec.parse("nope", 3)
    with pytest.raises(TournamentError):
        build(FamilySpec.parse("qr", None))
