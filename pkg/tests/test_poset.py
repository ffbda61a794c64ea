import itertools
from functools import reduce

import pytest
from hypothesis import given, settings, strategies as st

from posetsat.family import SetFamily, find_induced_copy
from posetsat.poset import (
    EMPTY,
    CycleError,
    antichain,
    chain,
    complete_multilayer,
    decompose_special,
    disjoint_union,
    dot,
    dual,
    has_legs,
    has_uctp,
    is_isomorphic,
    is_special,
    linear_sum,
    make_poset,
    naturally_labelled_posets,
    point,
    poset_classes,
    specialize,
    unique_extremes,
)

from conftest import BUTTERFLY, DIAMOND, LAMBDA2, V2, posets


def test_make_poset_chain():
    P = make_poset(2, [(0, 1)])
    assert P.lt == ((False, True), (False, False))
    assert P == chain(2)


def test_make_poset_closure():
    P = make_poset(3, [(0, 1), (1, 2)])
    assert P.lt[0][2]
    assert is_isomorphic(P, chain(3))


def test_make_poset_cycle():
    with pytest.raises(CycleError) as err:
        make_poset(2, [(0, 1), (1, 0)])
    assert set(err.value.cycle) == {0, 1}


def test_make_poset_rejects_bad_pairs():
    with pytest.raises(ValueError):
        make_poset(2, [(0, 2)])
    with pytest.raises(ValueError):
        make_poset(2, [(1, 1)])


def test_multilayer_examples():
    assert complete_multilayer([2]) == antichain(2)
    assert len(BUTTERFLY.pairs()) == 4
    assert V2.size == 3 and V2.minimal == (0,) and set(V2.maximal) == {1, 2}
    with pytest.raises(ValueError):
        complete_multilayer([])


def test_linear_sum_examples():
    assert is_isomorphic(linear_sum(antichain(2), antichain(2)), BUTTERFLY)
    assert is_isomorphic(linear_sum(point(), antichain(2)), LAMBDA2)
    assert linear_sum(V2, EMPTY) == V2
    assert linear_sum(EMPTY, V2) == V2
    assert dot(antichain(2)) == linear_sum(point(), antichain(2))


def test_dual_examples():
    assert is_isomorphic(dual(chain(3)), chain(3))
    assert is_isomorphic(dual(V2), LAMBDA2)


def test_isomorphism_examples():
    assert is_isomorphic(V2, dual(LAMBDA2))
    assert not is_isomorphic(V2, chain(3))


def test_unique_extremes_examples():
    assert unique_extremes(chain(2)) == (True, True)
    assert unique_extremes(antichain(2)) == (False, False)
    assert unique_extremes(V2) == (True, False)
    with pytest.raises(ValueError):
        unique_extremes(EMPTY)


def test_uctp_examples():
    assert not has_uctp(disjoint_union(chain(2), chain(2)))
    assert has_uctp(antichain(2))
    assert has_uctp(V2)


def test_legs_examples():
    assert has_legs(LAMBDA2)
    assert not has_legs(DIAMOND)
    assert not has_legs(antichain(2))


def test_decompose_special_examples():
    d = decompose_special(antichain(2))
    assert d.isolated == 0 and d.core == point()
    D = disjoint_union(DIAMOND, point())
    d = decompose_special(D)
    assert d.isolated == 4 and is_isomorphic(d.core, DIAMOND)
    assert d.core_min == 0 and d.core_max == 3
    assert decompose_special(V2) is None


def test_specialize_examples():
    assert specialize(antichain(2)).size == 5
    assert specialize(chain(2)).size == 3


def test_poset_class_counts():
    # number of unlabelled posets on 1..4 points
    assert [len(poset_classes(p)) for p in range(1, 5)] == [1, 2, 5, 16]


@given(posets(5))
def test_closure_idempotent(P):
    assert make_poset(P.size, P.pairs()) == P


@given(posets(5))
def test_dual_involution(P):
    assert dual(dual(P)) == P


@given(posets(5))
def test_relation_invariants(P):
    for i in range(P.size):
        assert not P.lt[i][i]
        for j in range(P.size):
            assert not (P.lt[i][j] and P.lt[j][i])
            for k in range(P.size):
                if P.lt[i][j] and P.lt[j][k]:
                    assert P.lt[i][k]


@given(posets(5), st.randoms())
def test_isomorphic_to_relabelling(P, rnd):
    perm = list(range(P.size))
    rnd.shuffle(perm)
    assert is_isomorphic(P, P.relabel(perm))


@given(posets(4), posets(4), posets(4))
@settings(max_examples=60)
def test_linear_sum_associative(A, B, C):
    assert is_isomorphic(linear_sum(linear_sum(A, B), C), linear_sum(A, linear_sum(B, C)))


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4))
def test_multilayer_is_folded_sum(sizes):
    folded = reduce(lambda acc, s: linear_sum(antichain(s), acc), sizes, EMPTY)
    assert is_isomorphic(folded, complete_multilayer(sizes))


def test_dual_preserves_uctp_exhaustive():
    for p in range(1, 6):
        for P in naturally_labelled_posets(p):
            assert has_uctp(P) == has_uctp(dual(P))


def test_specialize_is_special_exhaustive():
    for p in range(1, 6):
        for P in poset_classes(p) if p < 5 else naturally_labelled_posets(p):
            S = specialize(P)
            assert S.size <= P.size + 3
            assert is_special(S)


@given(posets(4, min_size=1))
@settings(max_examples=40)
def test_specialize_contains_original(P):
    S = specialize(P)
    # principal down-sets of S give an induced copy of S, hence of P
    principal = SetFamily.of(S.size, [S.down[j] | 1 << j for j in range(S.size)])
    assert find_induced_copy(principal, P) is not None


def test_has_legs_matches_definition_exhaustive():
    def brute(P):
        for l1, l2, h in itertools.permutations(range(P.size), 3):
            if P.comparable(l1, l2) or not (P.lt[l1][h] and P.lt[l2][h]):
                continue
            if all(P.lt[h][z] for z in range(P.size) if z not in (l1, l2, h)):
                return True
        return False

    for p in range(1, 6):
        for P in naturally_labelled_posets(p):
            assert has_legs(P) == brute(P)
