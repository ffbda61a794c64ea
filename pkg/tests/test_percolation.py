import dataclasses
import random

import pytest
from hypothesis import given, settings, strategies as st

from posetsat.family import Embedding, SetFamily, mask_of
from posetsat.oracle import min_percolating
from posetsat.percolation import (
    PercolationSchedule,
    canonical_copy,
    formula,
    percolates,
    percolating_family,
    percolation_closure,
    verify_schedule,
)
from posetsat.poset import antichain, chain, poset_classes, unique_extremes

from conftest import V2, families, posets


def lists(masks):
    return [sorted(e + 1 for e in range(m.bit_length()) if m >> e & 1) for m in masks]


def test_canonical_copy_examples():
    assert lists(canonical_copy(chain(2), [1, 2])) == [[1], [1, 2]]
    assert lists(canonical_copy(V2, [1, 2, 3])) == [[1], [1, 2], [1, 3]]
    assert lists(canonical_copy(antichain(2), [4, 7])) == [[4], [7]]
    with pytest.raises(ValueError):
        canonical_copy(V2, [1, 2])


@pytest.mark.parametrize(
    "P,n,size,extras",
    [
        (chain(2), 5, 1, set()),
        (antichain(2), 5, 3, {0, 31}),
        (V2, 8, 3, {255}),
    ],
    ids=["C2", "A2", "V2"],
)
def test_percolating_family_examples(P, n, size, extras):
    s = percolating_family(P, n)
    assert len(s.initial) == size == formula(P)
    assert extras <= set(s.initial.members)
    assert verify_schedule(s).ok


def test_percolating_family_needs_room():
    with pytest.raises(ValueError):
        percolating_family(chain(2), 4)


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_every_small_poset_percolates(p):
    for P in poset_classes(p):
        for n in (3 * p - 1, 3 * p):
            s = percolating_family(P, n)
            assert verify_schedule(s).ok
            assert len(s.initial) == formula(P)
            if n == 3 * p - 1:
                assert percolates(s.initial, P)


def test_schedule_invariants():
    s = percolating_family(V2, 8)
    added = s.added()
    assert len(set(added)) == len(added)
    assert not set(added) & set(s.initial.members)
    assert len(added) + len(s.initial) == 1 << 8


@pytest.mark.parametrize("p", [2, 3])
def test_initial_family_fixed_apart_from_full_set(p):
    for P in poset_classes(p):
        a = percolating_family(P, 3 * p - 1)
        b = percolating_family(P, 3 * p + 1)
        strip = lambda s: set(s.initial.members) - {(1 << s.n) - 1}
        assert strip(a) == strip(b)


def test_formula_cases():
    for P in poset_classes(3):
        lo, hi = unique_extremes(P)
        assert formula(P) == 3 - 1 + (not lo) + (not hi)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_formula_is_minimum(p):
    for P in poset_classes(p):
        assert min_percolating(P, 3 * p - 1).size == formula(P)


def test_verify_detects_corruption():
    s = percolating_family(V2, 8)
    # drop a witness set from its prefix by deleting the step that added it
    target = 7
    S, emb = s.steps[target]
    later = next(i for i in range(target + 1, len(s.steps)) if S in s.steps[i][1].sets)
    steps = s.steps[:target] + s.steps[target + 1 :]
    bad = dataclasses.replace(s, steps=steps)
    chk = verify_schedule(bad)
    assert not chk.ok and chk.index == later - 1

    wrong = list(s.steps)
    wrong[3] = (wrong[3][0], Embedding(tuple(reversed(wrong[3][1].sets))))
    chk = verify_schedule(dataclasses.replace(s, steps=tuple(wrong)))
    assert not chk.ok and chk.index == 3

    short = dataclasses.replace(s, steps=s.steps[:-1])
    chk = verify_schedule(short)
    assert not chk.ok and chk.index == len(short.steps)


def test_verify_trivial_schedule():
    s = PercolationSchedule(chain(2), 3, SetFamily.power_set(3), ())
    assert verify_schedule(s).ok


def test_closure_examples():
    s = percolating_family(chain(2), 5)
    assert len(percolation_closure(s.initial, chain(2))) == 32
    F = SetFamily.of(3, [0])
    assert percolation_closure(F, antichain(2)) == F
    full = SetFamily.power_set(3)
    assert percolation_closure(full, V2) == full


@given(families(n_max=4, max_size=6), posets(3, min_size=1), st.integers(0, 10**6))
@settings(max_examples=80)
def test_closure_order_independent(F, P, seed):
    base = percolation_closure(F, P)
    other = percolation_closure(F, P, seed=seed)
    rev = percolation_closure(F, P, order=list(range(1 << F.n))[::-1])
    assert base == other == rev
    assert set(F.members) <= set(base.members)
