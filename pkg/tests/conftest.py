import itertools

import pytest

from hypothesis import strategies as st

from posetsat.family import SetFamily, is_induced_copy
from posetsat.poset import Poset, complete_multilayer, make_poset

V2 = complete_multilayer([1, 2])
LAMBDA2 = complete_multilayer([2, 1])
DIAMOND = complete_multilayer([1, 2, 1])
BUTTERFLY = complete_multilayer([2, 2])


@st.composite
def posets(draw, max_size=4, min_size=0):
    """Random poset: pairs (i, j) with i < j, closed transitively."""
    p = draw(st.integers(min_size, max_size))
    pairs = [(i, j) for i in range(p) for j in range(i + 1, p)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    P = make_poset(p, chosen)
    perm = draw(st.permutations(range(p)))
    return P.relabel(perm)


@st.composite
def families(draw, n_max=4, max_size=12):
    n = draw(st.integers(1, n_max))
    masks = draw(st.lists(st.integers(0, (1 << n) - 1), unique=True, max_size=min(max_size, 1 << n)))
    return SetFamily.of(n, masks)


def naive_copy_exists(members, P: Poset, must=None) -> bool:
    """Brute force: some |P|-subset of members, in some order, is an induced copy."""
    for sub in itertools.combinations(members, P.size):
        if must is not None and must not in sub:
            continue
        for perm in itertools.permutations(sub):
            if is_induced_copy(P, perm):
                return True
    return False


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # keep the call-phase report so fixtures can see the outcome at teardown
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep
