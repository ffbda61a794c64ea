"""Induced saturation and percolation of posets in the boolean lattice."""

from .family import BACKEND, Embedding, SetFamily, find_induced_copy, iter_induced_copies, separates
from .poset import (
    CycleError,
    Poset,
    antichain,
    chain,
    complete_multilayer,
    disjoint_union,
    dot,
    dual,
    linear_sum,
    make_poset,
)
from .saturation import InfeasibleError, greedy_complete, is_free, is_saturated
from .constructions import glued_special_family, klayer_family, klayer_seed, special_family
from .percolation import percolating_family, percolation_closure, verify_schedule
from .oracle import SearchLimits, all_saturated_of_size, min_percolating, min_saturated

__version__ = "0.1.0"
