"""Online set cover by weight doubling and randomized rounding.

Every set starts with weight ``1/f``. When an uncovered element arrives, the
weights of the sets containing it are scaled by the smallest power of two
that lifts their sum to at least one, and ``ceil(4 * log2 |X|)`` rounds each
add at most one of those sets with probability half its weight increase.
If the rounds all miss, the heaviest set is added so the element is always
covered on return.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import FrequencyBoundError, RegenError, UncoverableElementError

__all__ = ["SetCoverState", "osc_init", "osc_present", "MAX_DOUBLINGS"]

MAX_DOUBLINGS = 64


@dataclass
class SetCoverState:
    frequency_bound: int
    universe_size_bound: int
    rng: np.random.Generator
    set_weights: dict = field(default_factory=dict)
    cover: set = field(default_factory=set)
    fallbacks: int = 0

    @property
    def rounds_per_element(self) -> int:
        return math.ceil(4 * math.log2(self.universe_size_bound))

    def weight(self, set_id: Hashable) -> float:
        # sets not listed up front are materialized at their initial weight
        return self.set_weights.get(set_id, 1.0 / self.frequency_bound)

    def present(self, element_sets: Sequence[Hashable]) -> set:
        return osc_present(self, element_sets)


def osc_init(set_ids: Iterable[Hashable], frequency_bound: int,
             universe_size_bound: int, seed=None) -> SetCoverState:
    if frequency_bound < 1:
        raise ValueError("frequency bound f must be at least 1")
    if universe_size_bound < 2:
        raise ValueError("universe size bound must be at least 2")
    w0 = 1.0 / frequency_bound
    return SetCoverState(
        frequency_bound=frequency_bound,
        universe_size_bound=universe_size_bound,
        rng=np.random.default_rng(seed),
        set_weights={s: w0 for s in set_ids},
    )


def osc_present(state: SetCoverState, element_sets: Sequence[Hashable]) -> set:
    """Cover one element; return the sets newly added to the cover."""
    sets = list(dict.fromkeys(element_sets))
    if not sets:
        raise UncoverableElementError("element belongs to no set")
    if len(sets) > state.frequency_bound:
        raise FrequencyBoundError(
            f"element lies in {len(sets)} sets, bound is {state.frequency_bound}")
    if any(s in state.cover for s in sets):
        return set()

    total = sum(state.weight(s) for s in sets)
    q = 0
    while (2 ** q) * total < 1:
        q += 1
        if q > MAX_DOUBLINGS:
            raise RegenError("weight doubling exceeded its cap; weights underflowed")
    factor = 2 ** q
    deltas = []
    for s in sets:
        w = state.weight(s)
        delta = factor * w - w
        state.set_weights[s] = w + delta
        deltas.append(delta)

    added = set()
    # one uniform draw per round picks at most one set, set j with prob delta_j / 2
    thresholds = np.cumsum(np.asarray(deltas) / 2.0)
    for u in state.rng.random(state.rounds_per_element):
        j = int(np.searchsorted(thresholds, u, side="right"))
        if j < len(sets):
            added.add(sets[j])

    if not added:
        heaviest = max(sets, key=lambda s: state.set_weights[s])
        added.add(heaviest)
        state.fallbacks += 1
    added -= state.cover
    state.cover |= added
    return added
