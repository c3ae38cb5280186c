"""Online set cover by weight doubling and randomized rounding.

Each arriving element doubles the weights of its sets until they sum to at
least one, then samples sets in proportion to the weight increase.
"""

import numpy as np

from regenplace.oracles import min_hitting_set
from regenplace.setcover import osc_init

rng = np.random.default_rng(3)
m, f = 12, 3
elements = [sorted(int(s) for s in rng.choice(m, size=int(rng.integers(1, f + 1)), replace=False))
            for _ in range(30)]

state = osc_init(range(m), frequency_bound=f, universe_size_bound=len(elements), seed=3)
print(f"{state.rounds_per_element} sampling rounds per element")
for i, sets in enumerate(elements[:8]):
    added = state.present(sets)
    print(f"element {i} in sets {sets}: added {sorted(added)}")
for sets in elements[8:]:
    state.present(sets)

opt, _ = min_hitting_set(elements)
print(f"online cover {sorted(state.cover)} ({len(state.cover)} sets, {state.fallbacks} fallbacks)")
print(f"offline optimum {sorted(opt)} ({len(opt)} sets)")
