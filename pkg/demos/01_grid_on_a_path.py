"""Online regenerator placement on a line network.

Lightpaths arrive one at a time. The grid algorithm opens every grid node
internal to the new lightpath, so it never moves a regenerator and ends at
most twice the offline optimum.
"""

from regenplace import Lightpath, Topology
from regenplace.model import regions
from regenplace.oracles import opt_rlp_path
from regenplace.rlp_path import GridState, deterministic_init

d = 3
topo = Topology.path(20)
arrivals = [Lightpath(0, tuple(range(0, 9))),
            Lightpath(1, tuple(range(6, 15))),
            Lightpath(2, tuple(range(13, 20)))]

grid = deterministic_init(d, topo)
for p in arrivals:
    opened = grid.present(p)
    print(f"lightpath {p.id} over {p.nodes[0]}..{p.nodes[-1]}: opened {sorted(opened)}")

opt = opt_rlp_path(arrivals, d)
print(f"online locations {sorted(grid.locations)} (cost {grid.cost()})")
print(f"offline optimum {sorted(opt.witness)} (cost {opt.objective})")
print("regions:", [f"{r[0]}..{r[-1]}" for r in regions(arrivals, topo)])

# every offset of the shifted grid; the randomized algorithm picks one uniformly
costs = {}
for offset in range(1, d + 1):
    g = GridState(d, offset, topo)
    for p in arrivals:
        g.present(p)
    costs[offset] = g.cost()
print("cost by offset:", costs, "expected", sum(costs.values()) / d)
