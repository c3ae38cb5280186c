"""Regenerator placement on arbitrary graphs through online set cover.

Every run of d internal vertices of a lightpath must hold a regenerator, so
each run is an element and each node is a set. The second half goes the
other way: a set-cover instance becomes a placement instance with the same
optimum.
"""

import networkx as nx

from regenplace import Lightpath, Topology
from regenplace.adversaries import build_rlp_from_setcover
from regenplace.oracles import brute_force_set_cover, opt_rlp_general
from regenplace.rlp_general import ReductionState

g = nx.petersen_graph()
topo = Topology.general(g.number_of_nodes(), g.edges())
routes = [[0, 1, 2, 3, 4], [4, 3, 8, 6, 1], [5, 0, 1, 6, 9], [2, 7, 9, 4, 3]]
paths = [Lightpath(i, tuple(r)) for i, r in enumerate(routes)]

alg = ReductionState(topo, d=2, seed=1)
for p in paths:
    opened = alg.present(p)
    print(f"lightpath {p.nodes}: opened {sorted(opened)}")
print(f"online cost {alg.cost()}, offline {opt_rlp_general(topo, paths, 2).objective}")

sets = {"A": {1, 2, 3}, "B": {3, 4}, "C": {4, 5}, "D": {1, 5}}
built = build_rlp_from_setcover(range(1, 6), sets)
inst = built.instance
res = opt_rlp_general(inst.topology, inst.paths, inst.d)
print(f"\nset cover optimum {brute_force_set_cover(range(1, 6), sets)}, "
      f"placement optimum {res.objective}, cover from placement {sorted(built.normalize(res.witness))}")
