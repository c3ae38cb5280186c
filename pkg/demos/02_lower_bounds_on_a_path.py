"""Why no online algorithm beats ratio 2 (deterministic) or 3/2 (randomized).

The adaptive adversary looks at where the algorithm put its regenerator for
the first lightpath and sends a second one it cannot reuse. The fixed
two-instance distribution does the same against randomized algorithms.
"""

from regenplace.adversaries import adv_rlp_det_lb2, adv_rlp_yao
from regenplace.rlp_path import GridState, LazyGreedyRLP

for d in (2, 4, 6):
    for name, make in [("grid", lambda t, d=d: GridState(d, 0, t)),
                       ("lazy-middle", lambda t, d=d: LazyGreedyRLP(d, "middle", t))]:
        t = adv_rlp_det_lb2(make, d)
        reqs = [f"{p.nodes[0]}..{p.nodes[-1]}" for p in t.requests]
        print(f"d={d} {name:12s} requests {reqs} online {t.online} offline {t.offline} ratio {t.ratio}")

dist = adv_rlp_yao(4)
print("\ntwo equally likely inputs, d=4:")
for branch in dist.branches:
    print("  ", [f"{p.nodes[0]}..{p.nodes[-1]}" for p in branch])
print("optimum per input:", dist.optima())
for offset in range(0, 5):
    cost = dist.expected_cost(lambda t, o=offset: GridState(4, o, t))
    print(f"grid offset {offset}: expected cost {cost}")
