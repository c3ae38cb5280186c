"""One regenerator per node, d=2: accept as many lightpaths as possible.

The online rule rejects a lightpath only when two adjacent internal nodes are
already taken; otherwise it sweeps left to right placing regenerators two
apart. The adversaries show the ratio 3 is nearly tight on feasible inputs
and grows with sqrt(l) otherwise.
"""

from regenplace import Lightpath
from regenplace.adversaries import adv_pmax_feasible, adv_pmax_infeasible
from regenplace.oracles import opt_pmax
from regenplace.pmax import PmaxState, pmax_counts

state = PmaxState()
paths = [Lightpath(i, (0, 1, 2, 3)) for i in range(3)] + [Lightpath(3, tuple(range(2, 9)))]
for p in paths:
    dec = state.present(p)
    print(f"lightpath {p.id}: {'accepted at ' + str(sorted(dec.placements)) if dec.satisfied else 'rejected'}")
print("satisfied/rejected:", pmax_counts(state), "offline:", opt_pmax(paths).objective)

for n in (1, 5, 20):
    t = adv_pmax_feasible(n, lambda topo: PmaxState(topo))
    print(f"feasible adversary n={n}: online {t.online}, offline {t.offline}, ratio {t.ratio} = {float(t.ratio):.3f}")
for l in (16, 64, 144):
    t = adv_pmax_infeasible(l, lambda topo: PmaxState(topo))
    print(f"infeasible adversary l={l}: online {t.online}, offline {t.offline}, ratio {float(t.ratio):.3f}")
