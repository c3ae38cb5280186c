"""Executable lower-bound constructions.

Each adversary builds its topology, hands requests one at a time to an online
algorithm and decides the next request from the algorithm's *public*
assignment only (``locations`` for RLP algorithms, ``assignment.has`` /
``assignment.occupied`` for PMAX ones). Algorithms are passed either as
ready instances or as factories taking the topology.

PMAX constructions describe short paths by their internal vertices; the
lightpath actually emitted adds one endpoint on each side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import AdversaryError, InvalidInstanceError
from .model import Instance, Lightpath, Topology, is_d_satisfied, satisfied_by_nodes
from .oracles import (DEFAULT_MAX_PMAX_PATHS, feasible_pmax_2sat, is_feasible_pmax,
                      opt_pmax, opt_rlp_path)

__all__ = [
    "AdversaryTrace",
    "adv_rlp_det_lb2",
    "YaoDistribution",
    "adv_rlp_yao",
    "SetCoverRLP",
    "build_rlp_from_setcover",
    "adv_pmax_infeasible",
    "adv_pmax_feasible",
]

INF = math.inf


@dataclass
class AdversaryTrace:
    construction: str
    param: int
    algorithm: str
    topology: Topology
    d: int
    k: int | None
    requests: list = field(default_factory=list)
    decisions: list = field(default_factory=list)
    online: int = 0
    offline: int = 0
    offline_closed_form: int | None = None
    offline_oracle: int | None = None
    ratio: Fraction | float = Fraction(0)
    notes: dict = field(default_factory=dict)

    def instance(self) -> Instance:
        return Instance(self.topology, self.d, self.k, list(self.requests))

    def to_dict(self) -> dict:
        ratio = "inf" if self.ratio == INF else str(self.ratio)
        return {
            "construction": self.construction,
            "param": self.param,
            "algorithm": self.algorithm,
            "d": self.d,
            "k": "inf" if self.k is None else self.k,
            "requests": [list(p.nodes) for p in self.requests],
            "decisions": self.decisions,
            "online": self.online,
            "offline": self.offline,
            "offline_closed_form": self.offline_closed_form,
            "offline_oracle": self.offline_oracle,
            "ratio": ratio,
            "ratio_float": float(self.ratio),
            "notes": self.notes,
        }


def _make(algorithm, topology):
    if hasattr(algorithm, "present"):
        return algorithm
    return algorithm(topology)


def _ratio(num: int, den: int):
    return INF if den == 0 else Fraction(num, den)


# ---------------------------------------------------------------------------
# RLP on a path


def adv_rlp_det_lb2(algorithm, d: int) -> AdversaryTrace:
    """Force any deterministic RLP algorithm to two locations where one suffices."""
    if d < 2:
        raise ValueError("the construction needs d >= 2")
    topo = Topology.path(3 * d + 4)
    alg = _make(algorithm, topo)
    a = d + 1
    p0 = Lightpath(0, tuple(range(a, a + d + 2)))
    trace = AdversaryTrace("rlp-det-lb2", d, getattr(alg, "name", "algorithm"), topo, d, None)

    opened = alg.present(p0)
    trace.requests.append(p0)
    trace.decisions.append(sorted(opened))
    if not is_d_satisfied(p0, alg.assignment, d):
        raise AdversaryError(f"{trace.algorithm} left the first lightpath unsatisfied")

    locs = alg.locations
    if len(locs) == 1:
        (v,) = locs
        left, right = v - a, (a + d + 1) - v
        if left >= right:
            p1 = Lightpath(1, tuple(range(v, v - d - 2, -1)))
        else:
            p1 = Lightpath(1, tuple(range(v, v + d + 2)))
        opened = alg.present(p1)
        trace.requests.append(p1)
        trace.decisions.append(sorted(opened))
        if not is_d_satisfied(p1, alg.assignment, d):
            raise AdversaryError(f"{trace.algorithm} left the second lightpath unsatisfied")
        lo = min(min(p0.nodes), min(p1.nodes))
        hi = max(max(p0.nodes), max(p1.nodes))
        trace.notes["union_center"] = (lo + hi) // 2

    trace.online = len(alg.locations)
    trace.offline_closed_form = 1
    oracle = opt_rlp_path(trace.requests, d)
    trace.offline_oracle = oracle.objective
    if oracle.objective != 1:
        raise AssertionError(f"offline optimum {oracle.objective} differs from the closed form 1")
    trace.offline = oracle.objective
    trace.ratio = _ratio(trace.online, trace.offline)
    return trace


@dataclass
class YaoDistribution:
    """Two equally likely two-lightpath inputs, each with optimum 1."""

    d: int
    topology: Topology
    branches: list

    def expected_cost(self, factory: Callable) -> Fraction:
        """Exact expected number of locations of a deterministic algorithm."""
        total = Fraction(0)
        for paths in self.branches:
            alg = factory(self.topology)
            for p in paths:
                alg.present(p)
                if not satisfied_by_nodes(p, alg.locations, self.d):
                    raise AdversaryError(f"lightpath {p.id} left unsatisfied")
            total += Fraction(len(alg.locations), len(self.branches))
        return total

    def optima(self) -> list[int]:
        return [opt_rlp_path(paths, self.d).objective for paths in self.branches]


def adv_rlp_yao(d: int) -> YaoDistribution:
    if d < 2:
        raise ValueError("the construction needs d >= 2")
    a = d
    topo = Topology.path(3 * d + 1)
    p1 = Lightpath(0, tuple(range(a, a + d + 2)))
    # each second lightpath shares exactly two edges (one internal node) with p1
    p21 = Lightpath(1, tuple(range(a - d + 1, a + 3)))
    p22 = Lightpath(1, tuple(range(a + d - 1, a + 2 * d + 1)))
    return YaoDistribution(d, topo, [[p1, p21], [p1, p22]])


# ---------------------------------------------------------------------------
# set cover -> RLP on a general graph


@dataclass
class SetCoverRLP:
    instance: Instance
    set_node: dict
    element_path: dict
    elements: list
    sets: dict

    def normalize(self, locations) -> set:
        """Turn a feasible set of locations into a set cover of the arrived elements.

        Locations off the set nodes are dropped; a lightpath left uncovered
        gets the first set (in set order) containing its element.
        """
        node_set = {v: s for s, v in self.set_node.items()}
        cover = {node_set[v] for v in locations if v in node_set}
        for x, pid in self.element_path.items():
            if not any(x in self.sets[s] for s in cover):
                cover.add(next(s for s in self.sets if x in self.sets[s]))
        return cover


def build_rlp_from_setcover(elements: Sequence, sets: dict, arrival: Sequence | None = None) -> SetCoverRLP:
    """Lightpath per element through one node per set, d = number of sets.

    Lightpath i runs ``s_i, u_1, ..., u_m, t_i`` where ``u_j`` is the shared
    node of set j if the element belongs to it and a private node otherwise.
    """
    elements = list(elements)
    names = list(sets)
    m = len(names)
    if m < 2:
        raise ValueError("the construction needs at least two sets")
    sets = {s: frozenset(sets[s]) for s in names}
    for x in elements:
        if not any(x in sets[s] for s in names):
            raise InvalidInstanceError(f"element {x!r} is in no set; no cover exists")
    arrival = elements if arrival is None else list(arrival)

    set_node = {s: j for j, s in enumerate(names)}
    xi = {x: i for i, x in enumerate(elements)}
    base = m + 2 * len(elements)

    def route(x):
        i = xi[x]
        inner = [set_node[s] if x in sets[s] else base + i * m + j for j, s in enumerate(names)]
        return (m + 2 * i, *inner, m + 2 * i + 1)

    edges = set()
    for x in elements:
        r = route(x)
        edges.update(zip(r, r[1:]))
    topo = Topology.general(base + len(elements) * m, edges)
    paths = [Lightpath(pid, route(x)) for pid, x in enumerate(arrival)]
    instance = Instance(topo, m, None, paths)
    return SetCoverRLP(instance, set_node, {x: pid for pid, x in enumerate(arrival)},
                       elements, sets)


# ---------------------------------------------------------------------------
# PMAX on a path, d=2, k=1


def _around(*inner: int) -> tuple:
    return (inner[0] - 1, *inner, inner[-1] + 1)


class _PmaxRun:
    def __init__(self, alg, trace):
        self.alg = alg
        self.trace = trace

    def present(self, nodes) -> bool:
        p = Lightpath(len(self.trace.requests), tuple(nodes))
        decision = self.alg.present(p)
        self.trace.requests.append(p)
        self.trace.decisions.append(
            {"path": p.id, "satisfied": decision.satisfied, "placements": sorted(decision.placements)})
        return decision.satisfied

    def recount(self) -> int:
        """Satisfied count re-derived from the assignment, not from decisions."""
        asg = self.alg.assignment
        if any(c > 1 for c in asg.per_node_count.values()):
            raise AdversaryError("algorithm put two regenerators on one node")
        claimed = [d["path"] for d in self.trace.decisions if d["satisfied"]]
        for pid in claimed:
            if not is_d_satisfied(self.trace.requests[pid], asg, 2):
                raise AdversaryError(f"lightpath {pid} claimed satisfied but is not")
        return len(claimed)


def adv_pmax_infeasible(l: int, algorithm, oracle_limit: int = DEFAULT_MAX_PMAX_PATHS) -> AdversaryTrace:
    """Long lightpath, then sqrt(l) medium ones, then pairs inside every accepted medium."""
    r = math.isqrt(l)
    if r * r != l or l < 4:
        raise ValueError("l must be a perfect square >= 4")
    topo = Topology.path(l + 2)
    alg = _make(algorithm, topo)
    trace = AdversaryTrace("pmax-infeasible", l, getattr(alg, "name", "algorithm"), topo, 2, 1)
    run = _PmaxRun(alg, trace)

    if not run.present(range(0, l + 2)):
        trace.online, trace.offline, trace.offline_closed_form = 0, 1, 1
        trace.ratio = INF
        trace.notes["stop"] = "first lightpath rejected"
        return trace

    accepted = []
    for j in range(r):
        b = 1 + j * r
        if run.present(_around(*range(b, b + r))):
            accepted.append(b)
    x = len(accepted)
    trace.notes["x"] = x
    if x == 0:
        trace.notes["stop"] = "no medium lightpath accepted"
        closed = r
    else:
        for b in accepted:
            for t in range(r // 2):
                run.present(_around(b + 2 * t, b + 2 * t + 1))
        closed = r + x * (r // 2)

    trace.online = run.recount()
    trace.offline_closed_form = closed
    trace.offline = closed
    if len(trace.requests) <= oracle_limit:
        oracle = opt_pmax(trace.requests)
        trace.offline_oracle = oracle.objective
        if oracle.objective < closed:
            raise AssertionError("offline optimum below the construction's count")
        trace.offline = oracle.objective
    trace.ratio = _ratio(trace.offline, trace.online)
    return trace


def _two_disjoint_full_edges(occ, start, stop):
    full = [a for a in range(start, stop) if occ(a) and occ(a + 1)]
    for a in full:
        for c in full:
            if c >= a + 2:
                return a, c
    return None


def adv_pmax_feasible(n: int, algorithm, check_2sat_up_to: int = 3) -> AdversaryTrace:
    """Feasible instance on which any deterministic algorithm approaches ratio 3.

    The first lightpath has ``13n - 2`` trimmed edges, cut into ``n`` blocks of
    11 edges separated by two edges. Each block is attacked according to how
    the algorithm covered it for the first lightpath.
    """
    if n < 1:
        raise ValueError("n must be positive")
    topo = Topology.path(13 * n + 1)
    alg = _make(algorithm, topo)
    trace = AdversaryTrace("pmax-feasible", n, getattr(alg, "name", "algorithm"), topo, 2, 1)
    run = _PmaxRun(alg, trace)

    if not run.present(range(0, 13 * n + 1)):
        trace.online, trace.offline, trace.offline_closed_form = 0, 1, 1
        trace.ratio = INF
        trace.notes["stop"] = "first lightpath rejected"
        return trace
    first = trace.requests[0].id

    def occ(v):
        return alg.assignment.has(v, first)

    h = 0
    blocks = []
    for i in range(n):
        s = 13 * i + 1
        pair = _two_disjoint_full_edges(occ, s, s + 11)
        if pair is not None:
            a, c = pair
            run.present(_around(a, a + 1))
            run.present(_around(c, c + 1))
            blocks.append({"block": i, "case": "two-full-edges", "edges": [a, c]})
            trace.notes["stop"] = f"block {i} has two disjoint fully occupied edges"
            break
        v1 = next((v for v in range(s, s + 8)
                   if occ(v) and not occ(v + 1) and occ(v + 2) and not occ(v + 3) and occ(v + 4)),
                  None)
        if v1 is None:
            raise AdversaryError(f"block {i} matches neither case of the construction")
        escalated = run.present(_around(v1 + 1, v1 + 2, v1 + 3))
        if escalated:
            run.present(_around(v1, v1 + 1))
            run.present(_around(v1 + 3, v1 + 4))
            h += 1
        blocks.append({"block": i, "case": "alternating", "v1": v1, "escalated": escalated})

    trace.notes["h"] = h
    trace.notes["blocks"] = blocks
    trace.online = run.recount()
    total = len(trace.requests)
    if not is_feasible_pmax(trace.requests):
        raise AssertionError("emitted instance is infeasible")
    if n <= check_2sat_up_to and not feasible_pmax_2sat(trace.requests):
        raise AssertionError("2-SAT disagrees: emitted instance infeasible")
    trace.notes["feasible"] = True
    if "stop" not in trace.notes:
        trace.offline_closed_form = 1 + n + 2 * h
    trace.offline = total
    trace.offline_oracle = total
    trace.ratio = _ratio(total, trace.online)
    return trace
