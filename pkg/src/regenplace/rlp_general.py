"""Online regenerator location on arbitrary topologies via online set cover.

Each node is a set; each run of ``d`` consecutive internal vertices of a
presented lightpath is an element contained in the sets of its nodes. A
lightpath is d-satisfied exactly when every such run holds an open node, so
covering the elements online yields a feasible assignment whose cost equals
the cover size.
"""

from __future__ import annotations

from typing import NamedTuple

from .model import Lightpath, Topology, internal_windows
from .rlp_path import OnlineRLP
from .setcover import SetCoverState, osc_init

__all__ = [
    "canonical",
    "subpaths_of_length_d",
    "satisfaction_elements",
    "PathCount",
    "count_length_d_paths",
    "ReductionState",
    "rlp_general_present",
    "DEFAULT_DFS_CAP",
]

DEFAULT_DFS_CAP = 10**6


def canonical(seq) -> tuple:
    """Orientation-free form of a node sequence."""
    seq = tuple(seq)
    rev = seq[::-1]
    return seq if seq <= rev else rev


def _dedupe(items) -> list[tuple]:
    return list(dict.fromkeys(canonical(w) for w in items))


def subpaths_of_length_d(path: Lightpath, d: int) -> list[tuple]:
    """All subpaths with exactly ``d`` edges, canonicalized, left to right."""
    nodes = path.nodes
    if len(nodes) - 1 < d:
        return []
    return _dedupe(nodes[i:i + d + 1] for i in range(len(nodes) - d))


def satisfaction_elements(path: Lightpath, d: int) -> list[tuple]:
    """Runs of ``d`` consecutive internal vertices, canonicalized, left to right.

    These are the elements actually presented to the set cover: hitting each
    of them is equivalent to d-satisfying ``path``.
    """
    return _dedupe(internal_windows(path, d))


class PathCount(NamedTuple):
    count: int
    exact: bool


def count_length_d_paths(topology: Topology, d: int,
                         cap: int = DEFAULT_DFS_CAP) -> PathCount:
    """Number of simple paths with ``d`` edges, up to orientation.

    Exact by DFS while the count stays within ``cap``; past it a degree-based
    upper bound is returned with ``exact=False``.
    """
    n = topology.node_count
    if d < 0:
        raise ValueError("d must be non-negative")
    if d == 0:
        return PathCount(n, True)
    if topology.is_path:
        return PathCount(max(0, n - d), True)

    adj = topology.adjacency
    limit = 2 * cap
    directed = 0

    def extend(v, depth, seen):
        nonlocal directed
        if depth == d:
            directed += 1
            return directed <= limit
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                ok = extend(w, depth + 1, seen)
                seen.discard(w)
                if not ok:
                    return False
        return True

    for start in range(n):
        if not extend(start, 0, {start}):
            deg = max((len(ns) for ns in adj.values()), default=0)
            bound = n * deg * max(deg - 1, 1) ** (d - 1) // 2
            return PathCount(max(bound, cap), False)
    return PathCount(directed // 2, True)


class ReductionState(OnlineRLP):
    """Online RLP on any topology, driven by :class:`SetCoverState`.

    ``universe_size_bound`` defaults to the number of simple paths with
    ``d - 1`` edges (the possible elements), floored at 2.
    """

    name = "setcover"

    def __init__(self, topology: Topology, d: int, seed=None,
                 universe_size_bound: int | None = None, dfs_cap: int = DEFAULT_DFS_CAP):
        if d < 2:
            raise ValueError("the set-cover reduction needs d >= 2")
        super().__init__(d, topology)
        if universe_size_bound is None:
            universe_size_bound = count_length_d_paths(topology, d - 1, dfs_cap).count
        self.osc: SetCoverState = osc_init(range(topology.node_count), d + 1,
                                           max(2, universe_size_bound), seed)
        self.elements_presented: list[tuple] = []

    def choose(self, path: Lightpath) -> set[int]:
        new: set[int] = set()
        for element in satisfaction_elements(path, self.d):
            self.elements_presented.append(element)
            new |= self.osc.present(element)
        return new


def rlp_general_present(state: ReductionState, path: Lightpath) -> set[int]:
    return state.present(path)
