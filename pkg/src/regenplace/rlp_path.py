"""Online regenerator location on path topologies (k unbounded).

Both algorithms place regenerators on a fixed residue class of node ids (the
*grid*) and open a grid node only when it is internal to a presented
lightpath. Offset 0 is the deterministic 2-competitive grid ``{d, 2d, ...}``;
offsets drawn uniformly from ``1..d`` give the randomized variant whose
expected ratio is at most ``2 - 1/d**2``.
"""

from __future__ import annotations

from collections import defaultdict

import numpy as np

from .errors import InvalidInstanceError
from .model import (Lightpath, RegeneratorAssignment, Topology, internal_windows,
                    satisfied_by_nodes)

__all__ = [
    "OnlineRLP",
    "GridState",
    "LazyGreedyRLP",
    "grid_present",
    "deterministic_init",
    "randomized_init",
]


class OnlineRLP:
    """Shared bookkeeping for online RLP algorithms with unbounded k.

    Subclasses implement :meth:`choose`, returning the nodes to open for a new
    path. Opened nodes serve every presented path they are internal to, so
    ``reg(v, P) == reg(v, P')`` holds for all paths through ``v`` and the cost
    depends on :attr:`locations` only.
    """

    name = "online-rlp"

    def __init__(self, d: int, topology: Topology | None = None):
        if d < 1:
            raise ValueError("d must be positive")
        self.d = d
        self.topology = topology
        self.assignment = RegeneratorAssignment(node_cap=None)
        self.paths: list[Lightpath] = []
        self._through: dict[int, list[Lightpath]] = defaultdict(list)
        self._open: set[int] = set()

    @property
    def locations(self) -> frozenset:
        return frozenset(self._open)

    def cost(self) -> int:
        return len(self._open)

    def choose(self, path: Lightpath) -> set[int]:
        raise NotImplementedError

    def present(self, path: Lightpath) -> set[int]:
        """Serve ``path`` and return the nodes opened for it."""
        if self.topology is not None:
            self.topology.check_path(path.nodes)
        self.paths.append(path)
        for v in path.internal:
            self._through[v].append(path)
            if v in self._open:
                self.assignment.place(v, path)
        new = {v for v in self.choose(path) if v not in self._open}
        for v in new:
            if not path.is_internal(v):
                raise InvalidInstanceError(f"{self.name} chose non-internal node {v}")
            self._open.add(v)
            for p in self._through[v]:
                self.assignment.place(v, p)
        return new


class GridState(OnlineRLP):
    """Grid placement on a path topology.

    ``offset == 0`` selects node ids ``j`` with ``j % d == 0``; an offset
    ``i in 1..d`` selects ``j >= i`` with ``j % d == i % d``.
    """

    def __init__(self, d: int, offset: int = 0, topology: Topology | None = None):
        if d < 2:
            raise ValueError("the grid algorithms need d >= 2")
        if not 0 <= offset <= d:
            raise ValueError(f"offset must lie in 0..{d}")
        if topology is not None and not topology.is_path:
            raise InvalidInstanceError("grid placement needs a path topology")
        super().__init__(d, topology)
        self.offset = offset
        self.name = "grid" if offset == 0 else f"grid+{offset}"

    def in_grid(self, j: int) -> bool:
        if self.offset == 0:
            return j % self.d == 0
        return j >= self.offset and (j - self.offset) % self.d == 0

    def choose(self, path: Lightpath) -> set[int]:
        # a path with at most d edges is satisfied without regenerators
        if len(path.internal) < self.d:
            return set()
        return {v for v in path.internal if self.in_grid(v)}


def grid_present(state: GridState, path: Lightpath) -> set[int]:
    return state.present(path)


def deterministic_init(d: int, topology: Topology | None = None) -> GridState:
    return GridState(d, 0, topology)


def randomized_init(d: int, seed=None, topology: Topology | None = None) -> GridState:
    """Grid with an offset drawn uniformly from ``1..d``."""
    if d < 2:
        raise ValueError("the grid algorithms need d >= 2")
    rng = np.random.default_rng(seed)
    return GridState(d, int(rng.integers(1, d + 1)), topology)


class LazyGreedyRLP(OnlineRLP):
    """Opens one node per window left unhit, scanning windows in path order.

    ``pick`` chooses which node of the unhit window to open: ``"last"``,
    ``"first"`` or ``"middle"``. Works on any topology; used as a plug-in
    deterministic opponent for the lower-bound adversaries.
    """

    def __init__(self, d: int, pick: str = "last", topology: Topology | None = None):
        if pick not in ("last", "first", "middle"):
            raise ValueError(f"unknown pick rule {pick!r}")
        super().__init__(d, topology)
        self.pick = pick
        self.name = f"lazy-{pick}"

    def choose(self, path: Lightpath) -> set[int]:
        chosen = set(self._open)
        for window in internal_windows(path, self.d):
            if chosen.isdisjoint(window):
                idx = {"last": -1, "first": 0, "middle": len(window) // 2}[self.pick]
                chosen.add(window[idx])
        assert satisfied_by_nodes(path, chosen, self.d)
        return chosen - self._open
