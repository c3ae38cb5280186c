"""Topologies, lightpaths and regenerator assignments.

Node ids are the integers ``0 .. node_count - 1``. On a path topology the id
is also the position along the line, so grids and regions reduce to index
arithmetic.

A lightpath keeps the orientation it arrived with; only its internal vertices
(everything but the two endpoints) may host a regenerator serving it.
"""

from __future__ import annotations

import enum
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CapacityError, InvalidInstanceError

__all__ = [
    "TopologyKind",
    "Topology",
    "Lightpath",
    "RegeneratorAssignment",
    "Instance",
    "is_d_satisfied",
    "internal_windows",
    "regions",
    "cost",
    "region_opt_bound_holds",
    "load_instance",
    "dump_instance",
]


class TopologyKind(enum.Enum):
    PATH = "path"
    GENERAL = "general"


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Topology:
    node_count: int
    edges: frozenset
    kind: TopologyKind = TopologyKind.GENERAL

    def __post_init__(self):
        if self.node_count < 1:
            raise InvalidInstanceError("topology needs at least one node")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise InvalidInstanceError(f"self-loop at node {u}")
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise InvalidInstanceError(f"edge ({u}, {v}) references a missing node")
            normalized.add(_edge(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))
        if self.kind is TopologyKind.PATH:
            expected = {(i, i + 1) for i in range(self.node_count - 1)}
            if normalized != expected:
                raise InvalidInstanceError("a path topology must have exactly the edges (i, i+1)")

    @classmethod
    def path(cls, n: int) -> "Topology":
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)), TopologyKind.PATH)

    @classmethod
    def general(cls, n: int, edges: Iterable[Sequence[int]]) -> "Topology":
        return cls(n, frozenset(tuple(e) for e in edges), TopologyKind.GENERAL)

    @property
    def is_path(self) -> bool:
        return self.kind is TopologyKind.PATH

    @cached_property
    def adjacency(self) -> dict[int, frozenset]:
        adj: dict[int, set] = {v: set() for v in range(self.node_count)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def check_path(self, nodes: Sequence[int]) -> None:
        """Raise InvalidInstanceError unless ``nodes`` is a simple path here."""
        if len(nodes) < 2:
            raise InvalidInstanceError("a lightpath needs at least two nodes")
        if len(set(nodes)) != len(nodes):
            raise InvalidInstanceError(f"lightpath {list(nodes)} repeats a node")
        for u, v in zip(nodes, nodes[1:]):
            if not self.has_edge(u, v):
                raise InvalidInstanceError(f"lightpath uses missing edge ({u}, {v})")


@dataclass(frozen=True)
class Lightpath:
    id: int
    nodes: tuple

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(int(v) for v in self.nodes))

    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self.nodes) - 1

    @property
    def internal(self) -> tuple:
        return self.nodes[1:-1]

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.nodes[0], self.nodes[-1]

    def is_internal(self, v: int) -> bool:
        return v in self.internal

    @property
    def span(self) -> tuple[int, int]:
        """``(lo, hi)`` node ids of a path laid on a path topology."""
        return min(self.endpoints), max(self.endpoints)


class RegeneratorAssignment:
    """Monotone set of ``(node, path_id)`` placements.

    ``node_cap`` is the per-node limit k, ``None`` meaning unbounded.
    Placements can only be added; nothing is ever removed.
    """

    def __init__(self, node_cap: int | None = None):
        if node_cap is not None and node_cap < 1:
            raise ValueError("node_cap must be positive or None")
        self.node_cap = node_cap
        self._placements: set[tuple[int, int]] = set()
        self._per_node: Counter = Counter()

    def place(self, node: int, path: Lightpath) -> bool:
        """Put a regenerator for ``path`` at ``node``; False if already there."""
        if not path.is_internal(node):
            raise InvalidInstanceError(
                f"node {node} is not internal to lightpath {path.id}")
        key = (node, path.id)
        if key in self._placements:
            return False
        if self.node_cap is not None and self._per_node[node] >= self.node_cap:
            raise CapacityError(f"node {node} already holds {self.node_cap} regenerator(s)")
        self._placements.add(key)
        self._per_node[node] += 1
        return True

    def has(self, node: int, path_id: int) -> bool:
        return (node, path_id) in self._placements

    def count(self, node: int) -> int:
        return self._per_node[node]

    def occupied(self, node: int) -> bool:
        return self._per_node[node] > 0

    @property
    def placements(self) -> frozenset:
        return frozenset(self._placements)

    @property
    def per_node_count(self) -> dict[int, int]:
        return dict(self._per_node)

    @property
    def locations(self) -> frozenset:
        """R(reg): nodes holding at least one regenerator."""
        return frozenset(v for v, c in self._per_node.items() if c > 0)

    def cost(self) -> int:
        return len(self.locations)

    def nodes_for(self, path_id: int) -> frozenset:
        return frozenset(v for v, p in self._placements if p == path_id)

    def copy(self) -> "RegeneratorAssignment":
        other = RegeneratorAssignment(self.node_cap)
        other._placements = set(self._placements)
        other._per_node = Counter(self._per_node)
        return other

    def __len__(self):
        return len(self._placements)

    def __repr__(self):
        return f"RegeneratorAssignment(cost={self.cost()}, placements={len(self)})"


def internal_windows(path: Lightpath, d: int) -> list[tuple]:
    """Every run of ``d`` consecutive internal vertices, left to right."""
    inner = path.internal
    return [inner[i:i + d] for i in range(len(inner) - d + 1)]


def is_d_satisfied(path: Lightpath, assignment: RegeneratorAssignment, d: int) -> bool:
    """True iff no ``d`` consecutive internal vertices of ``path`` lack a regenerator for it."""
    if d < 1:
        raise ValueError("d must be positive")
    gap = 0
    for v in path.internal:
        if assignment.has(v, path.id):
            gap = 0
        else:
            gap += 1
            if gap >= d:
                return False
    return True


def satisfied_by_nodes(path: Lightpath, nodes, d: int) -> bool:
    """d-satisfaction when every node in ``nodes`` serves every path through it."""
    gap = 0
    for v in path.internal:
        if v in nodes:
            gap = 0
        else:
            gap += 1
            if gap >= d:
                return False
    return True


def regions(paths: Iterable[Lightpath], topology: Topology) -> list[tuple]:
    """Maximal runs of consecutive node ids in the union of internal vertices."""
    if not topology.is_path:
        raise InvalidInstanceError("regions are only defined on path topologies")
    union = sorted({v for p in paths for v in p.internal})
    out: list[list[int]] = []
    for v in union:
        if out and out[-1][-1] == v - 1:
            out[-1].append(v)
        else:
            out.append([v])
    return [tuple(run) for run in out]


def cost(assignment: RegeneratorAssignment) -> int:
    return assignment.cost()


def region_opt_bound_holds(region: Sequence[int], opt_count_in_region: int, d: int) -> bool:
    """Check ``|L| <= opt_L * (2d - 1)``, the spacing bound every feasible assignment obeys."""
    return len(region) <= opt_count_in_region * (2 * d - 1)


@dataclass
class Instance:
    """A topology, the parameters d and k, and lightpaths in arrival order."""

    topology: Topology
    d: int
    k: int | None
    paths: list = field(default_factory=list)

    def __post_init__(self):
        if self.d < 1:
            raise InvalidInstanceError("d must be positive")
        if self.k is not None and self.k < 1:
            raise InvalidInstanceError("k must be positive or unbounded")
        fixed = []
        for i, p in enumerate(self.paths):
            if not isinstance(p, Lightpath):
                p = Lightpath(i, tuple(p))
            self.topology.check_path(p.nodes)
            fixed.append(p)
        self.paths = fixed

    def to_dict(self) -> dict:
        topo = self.topology
        return {
            "topology": {
                "kind": topo.kind.value,
                "nodes": topo.node_count,
                "edges": [list(e) for e in sorted(topo.edges)],
            },
            "d": self.d,
            "k": "inf" if self.k is None else self.k,
            "paths": [list(p.nodes) for p in self.paths],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        try:
            t = data["topology"]
            kind = TopologyKind(t["kind"])
            n = int(t["nodes"])
            if kind is TopologyKind.PATH:
                topology = Topology.path(n)
                if "edges" in t and {_edge(*e) for e in t["edges"]} != set(topology.edges):
                    raise InvalidInstanceError("path topology edges do not match (i, i+1)")
            else:
                topology = Topology.general(n, t["edges"])
            k = data.get("k", "inf")
            if k == "inf" or (isinstance(k, float) and math.isinf(k)):
                k = None
            elif not isinstance(k, int):
                raise InvalidInstanceError(f"k must be an integer or 'inf', got {k!r}")
            d = data["d"]
            if not isinstance(d, int):
                raise InvalidInstanceError(f"d must be an integer, got {d!r}")
            paths = [Lightpath(i, tuple(p)) for i, p in enumerate(data["paths"])]
        except (KeyError, TypeError) as exc:
            raise InvalidInstanceError(f"malformed instance: {exc}") from exc
        return cls(topology, d, k, paths)


def load_instance(path) -> Instance:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInstanceError(f"{path}: {exc}") from exc
    return Instance.from_dict(data)


def dump_instance(instance: Instance, path=None) -> str:
    text = json.dumps(instance.to_dict(), sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
