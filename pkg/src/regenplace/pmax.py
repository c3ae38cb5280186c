"""Greedy online path maximization on a path topology with d=2, k=1.

With d=2 a lightpath is satisfied exactly when its own regenerators form a
vertex cover of its *trimmed* edges (all edges except the first and the
last). A new lightpath is rejected if two adjacent internal nodes are already
occupied; otherwise a left-to-right sweep jumps two nodes when the target is
free and one node when it is not, placing a regenerator at every stop.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidInstanceError, InvariantViolation
from .model import Lightpath, RegeneratorAssignment, Topology

__all__ = ["Decision", "PmaxState", "pmax_present", "pmax_counts", "trimmed_edges",
           "VARIANTS"]

VARIANTS = ("sweep", "two-start")


@dataclass(frozen=True)
class Decision:
    path_id: int
    satisfied: bool
    placements: frozenset = frozenset()


def trimmed_edges(path: Lightpath) -> list[tuple[int, int]]:
    inner = path.internal
    return list(zip(inner, inner[1:]))


def _span(path: Lightpath) -> tuple[int, int]:
    lo, hi = path.span
    if sorted(path.nodes) != list(range(lo, hi + 1)):
        raise InvalidInstanceError(f"lightpath {path.id} is not a run of consecutive nodes")
    return lo, hi


@dataclass
class PmaxState:
    topology: Topology | None = None
    variant: str = "sweep"
    d: int = 2
    k: int = 1
    assignment: RegeneratorAssignment = field(init=False)
    satisfied: list = field(default_factory=list)
    unsatisfied: list = field(default_factory=list)
    decisions: list = field(default_factory=list)

    def __post_init__(self):
        if self.d != 2 or self.k != 1:
            raise InvalidInstanceError("path maximization is implemented for d=2, k=1 only")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.topology is not None and not self.topology.is_path:
            raise InvalidInstanceError("path maximization needs a path topology")
        self.assignment = RegeneratorAssignment(node_cap=1)

    @property
    def name(self) -> str:
        return "pmax" if self.variant == "sweep" else "pmax-two-start"

    def _sweep(self, lo: int, hi: int, first: int | None = None) -> list[int]:
        occupied = self.assignment.occupied
        placed = [] if first is None else [first]
        mine = set(placed)
        last = lo if first is None else first

        def uncovered():
            return any(a not in mine and a + 1 not in mine for a in range(lo + 1, hi - 1))

        while uncovered():
            last = last + 2 if not occupied(last + 2) else last + 1
            if not lo < last < hi or occupied(last):
                raise InvariantViolation(
                    f"sweep on [{lo}, {hi}] reached unusable node {last}")
            placed.append(last)
            mine.add(last)
        return placed

    def present(self, path: Lightpath) -> Decision:
        if self.topology is not None:
            self.topology.check_path(path.nodes)
        lo, hi = _span(path)
        occupied = self.assignment.occupied
        if any(occupied(a) and occupied(a + 1) for a in range(lo + 1, hi - 1)):
            decision = Decision(path.id, False)
            self.unsatisfied.append(path.id)
            self.decisions.append(decision)
            return decision

        chosen = self._sweep(lo, hi)
        if self.variant == "two-start" and chosen and chosen[0] == lo + 2 and not occupied(lo + 1):
            alt = self._sweep(lo, hi, first=lo + 1)
            if len(alt) < len(chosen):
                chosen = alt
        for v in chosen:
            self.assignment.place(v, path)
        decision = Decision(path.id, True, frozenset(chosen))
        self.satisfied.append(path.id)
        self.decisions.append(decision)
        return decision


def pmax_present(state: PmaxState, path: Lightpath) -> Decision:
    return state.present(path)


def pmax_counts(state: PmaxState) -> tuple[int, int]:
    """``(|S|, |U|)``: satisfied and rejected lightpath counts so far."""
    return len(state.satisfied), len(state.unsatisfied)
