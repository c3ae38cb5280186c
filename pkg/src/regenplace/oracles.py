"""Exact offline optima used as ground truth for competitive ratios.

* ``opt_rlp_path``: windows of ``d`` consecutive internal vertices are
  integer intervals on a path topology, so the earliest-right-endpoint greedy
  stabs them optimally.
* ``opt_rlp_general``: minimum hitting set of the same windows on any graph,
  by branch and bound.
* ``opt_pmax`` / ``is_feasible_pmax``: d=2, k=1 on a path. Feasibility of a
  fixed set of lightpaths is decided by a left-to-right search over which
  lightpath owns each node; the maximum is a backtracking search over subsets.

The ``brute_force_*`` and ``*_2sat`` functions are independent slow routes
kept for cross-checking.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .errors import InvalidInstanceError, OracleLimitError
from .model import Lightpath, Topology, internal_windows, satisfied_by_nodes
from .rlp_general import satisfaction_elements

__all__ = [
    "Method",
    "OracleResult",
    "opt_rlp_path",
    "opt_rlp_general",
    "min_hitting_set",
    "brute_force_rlp",
    "brute_force_set_cover",
    "opt_pmax",
    "is_feasible_pmax",
    "pmax_owner_assignment",
    "feasible_pmax_2sat",
    "brute_force_pmax",
    "validate_pmax_witness",
]

DEFAULT_MAX_ELEMENTS = 10**4
DEFAULT_MAX_CANDIDATES = 30
DEFAULT_MAX_PMAX_PATHS = 14


class Method(enum.Enum):
    INTERVAL_STABBING = "interval-stabbing"
    EXACT_SET_COVER = "exact-set-cover"
    GREEDY = "greedy"
    BACKTRACKING = "backtracking"
    BRUTE_FORCE = "brute-force"


@dataclass(frozen=True)
class OracleResult:
    objective: int
    witness: object
    method: Method
    optimal: bool = True

    def to_dict(self) -> dict:
        w = self.witness
        if isinstance(w, PmaxWitness):
            w = {"paths": sorted(w.paths), "owners": {str(k): v for k, v in sorted(w.owners.items())}}
        else:
            w = sorted(w)
        return {"objective": self.objective, "witness": w,
                "method": self.method.value, "optimal": self.optimal}


# ---------------------------------------------------------------------------
# RLP on a path


def _intervals(paths: Iterable[Lightpath], d: int) -> list[tuple[int, int]]:
    out = set()
    for p in paths:
        for w in internal_windows(p, d):
            out.add((min(w), max(w)))
    return sorted(out, key=lambda iv: (iv[1], iv[0]))


def opt_rlp_path(paths: Sequence[Lightpath], d: int) -> OracleResult:
    """Minimum number of locations d-satisfying ``paths`` on a path topology."""
    chosen: list[int] = []
    for lo, hi in _intervals(paths, d):
        if not chosen or chosen[-1] < lo:
            chosen.append(hi)
    return OracleResult(len(chosen), frozenset(chosen), Method.INTERVAL_STABBING)


def brute_force_rlp(paths: Sequence[Lightpath], d: int, max_nodes: int = 20) -> OracleResult:
    """Smallest node subset d-satisfying every path, by enumeration."""
    candidates = sorted({v for p in paths for v in p.internal})
    if len(candidates) > max_nodes:
        raise OracleLimitError(f"{len(candidates)} candidate nodes exceed brute-force limit {max_nodes}")
    for size in range(len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            chosen = frozenset(combo)
            if all(satisfied_by_nodes(p, chosen, d) for p in paths):
                return OracleResult(size, chosen, Method.BRUTE_FORCE)
    raise AssertionError("the full candidate set always satisfies")


# ---------------------------------------------------------------------------
# minimum hitting set (set cover seen from the element side)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _greedy_hit(masks: list[int], ncand: int) -> int:
    chosen = 0
    rem = list(masks)
    while rem:
        best = max(range(ncand), key=lambda c: (sum(1 for m in rem if m >> c & 1), -c))
        chosen |= 1 << best
        rem = [m for m in rem if not m & chosen]
    return chosen


def _reduce(elements: list[frozenset]) -> tuple[list[frozenset], list]:
    """Drop dominated elements and dominated candidates."""
    elements = sorted(set(elements), key=len)
    kept: list[frozenset] = []
    for e in elements:
        # an element whose candidates include another element's is hit for free
        if not any(k <= e for k in kept):
            kept.append(e)
    hits: dict = {}
    for i, e in enumerate(kept):
        for c in e:
            hits.setdefault(c, set()).add(i)
    order = sorted(hits, key=lambda c: (-len(hits[c]), c))
    survivors = []
    for c in order:
        if not any(hits[c] <= hits[s] for s in survivors):
            survivors.append(c)
    alive = set(survivors)
    kept = [frozenset(c for c in e if c in alive) for e in kept]
    return kept, sorted(survivors)


def min_hitting_set(elements: Iterable[Iterable], max_elements: int = DEFAULT_MAX_ELEMENTS,
                    max_candidates: int = DEFAULT_MAX_CANDIDATES) -> tuple[frozenset, bool]:
    """Smallest candidate set meeting every element.

    Returns ``(chosen, optimal)``. Beyond the size limits the greedy answer
    comes back with ``optimal=False``.
    """
    elements = [frozenset(e) for e in elements]
    if any(not e for e in elements):
        raise ValueError("an empty element cannot be hit")
    if not elements:
        return frozenset(), True
    reduced, cands = _reduce(elements)
    index = {c: i for i, c in enumerate(cands)}
    masks = [sum(1 << index[c] for c in e) for e in reduced]
    greedy = _greedy_hit(masks, len(cands))
    if len(elements) > max_elements or len(cands) > max_candidates:
        return frozenset(cands[i] for i in range(len(cands)) if greedy >> i & 1), False

    best = [greedy, _popcount(greedy)]

    def packing_bound(rem):
        used, lb = 0, 0
        for m in sorted(rem, key=_popcount):
            if not m & used:
                used |= m
                lb += 1
        return lb

    def search(chosen, count, rem):
        if not rem:
            if count < best[1]:
                best[0], best[1] = chosen, count
            return
        if count + packing_bound(rem) >= best[1]:
            return
        pivot = min(rem, key=_popcount)
        bits = [c for c in range(len(cands)) if pivot >> c & 1]
        bits.sort(key=lambda c: -sum(1 for m in rem if m >> c & 1))
        banned = 0
        for c in bits:
            sub = []
            dead = False
            for m in rem:
                if m >> c & 1:
                    continue
                m &= ~banned
                if not m:
                    dead = True
                    break
                sub.append(m)
            if not dead:
                search(chosen | 1 << c, count + 1, sub)
            banned |= 1 << c

    search(0, 0, masks)
    return frozenset(cands[i] for i in range(len(cands)) if best[0] >> i & 1), True


def brute_force_set_cover(universe: Iterable, sets: dict) -> int:
    """Minimum number of sets from ``sets`` covering ``universe``, by enumeration."""
    universe = set(universe)
    names = sorted(sets)
    for size in range(len(names) + 1):
        for combo in itertools.combinations(names, size):
            if universe <= set().union(*(sets[s] for s in combo)):
                return size
    raise ValueError("the sets do not cover the universe")


def opt_rlp_general(topology: Topology, paths: Sequence[Lightpath], d: int,
                    max_elements: int = DEFAULT_MAX_ELEMENTS,
                    max_candidates: int = DEFAULT_MAX_CANDIDATES) -> OracleResult:
    """Minimum number of locations d-satisfying ``paths`` on any topology."""
    for p in paths:
        topology.check_path(p.nodes)
    elements = {e for p in paths for e in satisfaction_elements(p, d)}
    chosen, optimal = min_hitting_set(elements, max_elements, max_candidates)
    if not all(satisfied_by_nodes(p, chosen, d) for p in paths):
        raise AssertionError("hitting set witness fails to satisfy a lightpath")
    method = Method.EXACT_SET_COVER if optimal else Method.GREEDY
    return OracleResult(len(chosen), chosen, method, optimal)


# ---------------------------------------------------------------------------
# PMAX, d=2, k=1, path topology


@dataclass(frozen=True)
class PmaxWitness:
    paths: frozenset
    owners: dict


def _trimmed(path: Lightpath) -> list[tuple[int, int]]:
    inner = sorted(path.internal)
    return list(zip(inner, inner[1:]))


def pmax_owner_assignment(paths: Sequence[Lightpath]) -> dict | None:
    """Node -> lightpath id assignment 2-satisfying every path, or None.

    Nodes are scanned left to right keeping only the owner of the previous
    node; a trimmed edge ``(v-1, v)`` of lightpath P is served iff one of its
    two nodes is owned by P.
    """
    needs: dict[int, list[int]] = {}
    for p in paths:
        for u, v in _trimmed(p):
            needs.setdefault(v, []).append(p.id)
    if any(len(ids) > 2 for ids in needs.values()):
        return None
    if not needs:
        return {}
    touching: dict[int, set] = {}
    for p in paths:
        for u, v in _trimmed(p):
            touching.setdefault(u, set()).add(p.id)
            touching.setdefault(v, set()).add(p.id)
    lo, hi = min(touching), max(touching)
    # layer maps owner-of-current-node -> back pointer (previous owner, previous layer key)
    layers: list[dict] = []
    prev_states = {None: None}
    for v in range(lo, hi + 1):
        options = [None] + sorted(touching.get(v, ()))
        required = needs.get(v, [])
        cur: dict = {}
        for o in options:
            for p in prev_states:
                if all(r in (p, o) for r in required):
                    cur[o] = p
                    break
        if not cur:
            return None
        layers.append(cur)
        prev_states = cur
    owners = {}
    o = next(iter(prev_states))
    for v, layer in zip(range(hi, lo - 1, -1), reversed(layers)):
        if o is not None:
            owners[v] = o
        o = layer[o]
    return owners


def validate_pmax_witness(paths: Sequence[Lightpath], owners: dict) -> bool:
    """Each node has one owner, owners are internal, and every path is 2-satisfied."""
    by_id = {p.id: p for p in paths}
    for v, pid in owners.items():
        if pid not in by_id or not by_id[pid].is_internal(v):
            return False
    for p in paths:
        for u, v in _trimmed(p):
            if owners.get(u) != p.id and owners.get(v) != p.id:
                return False
    return True


def is_feasible_pmax(paths: Sequence[Lightpath]) -> bool:
    _check_pmax_paths(paths)
    return pmax_owner_assignment(paths) is not None


def _check_pmax_paths(paths):
    ids = [p.id for p in paths]
    if len(set(ids)) != len(ids):
        raise InvalidInstanceError("lightpath ids must be unique")
    for p in paths:
        lo, hi = p.span
        if sorted(p.nodes) != list(range(lo, hi + 1)):
            raise InvalidInstanceError(f"lightpath {p.id} is not laid on a path topology")


def opt_pmax(paths: Sequence[Lightpath], d: int = 2, k: int = 1,
             max_paths: int = DEFAULT_MAX_PMAX_PATHS) -> OracleResult:
    """Largest subset of ``paths`` that can be 2-satisfied together with k=1."""
    if d != 2 or k != 1:
        raise InvalidInstanceError("the PMAX oracle supports d=2, k=1 only")
    _check_pmax_paths(paths)
    paths = list(paths)
    full = pmax_owner_assignment(paths)
    if full is not None:
        return OracleResult(len(paths), PmaxWitness(frozenset(p.id for p in paths), full),
                            Method.BACKTRACKING)
    if len(paths) > max_paths:
        raise OracleLimitError(f"{len(paths)} lightpaths exceed the exact PMAX limit {max_paths}")

    best: list = [0, frozenset(), {}]

    def search(i, chosen):
        if len(chosen) + (len(paths) - i) <= best[0]:
            return
        if i == len(paths):
            owners = pmax_owner_assignment(chosen)
            best[0], best[1], best[2] = len(chosen), frozenset(p.id for p in chosen), owners
            return
        with_p = chosen + [paths[i]]
        if pmax_owner_assignment(with_p) is not None:
            search(i + 1, with_p)
        search(i + 1, chosen)

    search(0, [])
    return OracleResult(best[0], PmaxWitness(best[1], best[2]), Method.BACKTRACKING)


def feasible_pmax_2sat(paths: Sequence[Lightpath]) -> bool:
    """Same question as :func:`is_feasible_pmax`, posed as 2-SAT.

    Variable ``(v, P)`` means P owns node v. Each trimmed edge of P needs one
    of its nodes owned by P; no node has two owners.
    """
    g = nx.DiGraph()

    def clause(a, b):
        # a or b  ==  (not a -> b) and (not b -> a)
        g.add_edge(_neg(a), b)
        g.add_edge(_neg(b), a)

    by_node: dict[int, list] = {}
    for p in paths:
        for v in p.internal:
            by_node.setdefault(v, []).append((v, p.id))
        for u, v in _trimmed(p):
            clause((True, (u, p.id)), (True, (v, p.id)))
    for lits in by_node.values():
        for a, b in itertools.combinations(lits, 2):
            clause((False, a), (False, b))
    for comp in nx.strongly_connected_components(g):
        if any((not sign, var) in comp for sign, var in comp):
            return False
    return True


def _neg(lit):
    sign, var = lit
    return (not sign, var)


def brute_force_pmax(paths: Sequence[Lightpath], max_paths: int = 16) -> int:
    """Largest 2-SAT-feasible subset size, trying every subset."""
    if len(paths) > max_paths:
        raise OracleLimitError(f"{len(paths)} lightpaths exceed brute-force limit {max_paths}")
    for size in range(len(paths), -1, -1):
        for combo in itertools.combinations(paths, size):
            if feasible_pmax_2sat(combo):
                return size
    return 0
