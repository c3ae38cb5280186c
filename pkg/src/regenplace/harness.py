"""Instance generators, online replay with invariant checks, and ratio reports."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .errors import InvalidInstanceError, InvariantViolation, OracleLimitError
from .model import Instance, Lightpath, Topology, is_d_satisfied, load_instance
from .oracles import (DEFAULT_MAX_CANDIDATES, DEFAULT_MAX_ELEMENTS, DEFAULT_MAX_PMAX_PATHS,
                      is_feasible_pmax, opt_pmax, opt_rlp_general, opt_rlp_path)
from .pmax import PmaxState
from .rlp_general import ReductionState
from .rlp_path import GridState, LazyGreedyRLP, randomized_init

__all__ = [
    "RLP_ALGORITHMS",
    "PMAX_ALGORITHMS",
    "FAMILIES",
    "ExperimentConfig",
    "RatioReport",
    "make_algorithm",
    "replay",
    "oracle_objective",
    "random_rlp_path_instance",
    "random_rlp_general_instance",
    "random_pmax_instance",
    "generate",
    "run_replay",
    "run_random_sweep",
    "CSV_COLUMNS",
]

RLP_ALGORITHMS = ("grid", "random-grid", "lazy-last", "lazy-first", "lazy-middle", "setcover")
PMAX_ALGORITHMS = ("pmax",)
RANDOMIZED = {"random-grid", "setcover"}
FAMILIES = ("rlp-path", "rlp-ring", "rlp-tree", "pmax-feasible", "pmax-any")
CSV_COLUMNS = ("instance_id", "algorithm", "mode", "d", "k", "online", "oracle", "ratio", "seed", "ms")


def _rng(*key) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(k) for k in key]))


# ---------------------------------------------------------------------------
# generators


def random_rlp_path_instance(rng: np.random.Generator, d: int, max_nodes: int = 200,
                             max_paths: int = 30) -> Instance:
    n = int(rng.integers(d + 3, max_nodes + 1))
    count = int(rng.integers(1, max_paths + 1))
    paths = []
    for i in range(count):
        while True:
            a, b = (int(x) for x in rng.integers(0, n, size=2))
            if abs(a - b) >= d + 1:
                break
        step = 1 if b > a else -1
        paths.append(Lightpath(i, tuple(range(a, b + step, step))))
    return Instance(Topology.path(n), d, None, paths)


def random_rlp_general_instance(rng: np.random.Generator, kind: str, d: int, max_nodes: int = 40,
                                max_paths: int = 12, attempts: int = 50) -> Instance:
    n = int(rng.integers(max(d + 3, 4), max_nodes + 1))
    if kind == "ring":
        g = nx.cycle_graph(n)
    elif kind == "tree":
        g = nx.random_labeled_tree(n, seed=int(rng.integers(2**31)))
    else:
        raise ValueError(f"unknown topology kind {kind!r}")
    topo = Topology.general(n, g.edges())
    count = int(rng.integers(1, max_paths + 1))
    paths = []
    for i in range(count):
        best = None
        for _ in range(attempts):
            a, b = (int(x) for x in rng.integers(0, n, size=2))
            if a == b:
                continue
            if kind == "ring":
                fwd = [(a + j) % n for j in range((b - a) % n + 1)]
                route = fwd if rng.random() < 0.5 else [(a - j) % n for j in range((a - b) % n + 1)]
            else:
                route = nx.shortest_path(g, a, b)
            if best is None or len(route) > len(best):
                best = route
            if len(route) - 1 >= d + 1:
                best = route
                break
        paths.append(Lightpath(i, tuple(best)))
    return Instance(topo, d, None, paths)


def random_pmax_instance(rng: np.random.Generator, max_nodes: int = 30, max_paths: int = 14,
                         feasible: bool = True, attempts: int = 200) -> Instance:
    """Overlapping short lightpaths on a line; optionally kept jointly feasible."""
    n = int(rng.integers(6, max_nodes + 1))
    target = int(rng.integers(1, max_paths + 1))
    centre = int(rng.integers(0, n))
    paths: list[Lightpath] = []
    for _ in range(attempts):
        if len(paths) >= target:
            break
        length = int(rng.integers(3, min(9, n)))
        spread = max(3, n // 4)
        lo = int(np.clip(centre + rng.integers(-spread, spread + 1), 0, n - 1 - length))
        nodes = tuple(range(lo, lo + length + 1))
        if rng.random() < 0.5:
            nodes = nodes[::-1]
        cand = Lightpath(len(paths), nodes)
        if feasible and not is_feasible_pmax(paths + [cand]):
            continue
        paths.append(cand)
    return Instance(Topology.path(n), 2, 1, paths)


def generate(family: str, rng: np.random.Generator, d: int = 2, **kw) -> Instance:
    if family == "rlp-path":
        return random_rlp_path_instance(rng, d, **kw)
    if family == "rlp-ring":
        return random_rlp_general_instance(rng, "ring", d, **kw)
    if family == "rlp-tree":
        return random_rlp_general_instance(rng, "tree", d, **kw)
    if family == "pmax-feasible":
        return random_pmax_instance(rng, feasible=True, **kw)
    if family == "pmax-any":
        return random_pmax_instance(rng, feasible=False, **kw)
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# algorithms and replay


def make_algorithm(name: str, instance: Instance, seed=None, pmax_variant: str = "sweep"):
    topo, d = instance.topology, instance.d
    if name in PMAX_ALGORITHMS:
        if instance.d != 2 or instance.k != 1:
            raise InvalidInstanceError("pmax needs an instance with d=2, k=1")
        return PmaxState(topo, variant=pmax_variant)
    if instance.k is not None:
        raise InvalidInstanceError(f"{name} needs k=inf")
    if name == "grid":
        return GridState(d, 0, topo)
    if name == "random-grid":
        return randomized_init(d, seed, topo)
    if name.startswith("lazy-"):
        return LazyGreedyRLP(d, name.split("-", 1)[1], topo)
    if name == "setcover":
        return ReductionState(topo, d, seed)
    raise InvalidInstanceError(f"unknown algorithm {name!r}")


def default_algorithm(instance: Instance) -> str:
    if instance.k == 1 and instance.d == 2:
        return "pmax"
    return "grid" if instance.topology.is_path else "setcover"


def _check_rlp_step(alg, path, before, d):
    asg = alg.assignment
    if not before <= asg.placements:
        raise InvariantViolation("placements shrank")
    if not is_d_satisfied(path, asg, d):
        raise InvariantViolation(f"lightpath {path.id} not {d}-satisfied after presentation")
    for v in alg.locations:
        for p in alg.paths:
            if p.is_internal(v) and not asg.has(v, p.id):
                raise InvariantViolation(f"node {v} does not serve lightpath {p.id}")


def _check_pmax_step(alg, path, decision, before):
    asg = alg.assignment
    if not before <= asg.placements:
        raise InvariantViolation("placements shrank")
    if any(c > 1 for c in asg.per_node_count.values()):
        raise InvariantViolation("node cap k=1 exceeded")
    if decision.satisfied:
        if not is_d_satisfied(path, asg, 2):
            raise InvariantViolation(f"accepted lightpath {path.id} is not 2-satisfied")
    else:
        inner = path.internal
        blocked = any(asg.occupied(u) and asg.occupied(v) for u, v in zip(inner, inner[1:]))
        if not blocked or asg.placements != before:
            raise InvariantViolation(f"lightpath {path.id} rejected without a blocked edge")


def replay(instance: Instance, alg) -> int:
    """Feed every lightpath in order, check invariants, return the online objective.

    The objective is re-derived from the final assignment: distinct locations
    for RLP, 2-satisfied lightpaths for PMAX.
    """
    pmax = isinstance(alg, PmaxState)
    for path in instance.paths:
        before = alg.assignment.placements
        if pmax:
            _check_pmax_step(alg, path, alg.present(path), before)
        else:
            alg.present(path)
            _check_rlp_step(alg, path, before, instance.d)
    asg = alg.assignment
    if pmax:
        return sum(1 for p in instance.paths if is_d_satisfied(p, asg, 2))
    return len(asg.locations)


def oracle_objective(instance: Instance, max_pmax_paths: int = DEFAULT_MAX_PMAX_PATHS,
                     max_elements: int = DEFAULT_MAX_ELEMENTS,
                     max_candidates: int = DEFAULT_MAX_CANDIDATES):
    if instance.k == 1 and instance.d == 2 and instance.topology.is_path:
        return opt_pmax(instance.paths, max_paths=max_pmax_paths)
    if instance.k is not None:
        raise InvalidInstanceError("no oracle for finite k other than d=2, k=1 on a path")
    if instance.topology.is_path:
        return opt_rlp_path(instance.paths, instance.d)
    return opt_rlp_general(instance.topology, instance.paths, instance.d,
                           max_elements, max_candidates)


def _ratio(online: float, oracle: int, pmax: bool) -> float:
    num, den = (oracle, online) if pmax else (online, oracle)
    if den == 0:
        return 1.0 if num == 0 else math.inf
    return num / den


# ---------------------------------------------------------------------------
# reports


@dataclass
class ExperimentConfig:
    mode: str = "replay"
    algorithm: str | None = None
    d: int = 2
    k: int | None = None
    trials: int = 1
    seed: int = 0
    instance: str | None = None
    family: str = "rlp-path"
    count: int = 100
    max_nodes: int | None = None
    max_paths: int | None = None
    output_format: str = "csv"
    pmax_variant: str = "sweep"
    max_pmax_paths: int = DEFAULT_MAX_PMAX_PATHS
    timing: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")


@dataclass
class RatioReport:
    rows: list = field(default_factory=list)
    aggregate: dict = field(default_factory=dict)

    def summarize(self, randomized: bool = False):
        ratios = [r["ratio"] for r in self.rows if r["ratio"] is not None]
        agg: dict = {"instances": len(self.rows)}
        if ratios:
            arr = np.asarray(ratios, dtype=float)
            agg["mean_ratio"] = float(arr.mean())
            agg["max_ratio"] = float(arr.max())
            agg["min_ratio"] = float(arr.min())
        families: dict = {}
        for r in self.rows:
            families.setdefault(r.get("family", r["mode"]), []).append(r["ratio"])
        agg["by_family"] = {
            f: {"mean_ratio": float(np.mean(v)), "max_ratio": float(np.max(v)), "n": len(v)}
            for f, v in sorted(families.items()) if v and None not in v}
        if randomized:
            cis = [r["ci95"] for r in self.rows if r.get("ci95")]
            if cis:
                agg["max_ci95_halfwidth"] = max((hi - lo) / 2 for lo, hi in cis)
        self.aggregate = agg
        return self

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow({k: _fmt(r[k]) for k in CSV_COLUMNS})
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"rows": [{k: _fmt(v) for k, v in r.items()} for r in self.rows],
                           "aggregate": self.aggregate}, sort_keys=True, indent=1)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()


def _fmt(v):
    if isinstance(v, float):
        if math.isinf(v):
            return "inf"
        return round(v, 6)
    if isinstance(v, (list, tuple)):
        return [_fmt(x) for x in v]
    return v


def _evaluate(instance: Instance, instance_id, algorithm: str, config: ExperimentConfig,
              mode: str, seed: int) -> dict:
    pmax = algorithm in PMAX_ALGORITHMS
    start = time.perf_counter()
    oracle = oracle_objective(instance, config.max_pmax_paths)
    trials = config.trials if algorithm in RANDOMIZED else 1
    onlines = []
    for t in range(trials):
        alg = make_algorithm(algorithm, instance, np.random.SeedSequence([seed, t]),
                             config.pmax_variant)
        onlines.append(replay(instance, alg))
    ratios = np.asarray([_ratio(o, oracle.objective, pmax) for o in onlines])
    online = onlines[0] if trials == 1 else float(np.mean(onlines))
    row = {
        "instance_id": instance_id,
        "algorithm": algorithm + ("-two-start" if pmax and config.pmax_variant == "two-start" else ""),
        "mode": mode,
        "d": instance.d,
        "k": "inf" if instance.k is None else instance.k,
        "online": online,
        "oracle": oracle.objective,
        "oracle_optimal": oracle.optimal,
        "ratio": float(ratios.mean()),
        "seed": seed,
        "ms": round((time.perf_counter() - start) * 1000, 3) if config.timing else 0,
    }
    if trials > 1:
        half = 1.96 * float(ratios.std(ddof=1)) / math.sqrt(trials)
        row["ci95"] = [row["ratio"] - half, row["ratio"] + half]
    return row


def run_replay(config: ExperimentConfig, instance: Instance | None = None) -> RatioReport:
    if instance is None:
        if config.instance is None:
            raise InvalidInstanceError("replay needs an instance file")
        instance = load_instance(config.instance)
    algorithm = config.algorithm or default_algorithm(instance)
    row = _evaluate(instance, 0, algorithm, config, "replay", config.seed)
    return RatioReport([row]).summarize(algorithm in RANDOMIZED)


def run_random_sweep(config: ExperimentConfig) -> RatioReport:
    """Seeded random instances of ``config.family``, each replayed against its oracle."""
    fam = config.family
    if fam not in FAMILIES:
        raise ValueError(f"unknown family {fam!r}")
    kw = {}
    if config.max_nodes is not None:
        kw["max_nodes"] = config.max_nodes
    if config.max_paths is not None:
        kw["max_paths"] = config.max_paths
    rows = []
    for i in range(config.count):
        rng = _rng(config.seed, i)
        inst = generate(fam, rng, config.d, **kw)
        algorithm = config.algorithm or default_algorithm(inst)
        try:
            row = _evaluate(inst, i, algorithm, config, "random-sweep", config.seed * 100003 + i)
        except OracleLimitError:
            continue
        row["family"] = fam if not fam.startswith("pmax") else (
            "pmax-feasible" if is_feasible_pmax(inst.paths) else "pmax-infeasible")
        rows.append(row)
    return RatioReport(rows).summarize(config.algorithm in RANDOMIZED)
