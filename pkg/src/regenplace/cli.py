"""Command line entry point: ``regenplace {run,sweep,adversary,oracle,gen}``.

Exit status is 0 on success, 1 on bad input and 2 when an algorithm breaks
one of its invariants.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import adversaries as adv
from .errors import (AdversaryError, InvalidInstanceError, InvariantViolation,
                     OracleLimitError, RegenError)
from .harness import (FAMILIES, PMAX_ALGORITHMS, RLP_ALGORITHMS, ExperimentConfig, _rng,
                      generate, oracle_objective, run_random_sweep, run_replay)
from .model import Instance, dump_instance, load_instance
from .oracles import min_hitting_set
from .pmax import PmaxState
from .rlp_general import ReductionState
from .rlp_path import GridState, LazyGreedyRLP

CONSTRUCTIONS = ("rlp-det-lb2", "rlp-yao", "pmax-infeasible", "pmax-feasible", "setcover-fig1")


def _rlp_factory(name: str, d: int, seed: int):
    if name == "grid":
        return lambda topo: GridState(d, 0, topo)
    if name.startswith("grid+"):
        off = int(name[5:])
        return lambda topo: GridState(d, off, topo)
    if name == "random-grid":
        off = int(np.random.default_rng(seed).integers(1, d + 1))
        return lambda topo: GridState(d, off, topo)
    if name.startswith("lazy-"):
        return lambda topo: LazyGreedyRLP(d, name[5:], topo)
    if name == "setcover":
        return lambda topo: ReductionState(topo, d, seed)
    raise InvalidInstanceError(f"unknown RLP algorithm {name!r}")


def _pmax_factory(name: str):
    if name == "pmax":
        return lambda topo: PmaxState(topo)
    if name == "pmax-two-start":
        return lambda topo: PmaxState(topo, variant="two-start")
    raise InvalidInstanceError(f"unknown PMAX algorithm {name!r}")


def _ratio_str(r):
    return "inf" if r == float("inf") else str(r)


def _setcover_fig1(m: int, algorithm: str, seed: int) -> tuple[dict, object]:
    rng = _rng(seed, m)
    n_el = int(rng.integers(1, 11))
    sets = {j: set() for j in range(m)}
    for x in range(n_el):
        k = int(rng.integers(1, m + 1))
        for j in rng.choice(m, size=k, replace=False):
            sets[int(j)].add(x)
    arrival = [int(x) for x in rng.permutation(n_el)]
    built = adv.build_rlp_from_setcover(range(n_el), sets, arrival)
    inst = built.instance
    alg = _rlp_factory(algorithm, inst.d, seed)(inst.topology)
    for p in inst.paths:
        alg.present(p)
    cover = built.normalize(alg.locations)
    opt = len(min_hitting_set([{s for s in sets if x in sets[s]} for x in arrival])[0])
    out = {
        "construction": "setcover-fig1",
        "param": m,
        "algorithm": getattr(alg, "name", algorithm),
        "sets": {str(k): sorted(v) for k, v in sets.items()},
        "arrival": arrival,
        "online": len(alg.locations),
        "normalized_cover": sorted(cover),
        "offline": opt,
        "ratio": _ratio_str(Fraction(len(alg.locations), opt)),
    }
    return out, inst


def cmd_adversary(args) -> tuple[str, object]:
    c, p = args.construction, args.param
    if c == "rlp-yao":
        dist = adv.adv_rlp_yao(p)
        name = args.algorithm or "grid"
        if name == "random-grid":
            exp = sum((dist.expected_cost(_rlp_factory(f"grid+{i}", p, 0)) for i in range(1, p + 1)),
                      Fraction(0)) / p
        else:
            exp = dist.expected_cost(_rlp_factory(name, p, args.seed))
        out = {"construction": c, "param": p, "algorithm": name,
               "branches": [[list(q.nodes) for q in b] for b in dist.branches],
               "optima": dist.optima(), "expected_cost": str(exp), "ratio": str(exp)}
        return json.dumps(out, indent=1), Instance(dist.topology, p, None, dist.branches[0])
    if c == "setcover-fig1":
        out, inst = _setcover_fig1(p, args.algorithm or "setcover", args.seed)
        return json.dumps(out, indent=1), inst
    if c == "rlp-det-lb2":
        trace = adv.adv_rlp_det_lb2(_rlp_factory(args.algorithm or "grid", p, args.seed), p)
    elif c == "pmax-infeasible":
        trace = adv.adv_pmax_infeasible(p, _pmax_factory(args.algorithm or "pmax"))
    else:
        trace = adv.adv_pmax_feasible(p, _pmax_factory(args.algorithm or "pmax"))
    return json.dumps(trace.to_dict(), indent=1), trace.instance()


def _config(args, mode: str) -> ExperimentConfig:
    return ExperimentConfig(
        mode=mode,
        algorithm=getattr(args, "algorithm", None),
        d=getattr(args, "d", 2),
        trials=getattr(args, "trials", 1),
        seed=args.seed,
        instance=getattr(args, "instance", None),
        family=getattr(args, "family", "rlp-path"),
        count=getattr(args, "count", 100),
        max_nodes=getattr(args, "max_nodes", None),
        max_paths=getattr(args, "max_paths", None),
        output_format=args.format,
        pmax_variant=getattr(args, "pmax_variant", "sweep"),
        timing=getattr(args, "timing", False),
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="regenplace", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    algos = RLP_ALGORITHMS + PMAX_ALGORITHMS
    run = sub.add_parser("run", parents=[common], help="replay an instance file")
    run.add_argument("instance")
    run.add_argument("--algorithm", choices=algos)
    run.add_argument("--trials", type=int, default=1)
    run.add_argument("--pmax-variant", choices=("sweep", "two-start"), default="sweep")
    run.add_argument("--timing", action="store_true", help="fill the ms column (breaks byte-identical output)")

    sweep = sub.add_parser("sweep", parents=[common], help="random instances against the oracle")
    sweep.add_argument("--family", choices=FAMILIES, default="rlp-path")
    sweep.add_argument("--algorithm", choices=algos)
    sweep.add_argument("--d", type=int, default=2)
    sweep.add_argument("--count", type=int, default=100)
    sweep.add_argument("--trials", type=int, default=1)
    sweep.add_argument("--max-nodes", type=int)
    sweep.add_argument("--max-paths", type=int)
    sweep.add_argument("--pmax-variant", choices=("sweep", "two-start"), default="sweep")
    sweep.add_argument("--timing", action="store_true")

    ad = sub.add_parser("adversary", parents=[common], help="run a lower-bound construction")
    ad.add_argument("--construction", choices=CONSTRUCTIONS, required=True)
    ad.add_argument("--param", type=int, required=True, help="d, l, n or number of sets")
    ad.add_argument("--algorithm")
    ad.add_argument("--instance-out", help="also write the generated instance file")

    orc = sub.add_parser("oracle", parents=[common], help="exact offline optimum of an instance")
    orc.add_argument("instance")

    gen = sub.add_parser("gen", parents=[common], help="write a random instance file")
    gen.add_argument("--family", choices=FAMILIES, default="rlp-path")
    gen.add_argument("--d", type=int, default=2)
    gen.add_argument("--max-nodes", type=int)
    gen.add_argument("--max-paths", type=int)
    return parser


def _dispatch(args) -> str:
    if args.command == "run":
        return run_replay(_config(args, "replay")).render(args.format)
    if args.command == "sweep":
        return run_random_sweep(_config(args, "random-sweep")).render(args.format)
    if args.command == "adversary":
        text, inst = cmd_adversary(args)
        if args.instance_out:
            dump_instance(inst, args.instance_out)
        return text
    if args.command == "oracle":
        inst = load_instance(args.instance)
        return json.dumps(oracle_objective(inst).to_dict(), sort_keys=True)
    if args.command == "gen":
        kw = {k: v for k, v in (("max_nodes", args.max_nodes), ("max_paths", args.max_paths))
              if v is not None}
        return dump_instance(generate(args.family, _rng(args.seed), args.d, **kw))
    raise AssertionError(args.command)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = _dispatch(args)
    except (InvariantViolation, AdversaryError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except (InvalidInstanceError, OracleLimitError, RegenError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
