import csv
import io
import json

import pytest

from regenplace.adversaries import adv_rlp_det_lb2
from regenplace.cli import main
from regenplace.errors import InvariantViolation
from regenplace.harness import (CSV_COLUMNS, ExperimentConfig, _rng, generate, make_algorithm,
                                random_pmax_instance, random_rlp_path_instance, replay,
                                run_random_sweep, run_replay)
from regenplace.model import Instance, Lightpath, Topology, dump_instance
from regenplace.oracles import is_feasible_pmax
from regenplace.rlp_path import GridState, OnlineRLP


def lp(i, lo, hi):
    return Lightpath(i, tuple(range(lo, hi + 1)))


def _write(tmp_path, inst, name="inst.json"):
    f = tmp_path / name
    dump_instance(inst, f)
    return str(f)


class TestReplay:
    def test_triple_pmax(self):
        inst = Instance(Topology.path(4), 2, 1, [lp(i, 0, 3) for i in range(3)])
        (row,) = run_replay(ExperimentConfig(), inst).rows
        assert (row["online"], row["oracle"], row["ratio"]) == (2, 2, 1.0)
        assert row["algorithm"] == "pmax"

    def test_single_rlp_path(self):
        inst = Instance(Topology.path(6), 2, None, [lp(0, 0, 5)])
        (row,) = run_replay(ExperimentConfig(algorithm="grid"), inst).rows
        assert (row["online"], row["oracle"], row["ratio"]) == (2, 2, 1.0)

    def test_lb2_instance(self):
        t = adv_rlp_det_lb2(lambda topo: GridState(2, 0, topo), 2)
        (row,) = run_replay(ExperimentConfig(algorithm="grid"), t.instance()).rows
        assert row["ratio"] == 2.0

    def test_invariant_violation_detected(self):
        class Broken(OnlineRLP):
            def choose(self, path):
                return set()

        inst = Instance(Topology.path(6), 2, None, [lp(0, 0, 5)])
        with pytest.raises(InvariantViolation):
            replay(inst, Broken(2, inst.topology))

    def test_mismatch(self):
        inst = Instance(Topology.path(6), 2, None, [lp(0, 0, 5)])
        with pytest.raises(Exception):
            make_algorithm("pmax", inst)
        with pytest.raises(ValueError):
            ExperimentConfig(trials=0)

    def test_randomized_trials_report_ci(self):
        inst = Instance(Topology.path(30), 3, None, [lp(0, 0, 9), lp(1, 5, 20), lp(2, 12, 29)])
        (row,) = run_replay(ExperimentConfig(algorithm="random-grid", trials=50), inst).rows
        lo, hi = row["ci95"]
        assert lo <= row["ratio"] <= hi


class TestGenerators:
    def test_rlp_path_lengths(self):
        rng = _rng(1)
        for d in (2, 5):
            inst = random_rlp_path_instance(rng, d)
            assert inst.topology.node_count <= 200
            assert all(len(p.nodes) - 1 >= d + 1 for p in inst.paths)

    def test_pmax_feasible_family(self):
        rng = _rng(2)
        for _ in range(20):
            inst = random_pmax_instance(rng)
            assert len(inst.paths) <= 14 and is_feasible_pmax(inst.paths)

    @pytest.mark.parametrize("family", ["rlp-ring", "rlp-tree"])
    def test_general_families_valid(self, family):
        inst = generate(family, _rng(3), 2)
        for p in inst.paths:
            inst.topology.check_path(p.nodes)

    def test_same_seed_same_instance(self):
        a = generate("rlp-path", _rng(9, 1), 3).to_dict()
        assert a == generate("rlp-path", _rng(9, 1), 3).to_dict()


class TestSweep:
    def test_rlp_path_sweep(self):
        rep = run_random_sweep(ExperimentConfig(mode="random-sweep", count=100, d=2, seed=4))
        assert rep.aggregate["max_ratio"] <= 2.0

    def test_pmax_sweep(self):
        rep = run_random_sweep(ExperimentConfig(mode="random-sweep", family="pmax-feasible",
                                                count=40, seed=5))
        assert rep.aggregate["max_ratio"] <= 3.0

    def test_byte_identical(self):
        cfg = ExperimentConfig(mode="random-sweep", family="rlp-ring", algorithm="setcover",
                               trials=3, count=10, seed=8)
        assert run_random_sweep(cfg).to_json() == run_random_sweep(cfg).to_json()
        assert run_random_sweep(cfg).to_csv() == run_random_sweep(cfg).to_csv()


class TestCli:
    def test_run_csv_columns(self, tmp_path, capsys):
        f = _write(tmp_path, Instance(Topology.path(6), 2, None, [lp(0, 0, 5)]))
        assert main(["run", f]) == 0
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert tuple(rows[0]) == CSV_COLUMNS
        assert rows[0]["ratio"] == "1.0"

    def test_global_flags_either_side(self, tmp_path):
        f = _write(tmp_path, Instance(Topology.path(6), 2, None, [lp(0, 0, 5)]))
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["--format", "json", "--out", str(a), "run", f]) == 0
        assert main(["run", f, "--format", "json", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert json.loads(a.read_text())["rows"][0]["online"] == 2

    def test_sweep_byte_identical(self, tmp_path):
        outs = []
        for name in ("x.csv", "y.csv"):
            out = tmp_path / name
            assert main(["--seed", "3", "--out", str(out), "sweep", "--count", "20", "--d", "3"]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_oracle(self, tmp_path, capsys):
        f = _write(tmp_path, Instance(Topology.path(6), 2, None, [lp(0, 0, 5)]))
        assert main(["oracle", f]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["objective"] == 2 and data["method"] == "interval-stabbing"

    def test_gen_then_run(self, tmp_path):
        inst = tmp_path / "g.json"
        assert main(["--seed", "5", "--out", str(inst), "gen", "--family", "pmax-feasible"]) == 0
        assert main(["run", str(inst), "--out", str(tmp_path / "r.csv")]) == 0

    @pytest.mark.parametrize("construction,param", [
        ("rlp-det-lb2", 3), ("rlp-yao", 3), ("pmax-infeasible", 16),
        ("pmax-feasible", 2), ("setcover-fig1", 3)])
    def test_adversary(self, tmp_path, capsys, construction, param):
        inst = tmp_path / "adv.json"
        assert main(["adversary", "--construction", construction, "--param", str(param),
                     "--instance-out", str(inst)]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["construction"] == construction
        assert json.loads(inst.read_text())["paths"]

    def test_exit_codes_on_bad_input(self, tmp_path, capsys):
        assert main(["adversary", "--construction", "pmax-infeasible", "--param", "10"]) == 1
        bad = tmp_path / "bad.json"
        bad.write_text("{}")
        assert main(["run", str(bad)]) == 1
        assert main(["run", str(tmp_path / "missing.json")]) == 1
        f = _write(tmp_path, Instance(Topology.path(6), 2, None, [lp(0, 0, 5)]))
        assert main(["run", f, "--algorithm", "pmax"]) == 1

    def test_invariant_exit_code(self, tmp_path, monkeypatch):
        import regenplace.harness as h

        def broken(*a, **k):
            raise InvariantViolation("boom")

        monkeypatch.setattr(h, "replay", broken)
        f = _write(tmp_path, Instance(Topology.path(6), 2, None, [lp(0, 0, 5)]))
        assert main(["run", f]) == 2
