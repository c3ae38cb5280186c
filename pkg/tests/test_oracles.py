import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regenplace.errors import InvalidInstanceError, OracleLimitError
from regenplace.model import Lightpath, Topology, satisfied_by_nodes
from regenplace.oracles import (Method, brute_force_pmax, brute_force_rlp, brute_force_set_cover,
                                feasible_pmax_2sat, is_feasible_pmax, min_hitting_set,
                                opt_pmax, opt_rlp_general, opt_rlp_path, pmax_owner_assignment,
                                validate_pmax_witness)


def lp(i, lo, hi):
    return Lightpath(i, tuple(range(lo, hi + 1)))


class TestRlpPath:
    def test_six_nodes(self):
        res = opt_rlp_path([lp(0, 0, 5)], 2)
        assert res.objective == 2 == brute_force_rlp([lp(0, 0, 5)], 2).objective
        assert satisfied_by_nodes(lp(0, 0, 5), res.witness, 2)
        assert res.method is Method.INTERVAL_STABBING

    def test_single_window(self):
        res = opt_rlp_path([lp(0, 0, 3)], 2)
        assert res.objective == 1 and res.witness <= {1, 2}

    def test_overlap_matches_brute_force(self):
        ps = [lp(0, 0, 4), lp(1, 3, 8)]
        assert opt_rlp_path(ps, 2).objective == brute_force_rlp(ps, 2).objective

    def test_no_windows(self):
        assert opt_rlp_path([lp(0, 0, 2)], 2).objective == 0

    def test_brute_force_limit(self):
        with pytest.raises(OracleLimitError):
            brute_force_rlp([lp(0, 0, 30)], 2)

    @given(st.lists(st.tuples(st.integers(0, 10), st.integers(2, 10)), min_size=1, max_size=6),
           st.integers(1, 5))
    @settings(max_examples=150)
    def test_greedy_is_optimal_and_monotone(self, specs, d):
        ps = [lp(i, a, min(a + ln, 13)) for i, (a, ln) in enumerate(specs)]
        res = opt_rlp_path(ps, d)
        assert res.objective == brute_force_rlp(ps, d).objective
        assert all(satisfied_by_nodes(p, res.witness, d) for p in ps)
        assert opt_rlp_path(ps[:-1], d).objective <= res.objective


class TestHittingSet:
    def test_universal_node(self):
        chosen, optimal = min_hitting_set([{1, 5}, {5, 7}, {2, 5}])
        assert chosen == {5} and optimal

    def test_empty_element(self):
        with pytest.raises(ValueError):
            min_hitting_set([set()])

    def test_limit_returns_greedy(self):
        elements = [{i, i + 1} for i in range(0, 80, 2)]
        chosen, optimal = min_hitting_set(elements, max_candidates=10)
        assert not optimal
        assert all(set(e) & chosen for e in elements)

    @given(st.lists(st.sets(st.integers(0, 9), min_size=1, max_size=4), min_size=1, max_size=12))
    @settings(max_examples=150)
    def test_matches_set_cover_brute_force(self, elements):
        chosen, optimal = min_hitting_set(elements)
        assert optimal and all(e & chosen for e in elements)
        # dual view: candidate c is a set containing the elements it hits
        sets = {c: {i for i, e in enumerate(elements) if c in e} for c in set().union(*elements)}
        assert len(chosen) == brute_force_set_cover(range(len(elements)), sets)


class TestRlpGeneral:
    def test_path_instance_agrees(self):
        ps = [lp(0, 0, 6), lp(1, 4, 11), lp(2, 9, 12)]
        topo = Topology.path(13)
        assert opt_rlp_general(topo, ps, 2).objective == opt_rlp_path(ps, 2).objective

    def test_shared_node(self):
        # a star: every lightpath runs leaf, 0, leaf
        topo = Topology.general(5, [(0, i) for i in range(1, 5)])
        ps = [Lightpath(i, (a, 0, b)) for i, (a, b) in enumerate(itertools.combinations(range(1, 5), 2))]
        res = opt_rlp_general(topo, ps, 1)
        assert res.objective == 1 and res.witness == {0}

    def test_rejects_invalid_route(self):
        with pytest.raises(InvalidInstanceError):
            opt_rlp_general(Topology.path(4), [Lightpath(0, (0, 2, 3))], 2)


class TestPmax:
    def test_triple(self):
        ps = [lp(i, 0, 3) for i in range(3)]
        res = opt_pmax(ps)
        assert res.objective == 2
        chosen = [p for p in ps if p.id in res.witness.paths]
        assert validate_pmax_witness(chosen, res.witness.owners)
        assert not is_feasible_pmax(ps) and not feasible_pmax_2sat(ps)

    def test_shared_edge_pair_feasible(self):
        ps = [lp(0, 0, 3), lp(1, 0, 3)]
        assert is_feasible_pmax(ps) and feasible_pmax_2sat(ps)
        owners = pmax_owner_assignment(ps)
        assert validate_pmax_witness(ps, owners)
        assert opt_pmax(ps).objective == 2

    def test_feasible_counts_everything(self):
        ps = [lp(0, 0, 9), lp(1, 3, 6), lp(2, 10, 14)]
        assert is_feasible_pmax(ps)
        assert opt_pmax(ps).objective == 3

    def test_errors(self):
        with pytest.raises(InvalidInstanceError):
            opt_pmax([lp(0, 0, 3)], d=3)
        with pytest.raises(InvalidInstanceError):
            opt_pmax([lp(0, 0, 3), lp(0, 1, 4)])
        with pytest.raises(InvalidInstanceError):
            is_feasible_pmax([Lightpath(0, (0, 2, 1))])
        many = [lp(i, 0, 3) for i in range(15)]
        with pytest.raises(OracleLimitError):
            opt_pmax(many)

    def test_witness_validator_rejects(self):
        ps = [lp(0, 0, 3), lp(1, 0, 3)]
        assert not validate_pmax_witness(ps, {1: 0})
        assert not validate_pmax_witness(ps, {0: 0, 2: 1})

    @given(st.lists(st.tuples(st.integers(0, 8), st.integers(2, 6)), min_size=1, max_size=7))
    @settings(max_examples=200)
    def test_dp_matches_2sat_and_subset_search(self, specs):
        ps = [lp(i, a, a + ln) for i, (a, ln) in enumerate(specs)]
        owners = pmax_owner_assignment(ps)
        assert (owners is not None) == feasible_pmax_2sat(ps)
        if owners is not None:
            assert validate_pmax_witness(ps, owners)
        res = opt_pmax(ps)
        assert res.objective == brute_force_pmax(ps)
        chosen = [p for p in ps if p.id in res.witness.paths]
        assert validate_pmax_witness(chosen, res.witness.owners)
