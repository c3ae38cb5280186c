from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from regenplace.errors import InvalidInstanceError
from regenplace.model import Lightpath, Topology, cost, is_d_satisfied
from regenplace.oracles import opt_rlp_path
from regenplace.rlp_path import (GridState, LazyGreedyRLP, deterministic_init, grid_present,
                                 randomized_init)

paths_st = st.lists(
    st.tuples(st.integers(0, 60), st.integers(2, 25)).map(lambda t: tuple(range(t[0], t[0] + t[1] + 1))),
    min_size=1, max_size=10)


class TestGrid:
    def test_single_path_d2(self):
        g = deterministic_init(2, Topology.path(6))
        p = Lightpath(0, tuple(range(6)))
        assert grid_present(g, p) == {2, 4}
        assert is_d_satisfied(p, g.assignment, 2)

    def test_second_identical_path_is_free(self):
        g = deterministic_init(2)
        grid_present(g, Lightpath(0, tuple(range(6))))
        q = Lightpath(1, tuple(range(6)))
        assert grid_present(g, q) == set()
        assert g.cost() == 2 == cost(g.assignment)
        assert is_d_satisfied(q, g.assignment, 2)

    def test_offset_one_d3(self):
        # residues j >= 1 with j = 1 mod 3 on internal {1..7}
        g = GridState(3, 1)
        p = Lightpath(0, tuple(range(9)))
        placed = grid_present(g, p)
        assert placed == {1, 4, 7}
        assert {4, 7} <= placed
        assert is_d_satisfied(p, g.assignment, 3)

    def test_short_path_opens_nothing(self):
        g = deterministic_init(3)
        assert g.present(Lightpath(0, (2, 3, 4, 5))) == set()
        assert g.cost() == 0

    def test_offset_d_skips_start(self):
        g = GridState(3, 3)
        assert not g.in_grid(0) and g.in_grid(3) and g.in_grid(6)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            GridState(1)
        with pytest.raises(ValueError):
            GridState(3, 4)
        with pytest.raises(InvalidInstanceError):
            GridState(2, 0, Topology.general(3, [(0, 1), (1, 2), (2, 0)]))
        with pytest.raises(InvalidInstanceError):
            deterministic_init(2, Topology.path(4)).present(Lightpath(0, (0, 2, 3)))

    @given(paths_st, st.integers(2, 8), st.integers(0, 8))
    def test_every_path_satisfied_on_arrival(self, nodes, d, offset):
        g = GridState(d, min(offset, d))
        for i, ns in enumerate(nodes):
            p = Lightpath(i, ns)
            g.present(p)
            assert is_d_satisfied(p, g.assignment, d)
        # earlier paths stay satisfied and placements are internal
        for p in g.paths:
            assert is_d_satisfied(p, g.assignment, d)
        by_id = {p.id: p for p in g.paths}
        for v, pid in g.assignment.placements:
            assert by_id[pid].is_internal(v)

    @given(paths_st, st.integers(2, 8))
    def test_deterministic_two_competitive(self, nodes, d):
        g = deterministic_init(d)
        ps = [Lightpath(i, ns) for i, ns in enumerate(nodes)]
        for p in ps:
            g.present(p)
        assert g.cost() <= 2 * opt_rlp_path(ps, d).objective

    @given(paths_st, st.integers(2, 6))
    def test_assignment_monotone(self, nodes, d):
        g = deterministic_init(d)
        seen = frozenset()
        for i, ns in enumerate(nodes):
            g.present(Lightpath(i, ns))
            now = frozenset(g.assignment.placements)
            assert seen <= now
            seen = now


class TestRandomized:
    def test_offset_range(self):
        offs = {randomized_init(2, s).offset for s in range(200)}
        assert offs == {1, 2}

    def test_seed_determinism(self):
        assert randomized_init(5, 1234).offset == randomized_init(5, 1234).offset

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_uniform_within_three_sigma(self, d):
        n = 10_000
        counts = Counter(randomized_init(d, s).offset for s in range(n))
        p = 1 / d
        sigma = np.sqrt(n * p * (1 - p))
        assert set(counts) == set(range(1, d + 1))
        for c in counts.values():
            assert abs(c - n * p) <= 3 * sigma


class TestLazy:
    @pytest.mark.parametrize("pick", ["last", "first", "middle"])
    def test_satisfies(self, pick):
        alg = LazyGreedyRLP(3, pick)
        ps = [Lightpath(0, tuple(range(10))), Lightpath(1, tuple(range(4, 15)))]
        for p in ps:
            alg.present(p)
            assert is_d_satisfied(p, alg.assignment, 3)

    def test_bad_pick(self):
        with pytest.raises(ValueError):
            LazyGreedyRLP(2, "random")
