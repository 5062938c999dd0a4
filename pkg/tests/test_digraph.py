import pytest
from hypothesis import given
from hypothesis import strategies as st

from hproduct import (
    Digraph,
    Graph,
    NotSimpleError,
    RegularityError,
    cycle_length_multiset,
    is_eulerian,
    oriented_cycle,
    strong_components,
    to_one_regular,
    weak_components,
)
from hproduct.permutations import Permutation


def arcs_of(d: Digraph) -> set[tuple[int, int]]:
    return set(d.arcs())


class TestConstruction:
    def test_rejects_out_of_range_arcs(self):
        with pytest.raises(ValueError):
            Digraph(2, [(0, 2)])

    def test_rejects_loops_unless_flagged(self):
        with pytest.raises(ValueError):
            Digraph(2, [(1, 1)])
        d = Digraph(2, [(1, 1)], allow_loops=True)
        assert d.multiplicity(1, 1) == 1

    def test_multiplicities_accumulate(self):
        d = Digraph(3, [(0, 1), (0, 1), (0, 1, 2)])
        assert d.multiplicity(0, 1) == 4
        assert d.size == 4

    def test_rejects_nonpositive_multiplicity(self):
        with pytest.raises(ValueError):
            Digraph(3, [(0, 1, 0)])


class TestOrientedCycle:
    def test_forward_arcs(self):
        assert arcs_of(oriented_cycle(3)) == {(0, 1), (1, 2), (2, 0)}

    def test_backward_arcs(self):
        assert arcs_of(oriented_cycle(3, "backward")) == {(1, 0), (2, 1), (0, 2)}

    def test_reverse_of_forward_is_backward(self):
        assert oriented_cycle(5).reverse() == oriented_cycle(5, "backward")

    def test_rejects_small_order(self):
        with pytest.raises(ValueError):
            oriented_cycle(1)

    def test_rejects_bad_direction(self):
        with pytest.raises(ValueError):
            oriented_cycle(4, "widdershins")


@st.composite
def digraphs(draw, max_order=8, allow_loops=True):
    order = draw(st.integers(1, max_order))
    arc = st.tuples(st.integers(0, order - 1), st.integers(0, order - 1))
    arcs = draw(st.lists(arc, max_size=2 * order))
    if not allow_loops:
        arcs = [(u, v) for u, v in arcs if u != v]
    return Digraph(order, arcs, allow_loops=allow_loops)


class TestReverse:
    @given(digraphs())
    def test_involution(self, d):
        assert d.reverse().reverse() == d

    def test_single_arc(self):
        assert arcs_of(Digraph(2, [(0, 1)]).reverse()) == {(1, 0)}

    def test_preserves_multiplicity(self):
        d = Digraph(2, [(0, 1, 3)])
        assert d.reverse().multiplicity(1, 0) == 3


class TestUnderlying:
    def test_cycle_both_orientations(self):
        c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
        assert oriented_cycle(5).underlying() == c5
        assert oriented_cycle(5, "backward").underlying() == c5

    @given(digraphs(allow_loops=False))
    def test_reverse_invariance(self, d):
        assert d.underlying() == d.reverse().underlying()

    def test_two_cycle_collapses(self):
        d = Digraph(2, [(0, 1), (1, 0)])
        assert d.underlying().edges() == [(0, 1)]

    def test_loop_rejected(self):
        d = Digraph(1, [(0, 0)], allow_loops=True)
        with pytest.raises(NotSimpleError):
            d.underlying()


class TestComponents:
    def test_weak_disjoint_cycles(self):
        d = Digraph(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)])
        assert [len(c) for c in weak_components(d)] == [3, 4]

    def test_isolated_vertex(self):
        assert weak_components(Digraph(1)) == [[0]]

    def test_strong_cycle_is_one_class(self):
        assert strong_components(oriented_cycle(6)) == [list(range(6))]

    def test_strong_path_is_singletons(self):
        d = Digraph(3, [(0, 1), (1, 2)])
        assert strong_components(d) == [[0], [1], [2]]

    @given(digraphs())
    def test_weak_refines_strong(self, d):
        weak_index = {}
        for i, comp in enumerate(weak_components(d)):
            for v in comp:
                weak_index[v] = i
        for comp in strong_components(d):
            assert len({weak_index[v] for v in comp}) == 1

    @given(digraphs())
    def test_strong_components_partition(self, d):
        seen = sorted(v for comp in strong_components(d) for v in comp)
        assert seen == list(range(d.order))

    @given(digraphs(max_order=7))
    def test_strong_components_match_reachability_oracle(self, d):
        n = d.order
        reach = [[u == v for v in range(n)] for u in range(n)]
        for u, v in d.arcs():
            reach[u][v] = True
        for k in range(n):
            for u in range(n):
                if reach[u][k]:
                    row = reach[u]
                    for v in range(n):
                        row[v] = row[v] or reach[k][v]
        expected = sorted(
            {
                tuple(sorted(v for v in range(n) if reach[u][v] and reach[v][u]))
                for u in range(n)
            }
        )
        assert sorted(tuple(c) for c in strong_components(d)) == expected


class TestCycleLengthMultiset:
    def test_disjoint_cycles(self):
        d = Digraph(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)])
        assert cycle_length_multiset(d) == [3, 4]

    def test_all_loops(self):
        d = to_one_regular(Permutation.identity(4))
        assert cycle_length_multiset(d) == [1, 1, 1, 1]

    def test_rejects_irregular(self):
        with pytest.raises(RegularityError):
            cycle_length_multiset(Digraph(3, [(0, 1), (1, 2)]))

    @given(st.integers(2, 30))
    def test_lengths_sum_to_order(self, n):
        assert sum(cycle_length_multiset(oriented_cycle(n))) == n

    @given(st.integers(1, 9).flatmap(lambda n: st.permutations(range(n))))
    def test_one_regular_strong_equals_weak(self, image):
        f = to_one_regular(Permutation(image))
        assert strong_components(f) == weak_components(f)


class TestEulerian:
    def test_cycle(self):
        assert is_eulerian(oriented_cycle(7))

    def test_two_disjoint_cycles(self):
        d = Digraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        assert not is_eulerian(d)

    def test_unbalanced(self):
        assert not is_eulerian(Digraph(2, [(0, 1)]))

    def test_single_vertex_no_arcs(self):
        assert is_eulerian(Digraph(1))

    def test_two_isolated_vertices(self):
        # balanced degrees but not weakly connected
        assert not is_eulerian(Digraph(2))

    def test_counts_multiplicity(self):
        d = Digraph(2, [(0, 1, 2), (1, 0)])
        assert not is_eulerian(d)
        assert is_eulerian(Digraph(2, [(0, 1, 2), (1, 0, 2)]))


class TestGraph:
    def test_rejects_loop(self):
        with pytest.raises(NotSimpleError):
            Graph(2, [(1, 1)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(NotSimpleError):
            Graph(3, [(0, 1), (1, 0)])

    def test_degree_sequence(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)])
        assert g.degree_sequence() == [1, 1, 2, 2]

    def test_connected_components(self):
        g = Graph(5, [(0, 1), (3, 4)])
        assert g.connected_components() == [[0, 1], [2], [3, 4]]
