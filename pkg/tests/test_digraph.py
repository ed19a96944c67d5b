"""Digraph structure, queries, contraction, and the text format."""

from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dicore.digraph import Digraph, DigraphParseError
from dicore.random_model import enumerate_all

from conftest import complete_digraph, directed_cycle


@st.composite
def digraphs(draw, max_n: int = 6) -> Digraph:
    n = draw(st.integers(min_value=0, max_value=max_n))
    if n <= 1:
        return Digraph(n)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    mask = draw(st.integers(min_value=0, max_value=(1 << len(pairs)) - 1))
    return Digraph(n, (pairs[i] for i in range(len(pairs)) if (mask >> i) & 1))


class TestConstruction:
    def test_empty_sizes(self):
        for n in (0, 1, 3):
            d = Digraph(n)
            assert d.n == n
            assert d.arc_count == 0

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            Digraph(-1)

    def test_add_arc_and_query(self):
        d = Digraph(2).add_arc(0, 1)
        assert d.has_arc(0, 1)
        assert not d.has_arc(1, 0)

    def test_add_arc_idempotent(self):
        d = Digraph(2).add_arc(0, 1).add_arc(0, 1)
        assert d.arc_count == 1

    def test_add_arc_returns_new_value(self):
        d = Digraph(2)
        d2 = d.add_arc(0, 1)
        assert d.arc_count == 0
        assert d2.arc_count == 1

    def test_loop_rejected(self):
        with pytest.raises(ValueError, match="loop"):
            Digraph(2).add_arc(0, 0)
        with pytest.raises(ValueError, match="loop"):
            Digraph(2, [(1, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="out of range"):
            Digraph(2).add_arc(0, 2)

    def test_antiparallel_pair_allowed(self):
        d = Digraph(2, [(0, 1), (1, 0)])
        assert d.arc_count == 2

    def test_value_semantics(self):
        a = Digraph(3, [(0, 1), (1, 2)])
        b = Digraph(3, [(1, 2), (0, 1)])
        assert a == b
        assert hash(a) == hash(b)
        assert a != Digraph(3, [(0, 1)])


class TestNeighborhoods:
    def test_path_neighbors(self, path_012):
        assert path_012.neighbors(1) == {0, 2}

    def test_two_cycle_counted_once(self, two_cycle):
        assert two_cycle.neighbors(0) == {1}

    def test_isolated_vertex(self):
        assert Digraph(3).neighbors(0) == frozenset()

    def test_closed_neighborhood(self, path_012, two_cycle):
        assert Digraph(1).closed_neighborhood(0) == {0}
        assert path_012.closed_neighborhood(1) == {0, 1, 2}
        assert two_cycle.closed_neighborhood(0) == {0, 1}

    def test_common_neighbors_star(self):
        star = Digraph(3, [(2, 0), (2, 1)])
        assert star.common_neighbors(0, 1) == {2}

    def test_common_neighbors_arcless(self):
        assert Digraph(4).common_neighbors(0, 1) == frozenset()

    def test_common_neighbors_mixed_directions(self):
        d = Digraph(3, [(0, 2), (2, 0), (1, 2), (2, 1), (0, 1)])
        assert d.common_neighbors(0, 1) == {2}

    def test_common_neighbors_same_vertex_rejected(self):
        with pytest.raises(ValueError):
            Digraph(3).common_neighbors(1, 1)

    @given(digraphs())
    @settings(max_examples=60)
    def test_neighbor_bounds(self, d):
        for v in range(d.n):
            nb = d.neighbors(v)
            assert v not in nb
            assert len(nb) <= d.n - 1


class TestInduced:
    def test_three_cycle_pair(self, three_cycle):
        sub = three_cycle.induced({0, 1})
        assert sub.n == 2
        assert sub.arcs == {(0, 1)}

    def test_full_set_is_copy(self, three_cycle):
        assert three_cycle.induced(range(3)) == three_cycle

    def test_empty_subset(self, three_cycle):
        assert three_cycle.induced(()) == Digraph(0)

    def test_invalid_subset(self, three_cycle):
        with pytest.raises(ValueError):
            three_cycle.induced({0, 5})

    def test_relabeling_is_order_preserving(self):
        d = Digraph(4, [(1, 3), (3, 2)])
        sub = d.induced({1, 2, 3})  # 1->0, 2->1, 3->2
        assert sub.arcs == {(0, 2), (2, 1)}

    @given(digraphs(), st.data())
    @settings(max_examples=60)
    def test_induced_has_exactly_internal_arcs(self, d, data):
        members = data.draw(st.sets(st.integers(0, max(d.n - 1, 0)), max_size=d.n)) if d.n else set()
        members = {v for v in members if v < d.n}
        sub = d.induced(members)
        ordered = sorted(members)
        rank = {v: i for i, v in enumerate(ordered)}
        expected = {
            (rank[u], rank[v]) for (u, v) in d.arcs if u in members and v in members
        }
        assert sub.arcs == expected


class TestAcyclicity:
    def test_named_cases(self, path_012, two_cycle):
        assert path_012.is_acyclic()
        assert not two_cycle.is_acyclic()
        assert Digraph(0).is_acyclic()
        assert Digraph(5).is_acyclic()

    def test_directed_cycles(self):
        for k in range(2, 7):
            assert not directed_cycle(k).is_acyclic()

    @staticmethod
    def _acyclic_by_topological_order(d: Digraph) -> bool:
        # independent oracle: some vertex order makes every arc go forward
        if d.n == 0:
            return True
        for perm in permutations(range(d.n)):
            pos = {v: i for i, v in enumerate(perm)}
            if all(pos[u] < pos[v] for u, v in d.arcs):
                return True
        return False

    def test_agrees_with_order_enumeration_small(self):
        for n in range(4):
            for d in enumerate_all(n):
                assert d.is_acyclic() == self._acyclic_by_topological_order(d)

    def test_agrees_with_order_enumeration_n4(self):
        for d in enumerate_all(4):
            assert d.is_acyclic() == self._acyclic_by_topological_order(d)

    @given(digraphs(max_n=5), st.data())
    @settings(max_examples=40)
    def test_acyclicity_is_hereditary(self, d, data):
        if not d.is_acyclic():
            return
        members = data.draw(st.sets(st.integers(0, max(d.n - 1, 0)), max_size=d.n)) if d.n else set()
        members = {v for v in members if v < d.n}
        assert d.induced(members).is_acyclic()


class TestContractPairs:
    def test_cross_arc_survives(self):
        # v1 -> w2 with pairs {v1, w1}, {v2, w2}
        v1, w1, v2, w2 = 0, 1, 2, 3
        d = Digraph(4, [(v1, w2)])
        c = d.contract_pairs([(v1, w1), (v2, w2)])
        assert c.arcs == {(0, 1)}

    def test_within_pair_arc_becomes_loop_and_is_dropped(self):
        d = Digraph(4, [(1, 0)])  # w1 -> v1
        c = d.contract_pairs([(0, 1), (2, 3)])
        assert c.arc_count == 0

    def test_parallel_arcs_collapse(self):
        v1, w1, v2, w2 = 0, 1, 2, 3
        d = Digraph(4, [(v1, v2), (w1, w2)])
        c = d.contract_pairs([(v1, w1), (v2, w2)])
        assert c.arcs == {(0, 1)}

    def test_overlapping_pairs_rejected(self):
        d = Digraph(4)
        with pytest.raises(ValueError, match="disjoint"):
            d.contract_pairs([(0, 1), (1, 2)])

    def test_degenerate_pair_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            Digraph(3).contract_pairs([(1, 1)])

    @given(digraphs(max_n=6), st.data())
    @settings(max_examples=60)
    def test_output_simple_with_bounded_arcs(self, d, data):
        if d.n < 2:
            return
        k = data.draw(st.integers(1, d.n // 2))
        verts = data.draw(st.permutations(range(d.n)))
        pairs = [(verts[2 * i], verts[2 * i + 1]) for i in range(k)]
        c = d.contract_pairs(pairs)
        assert c.n == k
        assert all(u != v for u, v in c.arcs)
        assert len(c.arcs) == len(set(c.arcs))
        assert c.arc_count <= k * (k - 1)

    @given(digraphs(max_n=6), st.data())
    @settings(max_examples=60)
    def test_arc_definition(self, d, data):
        if d.n < 2:
            return
        k = data.draw(st.integers(1, d.n // 2))
        verts = data.draw(st.permutations(range(d.n)))
        pairs = [(verts[2 * i], verts[2 * i + 1]) for i in range(k)]
        c = d.contract_pairs(pairs)
        for i in range(k):
            for j in range(k):
                if i == j:
                    continue
                expected = any(
                    d.has_arc(a, b) for a in pairs[i] for b in pairs[j]
                )
                assert c.has_arc(i, j) == expected


class TestTextFormat:
    def test_roundtrip(self, k3_bidirected):
        assert Digraph.from_text(k3_bidirected.to_text()) == k3_bidirected

    def test_output_sorted_one_based(self):
        d = Digraph(3, [(2, 0), (0, 2), (0, 1)])
        assert d.to_text() == "3 3\n1 2\n1 3\n3 1\n"

    def test_empty(self):
        assert Digraph(5).to_text() == "5 0\n"
        assert Digraph.from_text("5 0\n") == Digraph(5)

    @pytest.mark.parametrize(
        "text, line",
        [
            ("", 1),
            ("3\n", 1),
            ("a b\n", 1),
            ("3 2\n1 2\nX Y\n", 3),
            ("3 1\n1 4\n", 2),
            ("3 1\n2 2\n", 2),
            ("3 2\n1 2\n", 2),
        ],
    )
    def test_parse_errors_carry_line_numbers(self, text, line):
        with pytest.raises(DigraphParseError) as err:
            Digraph.from_text(text)
        assert err.value.line == line

    @given(digraphs())
    @settings(max_examples=60)
    def test_roundtrip_random(self, d):
        assert Digraph.from_text(d.to_text()) == d


def test_complete_digraph_arc_count():
    assert complete_digraph(4).arc_count == 12
