import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bootperc.core import (
    ArityError,
    DuplicateVertexError,
    Hypergraph,
    LabelRangeError,
    VertexLabel,
    VertexRangeError,
    facets,
    id_to_label,
    label_to_id,
    layer_width,
    make_edge,
    supersets,
)


class TestMakeEdge:
    def test_sorts(self):
        assert make_edge((3, 1, 2), r=3) == (1, 2, 3)

    def test_duplicate_vertex(self):
        with pytest.raises(DuplicateVertexError):
            make_edge((1, 1, 2))

    def test_already_canonical(self):
        assert make_edge((0, 5, 9), n=11) == (0, 5, 9)

    def test_wrong_arity(self):
        with pytest.raises(ArityError):
            make_edge((0, 1), r=3)

    def test_out_of_range(self):
        with pytest.raises(VertexRangeError):
            make_edge((0, 5, 11), n=11)
        with pytest.raises(VertexRangeError):
            make_edge((-1, 2, 3))


class TestLabels:
    def test_first_vertex(self):
        assert label_to_id(VertexLabel(1, 1), k=2) == 0

    def test_layer_three_head(self):
        # (3-1)*5 + 0 with width 4k-3 = 5
        assert label_to_id(VertexLabel(3, 1), k=2) == 10

    def test_layer_two_tail(self):
        # (2-1)*5 + 4
        assert label_to_id(VertexLabel(2, 5), k=2) == 9

    def test_index_out_of_range(self):
        with pytest.raises(LabelRangeError):
            label_to_id(VertexLabel(1, 6), k=2)
        with pytest.raises(LabelRangeError):
            label_to_id(VertexLabel(1, 0), k=2)
        with pytest.raises(LabelRangeError):
            label_to_id(VertexLabel(0, 1), k=2)

    @given(
        k=st.integers(min_value=2, max_value=7),
        layer=st.integers(min_value=1, max_value=8),
        data=st.data(),
    )
    def test_round_trip(self, k, layer, data):
        index = data.draw(st.integers(min_value=1, max_value=layer_width(k)))
        label = VertexLabel(layer, index)
        vid = label_to_id(label, k)
        assert id_to_label(vid, k) == label

    @given(k=st.integers(min_value=2, max_value=7), vid=st.integers(min_value=0, max_value=200))
    def test_round_trip_from_id(self, k, vid):
        assert label_to_id(id_to_label(vid, k), k) == vid


class TestSupersets:
    def test_single_completion(self):
        assert supersets((0, 1, 2), n=4, m=4) == [(0, 1, 2, 3)]

    def test_two_completions(self):
        assert supersets((0, 1, 2), n=5, m=4) == [(0, 1, 2, 3), (0, 1, 2, 4)]

    def test_no_spare_vertex(self):
        assert supersets((0, 1, 2), n=3, m=4) == []

    def test_m_not_above_arity(self):
        with pytest.raises(ValueError):
            supersets((0, 1, 2), n=5, m=3)

    def test_interleaved_vertices_stay_sorted(self):
        assert supersets((1, 3), n=5, m=3) == [(0, 1, 3), (1, 2, 3), (1, 3, 4)]

    @given(
        n=st.integers(min_value=3, max_value=10),
        data=st.data(),
    )
    def test_count_matches_spare_vertices(self, n, data):
        r = data.draw(st.integers(min_value=2, max_value=n - 1))
        e = tuple(sorted(data.draw(
            st.sets(st.integers(min_value=0, max_value=n - 1), min_size=r, max_size=r)
        )))
        assert len(supersets(e, n, r + 1)) == n - r


class TestFacets:
    def test_drop_position_order(self):
        assert facets((0, 1, 2, 3)) == [(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)]

    def test_arity(self):
        out = facets((2, 5, 7, 9))
        assert len(out) == 4 and all(len(f) == 3 for f in out)

    def test_larger_tuple(self):
        out = facets((0, 2, 4, 6, 8))
        assert len(out) == 5 and all(len(f) == 4 for f in out)

    @given(st.sets(st.integers(min_value=0, max_value=30), min_size=2, max_size=7))
    def test_distinct_sorted_subsets(self, vertices):
        t = tuple(sorted(vertices))
        out = facets(t)
        assert len(set(out)) == len(t)
        for f in out:
            assert set(f) < set(t)
            assert f == tuple(sorted(f))


class TestHypergraph:
    def test_lexicographic_iteration(self):
        g = Hypergraph.from_edges(5, 3, [(2, 3, 4), (0, 1, 2), (0, 2, 4)])
        assert list(g) == [(0, 1, 2), (0, 2, 4), (2, 3, 4)]

    def test_membership_and_len(self):
        g = Hypergraph.from_edges(4, 2, [(1, 0), (2, 3)])
        assert (0, 1) in g and (2, 3) in g and (0, 2) not in g
        assert len(g) == 2

    def test_duplicate_edges_collapse(self):
        g = Hypergraph.from_edges(4, 2, [(0, 1), (1, 0)])
        assert len(g) == 1

    def test_complete_count(self):
        assert len(Hypergraph.complete(6, 3)) == 20
        assert Hypergraph.complete(4, 3).max_edges() == 4

    def test_validation(self):
        with pytest.raises(ArityError):
            Hypergraph.from_edges(4, 3, [(0, 1)])
        with pytest.raises(VertexRangeError):
            Hypergraph.from_edges(3, 3, [(0, 1, 3)])
        with pytest.raises(DuplicateVertexError):
            Hypergraph(n=4, r=3, edges=frozenset({(0, 1, 1)}))
        with pytest.raises(DuplicateVertexError):
            Hypergraph(n=4, r=3, edges=frozenset({(2, 1, 0)}))

    def test_with_and_without(self):
        g = Hypergraph.from_edges(4, 3, [(0, 1, 2)])
        g2 = g.with_edges([(1, 2, 3)])
        assert len(g2) == 2 and len(g) == 1
        g3 = g2.without((0, 1, 2))
        assert list(g3) == [(1, 2, 3)]

    def test_padded(self):
        g = Hypergraph.from_edges(4, 3, [(0, 1, 2)]).padded(10)
        assert g.n == 10 and len(g) == 1
        with pytest.raises(ValueError):
            g.padded(3)

    def test_equality_is_structural(self):
        a = Hypergraph.from_edges(4, 3, [(0, 1, 2)])
        b = Hypergraph.from_edges(4, 3, [(2, 1, 0)])
        assert a == b

    def test_immutable(self):
        g = Hypergraph.from_edges(4, 3, [(0, 1, 2)])
        with pytest.raises(AttributeError):
            g.n = 5  # type: ignore[misc]


def test_facets_of_supersets_cover_edge():
    e = (1, 4, 6)
    for t in supersets(e, n=8, m=4):
        assert e in facets(t)
        assert set(e) < set(t)


def test_supersets_general_m():
    e = (0, 1)
    out = supersets(e, n=5, m=4)
    assert out == [tuple(sorted((0, 1) + extra))
                   for extra in itertools.combinations([2, 3, 4], 2)]
