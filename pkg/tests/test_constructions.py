import warnings
from fractions import Fraction
from math import comb, floor

import pytest

from bootperc import (
    CertificateError,
    base_running_time,
    build_base,
    build_full,
    full_running_time,
    glue,
    k_for_n,
    lift,
    predicted_base_edge,
    run_fast,
    theorem_bounds,
    witness_for_n,
)
from bootperc.core import VertexLabel, label_to_id, layer_width


def vid(layer, index, k):
    return label_to_id(VertexLabel(layer, index), k)


class TestBuildBase:
    def test_k2_shape(self):
        cert = build_base(2)
        assert cert.graph.n == 11
        assert len(cert.graph) == 21  # 12 scaffold + 8 apex-strip + ignition
        assert cert.predicted_t == 12
        assert cert.ignition == (0, 5, 10)
        assert cert.apex == 10

    @pytest.mark.parametrize("k,t", [(2, 12), (3, 40), (4, 84), (5, 144)])
    def test_predicted_running_time(self, k, t):
        cert = build_base(k)
        assert cert.predicted_t == t == base_running_time(k)
        assert cert.graph.n == 2 * layer_width(k) + 1
        assert len(cert.sequence) == 8 * k * k - 12 * k + 5

    def test_edge_count_closed_form(self):
        # scaffold size equals the running time; strip contributes 2(4k-4)
        for k in range(2, 6):
            cert = build_base(k)
            assert len(cert.graph) == base_running_time(k) + (8 * k - 8) + 1

    def test_apex_in_every_sequence_edge(self):
        cert = build_base(3)
        assert all(cert.apex in e for e in cert.sequence)

    def test_sequence_edges_outside_graph(self):
        cert = build_base(3)
        assert all(e not in cert.graph for e in cert.sequence[1:])

    def test_rejects_small_k(self):
        with pytest.raises(ValueError):
            build_base(1)


class TestPredictedBaseEdge:
    def test_first_step(self):
        assert predicted_base_edge(2, 1) == (vid(1, 1, 2), vid(2, 2, 2), vid(3, 1, 2))

    def test_step_five(self):
        assert predicted_base_edge(2, 5) == (vid(1, 2, 2), vid(2, 5, 2), vid(3, 1, 2))

    def test_last_step(self):
        assert predicted_base_edge(2, 12) == (vid(1, 3, 2), vid(2, 3, 2), vid(3, 1, 2))

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_final_edge_uses_middle_vertices(self, k):
        e = predicted_base_edge(k, base_running_time(k))
        assert e == tuple(sorted((vid(1, 2 * k - 1, k), vid(2, 2 * k - 1, k), vid(3, 1, k))))

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_interval_cases_partition_all_steps(self, k):
        seen = set()
        for i in range(1, base_running_time(k) + 1):
            e = predicted_base_edge(k, i)
            assert len(e) == 3
            seen.add(e)
        assert len(seen) == base_running_time(k)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            predicted_base_edge(2, 0)
        with pytest.raises(ValueError):
            predicted_base_edge(2, 13)


class TestGlue:
    def test_shape_k2(self):
        glued = glue(build_base(2), 2)
        assert glued.graph.n == 15
        assert glued.predicted_t == 3 * 12 + 4 == 40
        assert glued.apex is None
        assert glued.ignition == (0, 5, 10)
        assert len(glued.sequence) == glued.predicted_t + 1

    def test_sequence_length_identity(self):
        for k in (2, 3):
            glued = glue(build_base(k), k)
            t1 = base_running_time(k)
            assert len(glued.sequence) == (2 * k - 1) * (t1 + 1) + 2 * k - 2

    @pytest.mark.parametrize("k", [2, 3])
    def test_first_bridge_gadget_exact(self, k):
        # the edges within {v^1_{2k-1}, v^2_{2k-1}, v^3_1, v^3_2, v^3_3} are the
        # four bridge edges pairing each stub vertex with two consecutive new ones
        glued = glue(build_base(k), k)
        a, b = vid(1, 2 * k - 1, k), vid(2, 2 * k - 1, k)
        t1, t2, t3 = (vid(3, j, k) for j in (1, 2, 3))
        inside = {e for e in glued.graph if set(e) <= {a, b, t1, t2, t3}}
        assert inside == {(a, t1, t2), (b, t1, t2), (a, t2, t3), (b, t2, t3)}
        if k == 2:
            assert inside == {(2, 10, 11), (7, 10, 11), (2, 11, 12), (7, 11, 12)}

    def test_gadget_exclusions_hold(self):
        # no edge joins two top-layer vertices two apart, none swallows a whole stub
        for k in (2, 3):
            cert = build_base(k)
            glued = glue(cert, k)
            first_stub = set(cert.ignition) - {cert.apex}
            last_stub = set(cert.sequence[-1]) - {cert.apex}
            w = layer_width(k)
            top = [vid(3, j, k) for j in range(1, w + 1)]
            for e in glued.graph:
                es = set(e)
                for j in range(1, k):
                    assert not {top[4 * j - 4], top[4 * j - 2]} <= es or not (
                        es <= {top[4 * j - 4], top[4 * j - 3], top[4 * j - 2]} | last_stub
                    )
                    assert not {top[4 * j - 2], top[4 * j]} <= es or not (
                        es <= {top[4 * j - 2], top[4 * j - 1], top[4 * j]} | first_stub
                    )
                if es & last_stub == last_stub:
                    assert not any(t in es for t in top[1::2])
                if es & first_stub == first_stub:
                    assert e == cert.ignition or not any(t in es for t in top[1::2])

    def test_requires_apex(self):
        glued = glue(build_base(2), 2)
        with pytest.raises(CertificateError):
            glue(glued, 2)

    def test_requires_matching_k(self):
        with pytest.raises(ValueError):
            glue(build_base(2), 3)

    def test_requires_k_at_least_two(self):
        with pytest.raises(ValueError):
            glue(build_base(2), 1)


class TestLift:
    def test_shape(self):
        glued = glue(build_base(2), 2)
        lifted = lift(glued)
        assert lifted.graph.n == 16
        assert lifted.r == 4
        assert len(lifted.graph) == len(glued.graph) + comb(15, 4)
        assert lifted.predicted_t == glued.predicted_t == 40
        assert lifted.apex == 15

    def test_sequence_gains_apex(self):
        glued = glue(build_base(2), 2)
        lifted = lift(glued)
        assert lifted.sequence[0] == glued.ignition + (15,)
        assert all(15 in e for e in lifted.sequence)
        assert len(lifted.sequence) == len(glued.sequence)

    def test_rejects_apexed_certificate(self):
        with pytest.raises(CertificateError):
            lift(build_base(2))


class TestBuildFull:
    @pytest.mark.parametrize(
        "r,k,t", [(3, 2, 40), (4, 2, 124), (5, 2, 376), (3, 3, 208)]
    )
    def test_predicted_running_time(self, r, k, t):
        cert = build_full(r, k)
        assert cert.predicted_t == t == full_running_time(r, k)
        assert cert.graph.n == r * layer_width(k)
        assert cert.apex is None

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            build_full(2, 2)
        with pytest.raises(ValueError):
            build_full(3, 1)

    def test_three_uniform_full_is_glued_base(self):
        assert build_full(3, 2) == glue(build_base(2), 2)


class TestTheoremBounds:
    def test_r3_n18(self):
        b = theorem_bounds(3, 18)
        assert b.lower == Fraction(5832, 1728) == Fraction(27, 8)
        assert b.upper_exact == 816
        assert b.k_of_n == 2

    def test_warns_below_threshold(self):
        with pytest.warns(UserWarning, match="2r\\^2"):
            theorem_bounds(3, 12)

    def test_no_warning_at_threshold(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            theorem_bounds(3, 18)

    def test_r4_n32(self):
        b = theorem_bounds(4, 32)
        assert b.k_of_n == 2
        assert b.lower == Fraction(32**4, 2**7 * 4**4) == 32

    def test_rejects_small_r(self):
        with pytest.raises(ValueError):
            theorem_bounds(2, 10)

    def test_lower_below_trivial_cap(self):
        for r, n in [(3, 18), (3, 30), (4, 32), (5, 50)]:
            b = theorem_bounds(r, n)
            assert b.lower <= b.upper_exact
            assert float(b.lower) <= b.upper_analytic

    def test_k_for_n_matches_exact_rational_floor(self):
        for r in (3, 4, 5):
            for n in range(r, 80):
                assert k_for_n(r, n) == floor((Fraction(n, r) + 3) / 4)


class TestWitnessForN:
    def test_pads_with_isolated_vertices(self):
        w = witness_for_n(3, 18)
        assert w.n == 18
        assert w.edges == build_full(3, 2).graph.edges

    def test_running_time_between_bounds(self):
        w = witness_for_n(3, 18)
        t = run_fast(w).running_time
        b = theorem_bounds(3, 18)
        assert t == 40
        assert b.lower <= t <= b.upper_exact

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            witness_for_n(3, 15)


class TestCertificateValidation:
    def test_sequence_head_must_be_ignition(self):
        cert = build_base(2)
        with pytest.raises(CertificateError):
            type(cert)(
                graph=cert.graph,
                ignition=cert.ignition,
                sequence=cert.sequence[1:],
                r=3,
                k=2,
                predicted_t=11,
                apex=cert.apex,
            )

    def test_ignition_must_be_in_graph(self):
        cert = build_base(2)
        with pytest.raises(CertificateError):
            type(cert)(
                graph=cert.graph.without(cert.ignition),
                ignition=cert.ignition,
                sequence=cert.sequence,
                r=3,
                k=2,
                predicted_t=12,
                apex=cert.apex,
            )

    def test_sequence_edges_must_be_fresh(self):
        cert = build_base(2)
        bad = cert.sequence[:5] + (cert.graph.sorted_edges[0],) + cert.sequence[6:]
        with pytest.raises(CertificateError):
            type(cert)(
                graph=cert.graph,
                ignition=cert.ignition,
                sequence=bad,
                r=3,
                k=2,
                predicted_t=12,
                apex=cert.apex,
            )

    def test_predicted_t_must_match_length(self):
        cert = build_base(2)
        with pytest.raises(CertificateError):
            type(cert)(
                graph=cert.graph,
                ignition=cert.ignition,
                sequence=cert.sequence,
                r=3,
                k=2,
                predicted_t=13,
                apex=cert.apex,
            )

    def test_apex_must_hit_every_sequence_edge(self):
        cert = build_base(2)
        with pytest.raises(CertificateError):
            type(cert)(
                graph=cert.graph,
                ignition=cert.ignition,
                sequence=cert.sequence,
                r=3,
                k=2,
                predicted_t=12,
                apex=0,
            )


def test_scaffold_is_apex_free_and_strip_is_path_local():
    cert = build_base(3)
    apex = cert.apex
    strip = {e for e in cert.graph if apex in e and e != cert.ignition}
    scaffold = {e for e in cert.graph if apex not in e}
    assert len(strip) == 2 * (4 * 3 - 4)
    w = layer_width(3)
    for e in strip:
        rest = [v for v in e if v != apex]
        assert rest[0] // w == rest[1] // w  # same path
        assert rest[1] - rest[0] == 1  # consecutive
    for e in scaffold:
        layers = sorted(v // w for v in e)
        assert layers in ([0, 0, 1], [0, 1, 1])


def test_glued_certificate_replays_exactly():
    cert = build_full(3, 2)
    res = run_fast(cert.graph)
    assert res.running_time == 40
    for i in range(1, 41):
        assert res.trace.at(i) == {cert.sequence[i]}
