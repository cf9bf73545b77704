import itertools
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from prfeas.certify import (
    Certificate,
    UnresolvableWitness,
    dstar_lower_bound,
    generate_planted,
    resolve_witness_column,
    verify_d_solution,
    verify_p_certificate,
)
from prfeas.oracle import (
    CustomOracle,
    CustomWitness,
    FiniteLp,
    LpIndex,
    Sdp,
    SdpVector,
    Socp,
    SocpVector,
    WitnessedColumn,
)


def axes_lp():
    return FiniteLp(np.eye(2))


def antipodal_lp():
    return FiniteLp(np.array([[1.0, -1.0], [0.0, 0.0]]))


def indefinite_sdp():
    return Sdp(np.array([
        [[1.0, 0.0], [0.0, -1.0]],
        [[-1.0, 0.0], [0.0, 1.0]],
    ]))


class TestVerifyDSolution:
    def test_interior_accepted_with_margin(self):
        rep = verify_d_solution(axes_lp(), np.array([1.0, 2.0]))
        assert rep.kind == "d"
        assert rep.accepted
        assert rep.residual == pytest.approx(1.0)
        assert rep.details["min_margin"] == pytest.approx(1.0)

    def test_zero_margin_rejected(self):
        # strict inequality: touching a constraint is a violation
        rep = verify_d_solution(axes_lp(), np.array([1.0, 0.0]))
        assert not rep.accepted
        assert rep.residual == pytest.approx(0.0, abs=1e-15)

    def test_negative_margin_rejected(self):
        rep = verify_d_solution(axes_lp(), np.array([-1.0, 1.0]))
        assert not rep.accepted
        assert rep.residual == pytest.approx(-1.0)

    def test_sdp_margin_is_smallest_eigenvalue(self):
        inst = Sdp(np.array([[[2.0, 0.0], [0.0, 0.5]]]))
        rep = verify_d_solution(inst, np.array([1.0]))
        assert rep.accepted
        assert rep.residual == pytest.approx(0.5)

    def test_socp_margin(self):
        inst = Socp(np.array([[1.0, 0.0, 0.0],
                              [0.0, 0.3, 0.0]]), blocks=(3,))
        rep = verify_d_solution(inst, np.array([1.0, 1.0]))
        # x = (1, 0.3, 0): margin 1 - 0.3
        assert rep.accepted
        assert rep.residual == pytest.approx(0.7)

    def test_json_payload_round_trips(self):
        rep = verify_d_solution(axes_lp(), np.array([1.0, 2.0]))
        d = rep.to_json_dict()
        assert d["schema"] == 1
        assert d["kind"] == "d"
        assert d["accepted"] is True


class TestVerifyPCertificate:
    def test_cancelling_pair_accepted(self):
        rep = verify_p_certificate(
            antipodal_lp(), [(LpIndex(0), 0.5), (LpIndex(1), 0.5)])
        assert rep.kind == "p"
        assert rep.accepted
        assert rep.residual == 0.0
        assert rep.details["support"] == 2

    def test_non_cancelling_rejected(self):
        rep = verify_p_certificate(axes_lp(), [(LpIndex(0), 1.0)])
        assert not rep.accepted
        assert rep.residual == pytest.approx(1.0)

    def test_empty_weights_raise(self):
        with pytest.raises(ValueError):
            verify_p_certificate(axes_lp(), [])

    @pytest.mark.parametrize("bad", [0.0, -0.5, math.nan, math.inf])
    def test_bad_weight_values_raise(self, bad):
        with pytest.raises(ValueError):
            verify_p_certificate(
                antipodal_lp(), [(LpIndex(0), 0.5), (LpIndex(1), bad)])

    def test_oversized_support_raises(self):
        weights = [(LpIndex(0), 0.25)] * 4  # m + 1 = 3 allowed
        with pytest.raises(ValueError):
            verify_p_certificate(antipodal_lp(), weights)

    def test_sdp_rank_one_witnesses(self):
        rep = verify_p_certificate(indefinite_sdp(), [
            (SdpVector((1.0, 0.0)), 0.5),
            (SdpVector((0.0, 1.0)), 0.5),
        ])
        assert rep.accepted
        assert rep.residual <= 1e-15

    def test_socp_boundary_witnesses(self):
        inst = Socp(np.array([[1.0, -1.0]]), blocks=(1, 1))
        rep = verify_p_certificate(inst, [
            (SocpVector((1.0, 0.0)), 0.5),
            (SocpVector((0.0, 1.0)), 0.5),
        ])
        assert rep.accepted

    def test_custom_witness_needs_stored_column(self):
        inst = CustomOracle(2, lambda y: None)
        with pytest.raises(UnresolvableWitness):
            verify_p_certificate(inst, [(CustomWitness(0.5), 1.0)])
        wc1 = WitnessedColumn(CustomWitness(0.5), np.array([1.0, 0.0]))
        wc2 = WitnessedColumn(CustomWitness(1.5), np.array([-1.0, 0.0]))
        rep = verify_p_certificate(inst, [(wc1, 0.5), (wc2, 0.5)])
        assert rep.accepted


class TestResolveWitnessColumn:
    def test_lp_index_out_of_range(self):
        with pytest.raises(UnresolvableWitness):
            resolve_witness_column(axes_lp(), LpIndex(2))

    def test_cross_kind_witness_rejected(self):
        with pytest.raises(UnresolvableWitness):
            resolve_witness_column(indefinite_sdp(), LpIndex(0))
        with pytest.raises(UnresolvableWitness):
            resolve_witness_column(axes_lp(), SdpVector((1.0, 0.0)))

    def test_sdp_vector_must_be_unit(self):
        with pytest.raises(UnresolvableWitness):
            resolve_witness_column(indefinite_sdp(), SdpVector((2.0, 0.0)))
        with pytest.raises(UnresolvableWitness):
            resolve_witness_column(indefinite_sdp(), SdpVector((1.0,)))

    def test_sdp_column_is_quadratic_form(self):
        _, col = resolve_witness_column(indefinite_sdp(),
                                        SdpVector((0.0, 1.0)))
        assert_allclose(col, np.array([-1.0, 1.0]), atol=0)

    def test_socp_block_structure_enforced(self):
        inst = Socp(np.array([[1.0, -1.0]]), blocks=(1, 1))
        with pytest.raises(UnresolvableWitness):
            resolve_witness_column(inst, SocpVector((0.0, 0.0)))
        with pytest.raises(UnresolvableWitness):
            resolve_witness_column(inst, SocpVector((2.0, 0.0)))
        inst2 = Socp(np.array([[1.0, 0.0, 0.5]]), blocks=(3,))
        with pytest.raises(UnresolvableWitness):
            # tail longer than the lead violates the cone bound
            resolve_witness_column(inst2, SocpVector((1.0, 2.0, 0.0)))

    def test_custom_witness_on_builtin_rejected(self):
        with pytest.raises(UnresolvableWitness):
            resolve_witness_column(axes_lp(), CustomWitness(1.0))


class TestGeneratePlanted:
    KINDS = ["lp", "sdp", "socp"]

    @pytest.mark.parametrize("kind,m,n", [
        (k, m, n) for k in KINDS for m, n in [(1, 3), (2, 5), (4, 7)]
    ])
    def test_interior_target_verifies_with_margin(self, kind, m, n):
        inst, cert = generate_planted(kind, m=m, n=n, seed=m * 100 + n,
                                      target="feasible_d")
        assert cert.kind == "d"
        rep = verify_d_solution(inst, cert.y)
        assert rep.accepted
        assert rep.residual >= 0.1 - 1e-9

    @pytest.mark.parametrize("kind,m,n", [
        (k, m, n) for k in KINDS for m, n in [(1, 3), (2, 5), (4, 7)]
    ])
    def test_degenerate_target_verifies(self, kind, m, n):
        inst, cert = generate_planted(kind, m=m, n=n, seed=m * 100 + n,
                                      target="feasible_p")
        assert cert.kind == "p"
        assert 1 <= len(cert.weights) <= m + 1
        rep = verify_p_certificate(inst, cert.weights)
        assert rep.accepted
        assert rep.residual <= 1e-10

    def test_same_seed_reproduces_instance(self):
        a, ca = generate_planted("lp", m=3, n=8, seed=42)
        b, cb = generate_planted("lp", m=3, n=8, seed=42)
        assert np.array_equal(a.columns, b.columns)
        assert np.array_equal(ca.y, cb.y)
        c, _ = generate_planted("lp", m=3, n=8, seed=43)
        assert not np.array_equal(a.columns, c.columns)

    def test_socp_block_partition_is_seeded(self):
        a, _ = generate_planted("socp", m=2, n=9, seed=7)
        b, _ = generate_planted("socp", m=2, n=9, seed=7)
        assert a.blocks == b.blocks
        assert sum(a.blocks) == 9

    @pytest.mark.parametrize("kwargs", [
        dict(kind="qp", m=2, n=3, seed=0),
        dict(kind="lp", m=0, n=3, seed=0),
        dict(kind="lp", m=2, n=0, seed=0),
        dict(kind="lp", m=2, n=3, seed=0, target="bogus"),
        dict(kind="lp", m=2, n=1, seed=0, target="feasible_p"),
        dict(kind="sdp", m=2, n=1, seed=0, target="feasible_p"),
        dict(kind="socp", m=2, n=1, seed=0, target="feasible_p"),
    ])
    def test_invalid_requests_rejected(self, kwargs):
        with pytest.raises(ValueError):
            generate_planted(**kwargs)


class TestDstarLowerBound:
    def test_too_few_samples(self):
        assert dstar_lower_bound([np.array([1.0, 0.0])], 2) == 0.0

    def test_two_axis_samples(self):
        s = [np.array([0.99, 0.0]), np.array([0.0, 0.99])]
        assert dstar_lower_bound(s, 2) == pytest.approx(0.9801, abs=1e-15)

    def test_scaling_by_delta_to_the_m(self):
        rng = np.random.default_rng(8)
        samples = [rng.uniform(-0.5, 0.5, size=2) for _ in range(5)]
        base = dstar_lower_bound(samples, 2)
        scaled = dstar_lower_bound([0.5 * s for s in samples], 2)
        assert scaled == pytest.approx(0.25 * base, rel=1e-12)

    def test_monotone_under_new_samples(self):
        rng = np.random.default_rng(13)
        samples = [rng.uniform(-0.5, 0.5, size=3) for _ in range(6)]
        small = dstar_lower_bound(samples[:4], 3)
        big = dstar_lower_bound(samples, 3)
        assert big >= small - 1e-15

    def test_linear_map_equivariance(self):
        # applying M^-1 to every sample multiplies each m-subset
        # determinant by det(M^-1) exactly
        rng = np.random.default_rng(30)
        M = rng.standard_normal((3, 3)) + 3.0 * np.eye(3)
        Minv = np.linalg.inv(M)
        samples = [rng.uniform(-0.4, 0.4, size=3) for _ in range(6)]
        mapped = [Minv @ s for s in samples]
        for idx in itertools.combinations(range(6), 3):
            d0 = np.linalg.det(np.array([samples[i] for i in idx]))
            d1 = np.linalg.det(np.array([mapped[i] for i in idx]))
            assert d1 == pytest.approx(np.linalg.det(Minv) * d0, rel=1e-10)
        lhs = dstar_lower_bound(mapped, 3)
        rhs = abs(np.linalg.det(Minv)) * dstar_lower_bound(samples, 3)
        assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_large_sample_set_stays_deterministic_lower_bound(self):
        rng = np.random.default_rng(77)
        samples = [rng.uniform(-0.5, 0.5, size=2) for _ in range(40)]
        est = dstar_lower_bound(samples, 2)
        exact = max(
            abs(np.linalg.det(np.array([samples[i], samples[j]])))
            for i, j in itertools.combinations(range(40), 2)
        )
        assert 0.0 < est <= exact + 1e-15
        assert est == dstar_lower_bound(samples, 2)


class TestCertificateContainer:
    def test_kinds_are_exclusive(self):
        _, cert = generate_planted("lp", m=2, n=4, seed=1,
                                   target="feasible_d")
        assert isinstance(cert, Certificate)
        assert cert.kind == "d" and cert.y is not None \
            and cert.weights is None
        _, cert = generate_planted("lp", m=2, n=4, seed=1,
                                   target="feasible_p")
        assert cert.kind == "p" and cert.weights is not None \
            and cert.y is None
