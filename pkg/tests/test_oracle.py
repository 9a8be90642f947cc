"""Numerical oracle: Iwasawa projection, cell maps, sampling, incidence,
flows.  Closed-form expectations are derived in-line; sampling checks use
fixed seeds."""

import math

import numpy as np
import pytest

from wtits import (
    FlowSpec,
    contraction_check,
    down_covers,
    enumerate_U,
    flow_step,
    incidence_test,
    iwasawa_K,
    load_preset,
    psi_rank_one,
    psi_split,
    recover_morse,
    sample_schubert,
)
from wtits.oracle import (
    component_distance,
    _h_blocks,
    min_distance,
    rank_one_generators,
    schubert_agreement_report,
)


def as_float(u):
    return np.array(u.matrix, dtype=float)


class TestIwasawa:
    def test_identity_and_upper_triangular(self):
        assert np.allclose(iwasawa_K(np.eye(4)), np.eye(4))
        an = np.array([[2.0, 1.0, -3.0], [0.0, 0.5, 7.0], [0.0, 0.0, 4.0]])
        assert np.allclose(iwasawa_K(an), np.eye(3), atol=1e-12)

    def test_monomial_closed_form(self, sl3):
        s1 = as_float(sl3.generator(1))
        g = np.diag(np.exp([2.0, -1.0, -1.0])) @ s1
        assert np.allclose(iwasawa_K(g), s1, atol=1e-12)

    def test_idempotent_and_equivariant(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            m = rng.standard_normal((3, 3))
            if np.linalg.det(m) < 0:
                m[:, [0, 1]] = m[:, [1, 0]]
            k = iwasawa_K(m)
            assert np.allclose(iwasawa_K(k), k, atol=1e-10)
            m2 = rng.standard_normal((3, 3))
            if np.linalg.det(m2) < 0:
                m2[:, [0, 1]] = m2[:, [1, 0]]
            k2 = iwasawa_K(m2)
            assert np.allclose(iwasawa_K(k2 @ m), k2 @ iwasawa_K(m), atol=1e-9)

    def test_rejects_nonpositive_determinant(self):
        with pytest.raises(ValueError):
            iwasawa_K(np.diag([1.0, -1.0, 1.0]))
        with pytest.raises(ValueError):
            iwasawa_K(np.zeros((3, 3)))

    def test_flag_point_validator(self, sl3):
        from wtits import require_flag_point

        k = require_flag_point(as_float(sl3.generator(1)))
        assert k.shape == (3, 3)
        with pytest.raises(ValueError, match="orthogonal"):
            require_flag_point(np.diag([2.0, 1.0, 0.5]))
        with pytest.raises(ValueError, match="determinant"):
            require_flag_point(np.diag([1.0, 1.0, -1.0]))

    def test_factors_through_projection(self, sl3):
        # the step map only sees the K-part of its input
        nil = np.zeros((3, 3))
        nil[1, 2] = 1.0
        spec = FlowSpec(H=np.array([2.0, -1.0, -1.0]), nilpotent=nil)
        rng = np.random.default_rng(5)
        g = rng.standard_normal((3, 3))
        if np.linalg.det(g) < 0:
            g[:, [0, 1]] = g[:, [1, 0]]
        assert np.allclose(
            flow_step(spec, g), flow_step(spec, iwasawa_K(g)), atol=1e-9
        )


class TestPsiSplit:
    def test_endpoints(self, sl3, sl2):
        for preset in (sl3, sl2):
            for i in range(1, preset.rank + 1):
                s = preset.generator(i)
                assert np.allclose(psi_split(s, 0.0), np.eye(preset.n), atol=1e-12)
                assert np.allclose(psi_split(s, 0.5), as_float(s), atol=1e-12)
                assert np.allclose(psi_split(s, 1.0), as_float(s**2), atol=1e-12)

    def test_is_one_parameter_group(self, sl3):
        s = sl3.generator(1)
        a, b = 0.21, 0.47
        assert np.allclose(
            psi_split(s, a) @ psi_split(s, b), psi_split(s, a + b), atol=1e-12
        )

    def test_rejects_non_block_elements(self, sl3):
        with pytest.raises(ValueError):
            psi_split(sl3.generator(1) * sl3.generator(2), 0.3)


class TestPsiRankOne:
    def test_proof_identities_sampled(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            m = rng.integers(2, 6)
            v = rng.standard_normal(m)
            v /= np.linalg.norm(v)
            a, j = rank_one_generators(0.0, v)
            assert np.linalg.norm(a @ a + j) < 1e-10
            assert np.linalg.norm(a @ a @ a + a) < 1e-10
            assert abs(np.trace(a)) < 1e-12
            n = m + 1
            w = np.eye(n)
            w[0, 0] = w[1, 1] = -1.0
            assert np.allclose(psi_rank_one(0.0, v, 0.0), w, atol=1e-12)
            end = psi_rank_one(0.0, v, math.pi)
            assert abs(end[0, 0] - 1.0) < 1e-10
            assert np.allclose(end, (np.eye(n) - 2.0 * j) @ w, atol=1e-10)
            mid = psi_rank_one(0.0, v, 1.1)
            assert np.linalg.norm(mid.T @ mid - np.eye(n)) < 1e-10

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            psi_rank_one(0.0, np.zeros(3), 0.2)
        with pytest.raises(ValueError):
            psi_rank_one(0.5, np.array([math.sqrt(0.75), 0.0]), 0.2)
        with pytest.raises(ValueError):
            psi_rank_one(0.0, np.array([2.0, 0.0]), 0.2)


class TestSampling:
    def test_identity_cell_is_single_point(self, sl3):
        sample = sample_schubert(sl3.identity(), 500, 42)
        assert sample.points.shape == (1, 3, 3)
        assert np.allclose(sample.points[0], np.eye(3))

    def test_interior_point_hits_element(self, sl3):
        for u in enumerate_U(sl3):
            sample = sample_schubert(u, 10, 42)
            assert np.allclose(sample.points[0], as_float(u), atol=1e-12)

    def test_grid_hits_covers_and_corners_hit_c_level(self, sl3):
        from wtits import down_set, enumerate_C

        u = sl3.generator(2) * sl3.generator(1)
        sample = sample_schubert(u, 0, 42)
        grid_rows = [
            i
            for i, t in enumerate(sample.parameters)
            if set(np.unique(t)) <= {0.0, 0.5, 1.0}
        ]
        grid_images = {
            tuple(np.rint(sample.points[i]).astype(int).ravel()) for i in grid_rows
        }
        cover_images = {tuple(np.array(v.matrix).ravel()) for v in down_covers(u)}
        down_images = {tuple(np.array(v.matrix).ravel()) for v in down_set(u)}
        # the distinguished grid realizes exactly the closed-cell elements
        assert cover_images <= grid_images
        assert grid_images == down_images
        # literal cube corners give the C-level elements below u
        corner_rows = [
            i
            for i, t in enumerate(sample.parameters)
            if t.size and set(np.unique(t)) <= {0.0, 1.0}
        ]
        corner_images = {
            tuple(np.rint(sample.points[i]).astype(int).ravel()) for i in corner_rows
        }
        c_images = {tuple(np.array(c.matrix).ravel()) for c in enumerate_C(sl3)}
        assert corner_images == c_images

    def test_deterministic_given_seed(self, sl3):
        u = sl3.generator(1) * sl3.generator(2)
        a = sample_schubert(u, 100, 7)
        b = sample_schubert(u, 100, 7)
        assert np.array_equal(a.points, b.points)
        c = sample_schubert(u, 100, 8)
        assert not np.array_equal(a.points, c.points)

    def test_rejects_non_split_preset(self, so24):
        with pytest.raises(ValueError):
            sample_schubert(so24.generator(1), 10, 42)


class TestIncidence:
    def test_examples(self, sl3):
        s1, s2 = sl3.generator(1), sl3.generator(2)
        sample = sample_schubert(s1, 10_000, 42)
        assert incidence_test(s1, sample, 1e-8)
        assert incidence_test(sl3.identity(), sample, 1e-2)
        assert not incidence_test(s2**2, sample, 1e-2)
        assert min_distance(s2**2, sample) > 1.9

    def test_small_count_agreement(self, sl3):
        report = schubert_agreement_report(sl3, count=500, seed=42)
        assert report["agree"] and report["margin_ok"]
        assert len(report["pairs"]) == 576


class TestFlow:
    def reference_flow(self):
        nil = np.zeros((3, 3))
        nil[1, 2] = 1.0
        return FlowSpec(H=np.array([2.0, -1.0, -1.0]), nilpotent=nil)

    def test_identity_flow_fixes_everything(self, sl3):
        spec = FlowSpec(H=np.zeros(3))
        x = as_float(sl3.generator(1))
        assert np.allclose(flow_step(spec, x), x, atol=1e-12)

    def test_reference_flow_fixes_identity(self):
        spec = self.reference_flow()
        assert np.allclose(flow_step(spec, np.eye(3)), np.eye(3), atol=1e-12)

    def test_trajectory_from_s1_stays_on_circle(self, sl3):
        spec = self.reference_flow()
        blocks = _h_blocks(spec.H)
        x = as_float(sl3.generator(1))
        for _ in range(500):
            x = flow_step(spec, x)
        assert component_distance(x, sl3.identity(), blocks) < 1e-6

    def test_flowspec_validation(self):
        with pytest.raises(ValueError, match="nonincreasing"):
            FlowSpec(H=np.array([-1.0, 2.0, -1.0]))
        with pytest.raises(ValueError, match="trace"):
            FlowSpec(H=np.array([1.0, 0.0, 0.0]))
        nil_low = np.zeros((3, 3))
        nil_low[2, 0] = 1.0
        with pytest.raises(ValueError, match="upper"):
            FlowSpec(H=np.zeros(3), nilpotent=nil_low)
        nil = np.zeros((3, 3))
        nil[0, 1] = 1.0  # does not commute with exp(H) for H = (2,-1,-1)
        with pytest.raises(ValueError, match="commute"):
            FlowSpec(H=np.array([2.0, -1.0, -1.0]), nilpotent=nil)

    def test_recover_morse_reference(self, sl3):
        report = recover_morse(sl3, self.reference_flow(), grid=16, iters=1200, seed=42)
        assert not report.degenerate
        assert report.theta == (1,)
        assert len(report.recurrent_points) == 12
        assert len(report.component_labels) == 6
        assert report.components_found() == 6
        assert report.recurrent_per_component == (2,) * 6
        assert not report.non_convergent
        assert max(report.limit_distances) < 1e-4
        assert len(report.attractor_components) == 2
        for a in report.component_assignment[24:]:
            assert a in report.attractor_components

    def test_recover_morse_regular(self, sl3):
        spec = FlowSpec(H=np.array([1.0, 0.0, -1.0]))
        report = recover_morse(sl3, spec, grid=4, iters=200, seed=3)
        assert len(report.recurrent_points) == 24
        assert len(report.component_labels) == 24

    def test_recover_morse_degenerate(self, sl3):
        report = recover_morse(sl3, FlowSpec(H=np.zeros(3)), grid=0, iters=1, seed=3)
        assert report.degenerate


class TestContraction:
    def test_zero_nilpotent(self):
        res = contraction_check([2.0, -1.0, -1.0], np.zeros((3, 3)), k_max=6)
        assert res == [0.0] * 7

    def test_single_root_rate(self):
        nil = np.zeros((3, 3))
        nil[0, 1] = 1.0
        res = contraction_check([2.0, -1.0, -1.0], nil, k_max=20)
        rate = math.exp(-3.0)
        for k in range(20):
            assert res[k + 1] < res[k]
            assert abs(res[k + 1] / res[k] / rate - 1) < 0.05
        assert res[20] < 1e-8

    def test_regular_full_upper(self):
        nil = np.triu(np.ones((3, 3)), k=1)
        res = contraction_check([1.0, 0.0, -1.0], nil, k_max=25)
        assert all(res[k + 1] < res[k] for k in range(25))
        assert res[25] < 1e-8

    def test_support_violation(self):
        nil = np.zeros((3, 3))
        nil[1, 2] = 1.0  # alpha(H) = 0 on the (2,3) root for this H
        with pytest.raises(ValueError, match="alpha"):
            contraction_check([2.0, -1.0, -1.0], nil, k_max=5)
