import math

import numpy as np
import pytest
from conftest import make_standard_scene

from cmradar.pipeline import PipelineConfig, default_delta_min, halve_region, optimize_waveform
from cmradar.projection import ArcRegion, phase_offset, region_from_similarity
from cmradar.reference import chirp_reference
from cmradar.scene import Clutter, Scene


@pytest.fixture(scope="module")
def run_half():
    scene = make_standard_scene()
    t0 = chirp_reference(4, 16).vector
    return scene, t0, optimize_waveform(scene, t0, PipelineConfig(epsilon=0.5))


def small_scene():
    return Scene(2, 3, 4, math.radians(10.0), 10.0, (Clutter(math.radians(-30.0), 100.0),))


class TestHalveRegion:
    def test_lower_half(self):
        r = ArcRegion(np.array([0.0]), 1.0)
        out = halve_region(r, np.exp(1j * np.array([0.2])))
        assert out.delta == 0.5
        assert out.omega[0] == 0.0

    def test_upper_half(self):
        r = ArcRegion(np.array([0.0]), 1.0)
        out = halve_region(r, np.exp(1j * np.array([0.8])))
        assert out.omega[0] == pytest.approx(0.5)

    def test_midpoint_goes_low(self):
        r = ArcRegion(np.array([0.25]), 1.0)
        out = halve_region(r, np.exp(1j * np.array([0.75])))
        assert out.omega[0] == pytest.approx(0.25)

    def test_endpoints(self):
        r = ArcRegion(np.array([1.0, 1.0]), 0.5)
        out = halve_region(r, np.exp(1j * np.array([1.0, 1.5])))
        np.testing.assert_allclose(out.omega, [1.0, 1.25])

    def test_phase_just_below_start_is_feasible(self):
        r = ArcRegion(np.array([1.0]), 0.5)
        out = halve_region(r, np.exp(1j * np.array([1.0 - 1e-9])))
        assert out.omega[0] == 1.0

    def test_wraps_across_pi(self):
        r = ArcRegion(np.array([3.0]), 1.0)
        out = halve_region(r, np.exp(1j * np.array([3.9 - 2 * math.pi])))
        assert out.omega[0] == pytest.approx(3.5)

    def test_infeasible(self):
        r = ArcRegion(np.array([0.0]), 0.5)
        with pytest.raises(ValueError, match="infeasible refinement input"):
            halve_region(r, np.exp(1j * np.array([1.0])))

    def test_nested(self, rng):
        omega = rng.uniform(-np.pi, np.pi, 20)
        r = ArcRegion(omega, 2.0)
        t = np.exp(1j * (omega + rng.uniform(0, 2.0, 20)))
        out = halve_region(r, t)
        off = phase_offset(out.omega, omega)
        assert np.all((np.abs(off) < 1e-12) | (np.abs(off - 1.0) < 1e-12))
        assert np.all(out.contains_phase(np.angle(t), tol=1e-12))


class TestDefaults:
    def test_delta_min_floor(self):
        assert default_delta_min(0.5) == 1e-3

    def test_delta_min_relative(self):
        assert default_delta_min(4.0) == pytest.approx(4.0 / 1024)

    def test_epsilon_range(self):
        with pytest.raises(ValueError, match="similarity parameter out of range"):
            PipelineConfig(epsilon=2.5)

    def test_delta_min_positive(self):
        with pytest.raises(ValueError):
            PipelineConfig(epsilon=0.5, delta_min=0.0)


class TestOptimize:
    def test_zero_epsilon_returns_reference(self):
        scene = small_scene()
        t0 = chirp_reference(2, 4).vector
        rec = optimize_waveform(scene, t0, PipelineConfig(epsilon=0.0))
        np.testing.assert_array_equal(rec.final_waveform, t0)
        assert rec.refinements == 0
        assert len(rec.sinr_trajectory_db) == 1
        assert rec.final_sinr_db == rec.reference_sinr_db

    def test_rejects_wrong_size(self):
        with pytest.raises(ValueError, match="dimension error"):
            optimize_waveform(small_scene(), np.ones(5) / math.sqrt(5), PipelineConfig(epsilon=0.5))

    def test_rejects_non_constant_modulus(self):
        t = chirp_reference(2, 4).vector.copy()
        t[0] *= 1.1
        with pytest.raises(ValueError, match="constant-modulus"):
            optimize_waveform(small_scene(), t, PipelineConfig(epsilon=0.5))

    def test_similarity_and_modulus(self, run_half):
        _, t0, rec = run_half
        t = rec.final_waveform
        # epsilon bounds the per-entry distance at unit modulus
        assert math.sqrt(t.size) * np.max(np.abs(t - t0)) <= 0.5 + 1e-6
        np.testing.assert_allclose(np.abs(t), 1 / 8, atol=1e-12)

    def test_delta_halves_each_refinement(self, run_half):
        _, t0, rec = run_half
        d = np.array(rec.per_refinement_delta)
        assert d[0] == pytest.approx(region_from_similarity(t0, 0.5).delta, rel=1e-15)
        np.testing.assert_allclose(d[1:], d[:-1] / 2, rtol=1e-15)

    def test_refinement_count(self, run_half):
        _, _, rec = run_half
        d0 = rec.initial_delta
        expected = math.ceil(math.log2(d0 / default_delta_min(d0)))
        assert rec.refinements == expected
        assert len(rec.sinr_trajectory_db) == expected + 1
        assert len(rec.inner_iterations) == expected

    def test_best_so_far(self, run_half):
        _, _, rec = run_half
        assert rec.final_sinr_db == max(rec.sinr_trajectory_db)
        assert rec.final_sinr_db > rec.reference_sinr_db

    def test_converged(self, run_half):
        assert run_half[2].converged

    def test_deterministic(self):
        scene = small_scene()
        t0 = chirp_reference(2, 4).vector
        a = optimize_waveform(scene, t0, PipelineConfig(epsilon=1.0))
        b = optimize_waveform(scene, t0, PipelineConfig(epsilon=1.0))
        np.testing.assert_array_equal(a.final_waveform, b.final_waveform)
        assert a.sinr_trajectory_db == b.sinr_trajectory_db

    def test_clutter_free_scene(self):
        scene = Scene(2, 3, 4, 0.3, 10.0)
        t0 = chirp_reference(2, 4).vector
        rec = optimize_waveform(scene, t0, PipelineConfig(epsilon=1.0))
        assert rec.final_sinr_db >= rec.reference_sinr_db
        assert np.isfinite(rec.sinr_trajectory_db).all()

    def test_fixed_psi_variant(self):
        scene = small_scene()
        t0 = chirp_reference(2, 4).vector
        rec = optimize_waveform(scene, t0, PipelineConfig(epsilon=1.0, psi_update_each_refinement=False))
        assert rec.final_sinr_db >= rec.reference_sinr_db
        assert math.sqrt(8) * np.max(np.abs(rec.final_waveform - t0)) <= 1.0 + 1e-6

    def test_explicit_delta_min(self):
        scene = small_scene()
        t0 = chirp_reference(2, 4).vector
        rec = optimize_waveform(scene, t0, PipelineConfig(epsilon=1.0, delta_min=0.1))
        assert rec.refinements == math.ceil(math.log2(rec.initial_delta / 0.1))
