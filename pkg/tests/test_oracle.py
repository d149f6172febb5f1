"""Finite-difference oracle: Christoffel symbols, curvature tensor, validation."""

import dataclasses
import math

import numpy as np
import pytest

from drillvol import (
    DiagonalMetric,
    DomainError,
    ParameterError,
    christoffel_fd,
    hyperbolic_tube,
    kerckhoff_extension,
    riemann_fd,
    sectional_fd,
    validate_lemma_curvature,
)
from drillvol.oracle import PLANES, frame_riemann_fd


@pytest.fixture(scope="module")
def tube_metric():
    return DiagonalMetric.from_warping_pair(hyperbolic_tube())


@pytest.fixture(scope="module")
def flat_metric():
    return DiagonalMetric(
        comps=(
            lambda r: np.asarray(r) * 0 + 1.0,
            lambda r: np.asarray(r) ** 2,
            lambda r: np.asarray(r) * 0 + 1.0,
        ),
        domain=(0.0, math.inf),
        name="flat_polar",
    )


# ---------------------------------------------------------------------------
# Christoffel symbols
# ---------------------------------------------------------------------------


class TestChristoffel:
    def test_flat_polar_symbols(self, flat_metric):
        gam = christoffel_fd(flat_metric, 2.0)
        assert gam[0, 1, 1] == pytest.approx(-2.0, abs=1e-8)   # Gamma^r_theta_theta = -r
        assert gam[1, 0, 1] == pytest.approx(0.5, abs=1e-8)    # Gamma^theta_r_theta = 1/r
        assert np.allclose(gam[2], 0.0, atol=1e-10)            # nothing touches lambda
        assert np.allclose(gam[:, 2, :2], 0.0, atol=1e-10)

    def test_tube_symbol(self, tube_metric):
        gam = christoffel_fd(tube_metric, 1.0)
        # Gamma^r_theta_theta = -f f' = -sinh(1) cosh(1)
        assert gam[0, 1, 1] == pytest.approx(-math.sinh(1.0) * math.cosh(1.0), rel=1e-8)

    def test_lower_index_symmetry(self, tube_metric):
        gam = christoffel_fd(tube_metric, 0.9)
        assert np.array_equal(gam, np.swapaxes(gam, 1, 2))

    def test_margin_violation(self, flat_metric):
        with pytest.raises(DomainError):
            christoffel_fd(flat_metric, 1e-5)


# ---------------------------------------------------------------------------
# Sectional curvature
# ---------------------------------------------------------------------------


class TestSectional:
    def test_tube_r_theta(self, tube_metric):
        assert sectional_fd(tube_metric, 0.9, (0, 1)) == pytest.approx(-1.0, abs=1e-6)

    def test_extension_theta_lambda(self):
        m = DiagonalMetric.from_warping_pair(kerckhoff_extension(0.8))
        assert sectional_fd(m, 0.5, (1, 2)) == pytest.approx(-1.0, abs=1e-5)

    @pytest.mark.parametrize("plane", PLANES)
    def test_flat_everywhere(self, flat_metric, plane):
        assert sectional_fd(flat_metric, 1.7, plane) == pytest.approx(0.0, abs=1e-6)

    def test_bad_plane(self, tube_metric):
        with pytest.raises(ParameterError):
            sectional_fd(tube_metric, 1.0, (1, 1))

    def test_tiny_step_warns(self):
        m = DiagonalMetric.from_warping_pair(hyperbolic_tube(), h=1e-10)
        with pytest.warns(RuntimeWarning):
            sectional_fd(m, 1.0, (0, 1))


# ---------------------------------------------------------------------------
# Curvature tensor structure
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("pair_name", ["tube", "kerckhoff08"])
def test_riemann_symmetries(pair_name, request):
    """R_ijkl = -R_jikl = R_klij within 1e-6 at random radii."""
    w = request.getfixturevalue(pair_name)
    m = DiagonalMetric.from_warping_pair(w)
    rng = np.random.default_rng(5)
    lo = 0.3 if w.axis_flag else -3.0
    hi = min(w.domain[1], 4.0) - 0.01
    for r in rng.uniform(lo, hi, 10):
        R = riemann_fd(m, float(r))
        assert np.max(np.abs(R + np.swapaxes(R, 0, 1))) < 1e-6
        assert np.max(np.abs(R - np.transpose(R, (2, 3, 0, 1)))) < 1e-6


def test_off_diagonal_frame_components(tube, kerckhoff08, family_08):
    """R(e_i, e_k, e_i, e_j) vanishes for j != k: the Ricci tensor is diagonal."""
    rng = np.random.default_rng(9)
    cases = [
        (tube, rng.uniform(0.3, 3.0, 8)),
        (kerckhoff08, rng.uniform(-2.0, 0.75, 8)),
        (family_08.pair, rng.uniform(0.8 - family_08.delta, 0.8, 4)),
    ]
    for w, radii in cases:
        m = DiagonalMetric.from_warping_pair(w)
        for r in radii:
            F = frame_riemann_fd(m, float(r))
            for i in range(3):
                for k in range(3):
                    for j in range(3):
                        if j != k and i != k and i != j:
                            assert abs(F[i, k, i, j]) < 1e-5


# ---------------------------------------------------------------------------
# Validation runs
# ---------------------------------------------------------------------------


class TestValidate:
    def test_tube_passes(self, tube):
        report = validate_lemma_curvature(tube, samples=100, tolerance=1e-5)
        assert report.passed
        assert report.max_rel_error < 1e-5

    def test_extension_passes(self):
        report = validate_lemma_curvature(kerckhoff_extension(1.2), samples=100, tolerance=1e-5)
        assert report.passed

    def test_smoothed_pair_passes(self, family_08):
        window = (0.8 - family_08.delta - 0.1, 0.8 + 0.1)  # mostly collar
        report = validate_lemma_curvature(family_08.pair, samples=100,
                                          tolerance=1e-5, window=window)
        assert report.passed

    def test_corrupted_second_derivative_fails(self, tube):
        bad = dataclasses.replace(tube, fpp=lambda r: 1.1 * np.sinh(r), name="corrupted")
        report = validate_lemma_curvature(bad, samples=50, tolerance=1e-5)
        assert not report.passed
        # a 10% error in f'' shows up as a ~0.1 relative error on K_rtheta
        assert 0.05 < report.max_rel_error < 0.15
        assert report.worst_sample()[1] == "r_theta"

    def test_report_shape(self, tube):
        report = validate_lemma_curvature(tube, samples=7)
        assert report.radii.shape == (7,)
        assert report.closed.shape == (7, 3)
        assert report.oracle.shape == (7, 3)
        assert report.max_rel_error == report.rel_errors.max()

    def test_needs_samples(self, tube):
        with pytest.raises(ParameterError):
            validate_lemma_curvature(tube, samples=0)


def test_halving_step_reduces_error(tube, kerckhoff08):
    """Second-order convergence: h -> h/2 shrinks the error on >= 90% of samples."""
    rng = np.random.default_rng(2)
    improved = total = 0
    for w, lo, hi, exact in (
        (tube, 0.3, 3.0, lambda r: (-1.0, -1.0, -1.0)),
        (kerckhoff08, -3.0, 0.79, lambda r: (-(1 / math.tanh(0.8)) ** 2, -math.tanh(0.8) ** 2, -1.0)),
    ):
        m4 = DiagonalMetric.from_warping_pair(w, h=1e-4)
        m5 = DiagonalMetric.from_warping_pair(w, h=5e-5)
        for r in rng.uniform(lo, hi, 40):
            for plane, k_exact in zip(PLANES, exact(r)):
                e4 = abs(sectional_fd(m4, float(r), plane) - k_exact)
                e5 = abs(sectional_fd(m5, float(r), plane) - k_exact)
                improved += e5 < e4
                total += 1
    assert improved >= 0.9 * total


def test_fd_step_hint_respected(family_08):
    m = DiagonalMetric.from_warping_pair(family_08.pair)
    assert m.h == family_08.pair.fd_step
    m2 = DiagonalMetric.from_warping_pair(family_08.pair, h=1e-4)
    assert m2.h == 1e-4
