import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyhermite.eigen import canonical_sort, eigenvalues, residuals
from polyhermite.errors import NoConvergence, SizeOutOfRange, TauOutOfRange
from polyhermite.ginibre import (
    SpectrumSample,
    pooled_stats,
    run_trials,
    sample_elliptic,
    sample_gue,
    sample_spectrum,
    spectral_stats,
    trial_seeds,
)


def test_diagonal_and_companion():
    d = np.diag([4.0, -2.0, 1.5])
    np.testing.assert_array_equal(canonical_sort(eigenvalues(d)), [-2.0, 1.5, 4.0])
    np.testing.assert_allclose(canonical_sort(eigenvalues([[0, 1], [1, 0]])), [-1, 1], atol=1e-12)


def test_triangular_and_permutation():
    rng = np.random.default_rng(0)
    t = np.triu(rng.standard_normal((12, 12)))
    np.testing.assert_allclose(canonical_sort(eigenvalues(t)), np.sort(np.diag(t)), atol=1e-12)
    p = np.roll(np.eye(9), 1, axis=0)
    roots = np.exp(2j * np.pi * np.arange(9) / 9)
    # conjugate pairs tie on the real part, so match by distance
    ours = eigenvalues(p)
    assert np.abs(roots[:, None] - ours[None, :]).min(axis=1).max() < 1e-12


@given(st.integers(1, 40), st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_matches_lapack(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    ours = eigenvalues(m)
    ref = np.linalg.eigvals(m)
    # match each reference value to its nearest computed value
    dist = np.abs(ref[:, None] - ours[None, :]).min(axis=1)
    assert dist.max() < 1e-9 * max(1.0, np.abs(ref).max())
    assert residuals(m, ours).max() < 1e-10


def test_eigen_errors():
    with pytest.raises(SizeOutOfRange):
        eigenvalues(np.zeros((0, 0)))
    with pytest.raises(ValueError):
        eigenvalues(np.zeros((2, 3)))
    rng = np.random.default_rng(1)
    with pytest.raises(NoConvergence):
        eigenvalues(rng.standard_normal((20, 20)), max_iter_factor=0)


def test_gue_properties():
    m = sample_gue(32, 5)
    assert np.max(np.abs(m - m.conj().T)) == 0.0
    assert np.all(np.diag(m).imag == 0)
    np.testing.assert_array_equal(m, sample_gue(32, 5))
    with pytest.raises(SizeOutOfRange):
        sample_gue(513, 0)


def test_elliptic_moments():
    j = sample_elliptic(400, 0.3, 11)
    iu = np.triu_indices(400, 1)
    assert np.mean(j[iu] * j.T[iu]) == pytest.approx(0.3, abs=0.05)
    assert np.mean(np.abs(j) ** 2) == pytest.approx(1.0, abs=0.05)
    raw = sample_elliptic(400, 0.3, 11, raw=True)
    np.testing.assert_allclose(raw, j * np.sqrt(2))


def test_elliptic_boundaries():
    j = sample_elliptic(16, 1.0, 2)
    assert np.max(np.abs(j - j.conj().T)) == 0.0
    with pytest.raises(TauOutOfRange):
        sample_elliptic(4, 1.1, 0)


def test_stats_arithmetic():
    s = SpectrumSample(2, 0.0, 0, np.array([1.0, -1.0]))
    st_ = spectral_stats(s)
    assert st_.second_moment_over_N == pytest.approx(0.5)
    assert st_.mean == 0
    with pytest.raises(ValueError):
        SpectrumSample(3, 0.0, 0, np.array([1.0]))


def test_determinism_across_threads():
    seeds = trial_seeds(7, 3)
    a = run_trials(24, 0.4, seeds, threads=1)
    b = run_trials(24, 0.4, seeds, threads=3)
    for x, y in zip(a, b):
        assert x.seed == y.seed
        np.testing.assert_array_equal(x.eigenvalues, y.eigenvalues)
    s = sample_spectrum(24, 0.4, seeds[0])
    np.testing.assert_array_equal(s.eigenvalues, canonical_sort(s.eigenvalues))


def test_pooled_stats_shape():
    samples = run_trials(64, 0.5, trial_seeds(1, 4), threads=1)
    st_ = pooled_stats(samples)
    assert 0 <= st_.ellipse_fraction <= 1
    assert abs(st_.second_moment_over_N - 0.5) < 0.15
