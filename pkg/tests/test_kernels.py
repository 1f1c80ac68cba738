import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyhermite.errors import GridMismatch, TauOutOfRange, TruncationTooSmall
from polyhermite.hermite import Z, hermite_rescaled, phi_normalized
from polyhermite.kernels import (
    KernelSpec,
    calibrate,
    finite_part,
    fit_polyanalytic,
    kernel_k_landau,
    kernel_w_closed,
    kernel_w_limit,
    kernel_w_series,
    squeeze_identity_residual,
    tilde_kernel,
    tpcs_ab,
    tpcs_expanded,
    tpcs_kernel,
    transform_T,
)
from polyhermite.quadrature import quad_grid

small = st.floats(-1, 1, allow_nan=False)
points = st.builds(complex, small, small)


def test_closed_examples():
    z, w = 0.3 - 0.5j, 0.7 + 0.1j
    tau = 0.4
    assert kernel_w_closed(KernelSpec(tau, 0), z, w) == pytest.approx(
        np.exp(np.conj(z) * w - tau * np.conj(z) ** 2 / 2)
    )
    assert kernel_w_closed(KernelSpec(0.5, 1), 1.0, 0.0) == pytest.approx(1.5 * math.exp(-0.25))
    assert kernel_w_closed(KernelSpec(0.5, 1), 1.0, 0.0) == pytest.approx(1.168201, abs=1e-6)
    with pytest.raises(TauOutOfRange):
        kernel_w_closed(KernelSpec(0.0, 1), z, w)


def test_closed_matches_unscaled_hermite():
    # literal form with H_n(sqrt(tau/2) zbar + (z - w)/sqrt(2 tau))
    from polyhermite.hermite import hermite_real

    z, w, tau = 0.2 + 0.6j, -0.4 + 0.3j, 0.35
    for n in range(6):
        arg = math.sqrt(tau / 2) * np.conj(z) + (z - w) / math.sqrt(2 * tau)
        lit = (tau / 2) ** (n / 2) * np.exp(np.conj(z) * w - tau * np.conj(z) ** 2 / 2) * hermite_real(n, arg)
        lit /= math.sqrt(math.factorial(n))
        assert kernel_w_closed(KernelSpec(tau, n), z, w) == pytest.approx(lit, rel=1e-12)


def test_series_examples():
    w = 0.4 - 0.3j
    res = kernel_w_series(KernelSpec(0.5, 0), 0.0, w, 10)
    assert res.value == pytest.approx(1.0)
    with pytest.raises(TruncationTooSmall):
        kernel_w_series(KernelSpec(0.5, 2), 1.0 + 1.0j, 1.0, 4)


@given(points, points, st.floats(0.05, 0.9), st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_series_equals_closed(z, w, tau, n):
    spec = KernelSpec(tau, n)
    a = complex(kernel_w_closed(spec, z, w))
    b = kernel_w_series(spec, z, w).value
    assert abs(a - b) <= 1e-10 * max(1.0, abs(a))


def test_calibration_constant_is_one():
    rng = np.random.default_rng(3)
    zs = rng.uniform(-1, 1, 50) + 1j * rng.uniform(-1, 1, 50)
    ws = rng.uniform(-1, 1, 50) + 1j * rng.uniform(-1, 1, 50)
    spec, rep = calibrate(KernelSpec(0.5, 3), zs, ws)
    assert spec.c_n == pytest.approx(1.0, abs=1e-12)
    assert rep["std"] < 1e-12


def test_tau_zero_series_limit():
    z, w = 0.5 - 0.2j, -0.3 + 0.6j
    for n in range(5):
        s = kernel_w_series(KernelSpec(0.0, n), z, w).value
        expected = np.exp(np.conj(z) * w) * (z - w) ** n / math.sqrt(math.factorial(n))
        assert s == pytest.approx(expected, abs=1e-13)
        assert kernel_w_limit(n, z, w) == pytest.approx(expected)


def test_landau_kernel_examples():
    z, w = 0.4 + 0.2j, -0.1 + 0.5j
    assert kernel_k_landau(0, z, w) == pytest.approx(np.exp(z * np.conj(w)))
    for n in range(4):
        assert kernel_k_landau(n, z, z) == pytest.approx(np.exp(abs(z) ** 2))


def test_landau_reproducing_property():
    g = quad_grid(48, 0.0)
    z = 0.3 - 0.4j
    for n in range(3):
        for m in range(4):
            phi = np.array([phi_normalized(m, n, u) for u in g.points])
            v = np.sum(kernel_k_landau(n, z, g.points) * phi * g.weights)
            assert v == pytest.approx(phi_normalized(m, n, z), abs=1e-10)


def test_finite_part_cancels():
    for n in range(7):
        total, worst = finite_part(KernelSpec(0.3, n), 0.8 - 0.6j, 0.2j)
        assert abs(total) < 1e-12 and worst < 1e-12


def test_squeeze_identity():
    assert squeeze_identity_residual(KernelSpec(0.4, 0), 0.0, 0.5 - 0.2j) < 1e-12
    for n in range(4):
        assert squeeze_identity_residual(KernelSpec(0.4, n), 0.3 + 0.6j, -0.7 + 0.1j) < 1e-8


def test_tpcs():
    for tau in (0.1, 0.5, 0.9):
        a, b = tpcs_ab(tau)
        assert a * a - b * b == pytest.approx(1.0, abs=1e-14)
    z, w = 0.3 - 0.2j, 0.5 + 0.5j
    for tau in (0.2, 0.7):
        t = tpcs_kernel(tau, z, w)
        assert t == pytest.approx(math.exp(-abs(w) ** 2 / 2) * tilde_kernel(KernelSpec(tau, 0), z, w), abs=1e-13)
        assert t == pytest.approx(tpcs_expanded(tau, z, w), abs=1e-13)
    limit = np.exp(np.conj(z) * w - abs(z) ** 2 / 2 - abs(w) ** 2 / 2)
    assert tpcs_kernel(1e-12, z, w) == pytest.approx(limit, abs=1e-10)


def test_transform_of_holomorphic_hermite():
    tau = 0.5
    g = quad_grid(40, tau)
    zs = np.array([0.2 + 0.1j, -0.5 + 0.3j, 0.7 - 0.6j, -0.1 - 0.8j, 0.9 + 0.2j])
    for n in (0, 2):
        spec = KernelSpec(tau, n)
        for k in (0, 1, 3):
            hk = hermite_rescaled(k, Z, tau) / math.sqrt(math.factorial(k))
            img = transform_T(spec, hk, g)(zs)
            target = np.array([phi_normalized(k, n, z) for z in zs])
            ratio = img / target
            assert np.ptp(np.abs(ratio)) < 1e-9 * np.max(np.abs(ratio))


def test_transform_is_linear():
    tau = 0.3
    g = quad_grid(32, tau)
    spec = KernelSpec(tau, 1)
    f1 = lambda w: w**2
    f2 = lambda w: np.conj(w) + 1
    zs = np.array([0.1 + 0.2j, -0.4j])
    lhs = transform_T(spec, lambda w: 2j * f1(w) + f2(w), g)(zs)
    rhs = 2j * transform_T(spec, f1, g)(zs) + transform_T(spec, f2, g)(zs)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_transform_grid_check():
    with pytest.raises(GridMismatch):
        transform_T(KernelSpec(0.3, 1), lambda w: w, quad_grid(8, 0.4))


def test_fit_recovers_polyanalytic():
    rng = np.random.default_rng(0)
    zs = rng.uniform(-1, 1, 80) + 1j * rng.uniform(-1, 1, 80)
    vals = zs**3 * np.conj(zs) - 2 * zs + 0.5
    p, resid = fit_polyanalytic(zs, vals, 4, 1)
    assert resid < 1e-12
    assert p.coeff(3, 1) == pytest.approx(1.0)
    # a zbar^2 term cannot be fitted at zbar-degree 1
    _, bad = fit_polyanalytic(zs, np.conj(zs) ** 2, 4, 1)
    assert bad > 1e-2
