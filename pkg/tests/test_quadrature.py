import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyhermite.errors import GridMismatch, NodesOutOfRange, TauOutOfRange
from polyhermite.hermite import Z, hermite_rescaled
from polyhermite.quadrature import (
    FLAT,
    gauss_hermite,
    gaussian_moment,
    gram_matrix,
    inner_product,
    omega_density,
    quad_grid,
)


def test_density_examples():
    assert omega_density(0, 0.4) == pytest.approx(1 / math.pi)
    z = 0.3 + 0.8j
    assert omega_density(z, 0.0) == pytest.approx(math.exp(-abs(z) ** 2) / math.pi)
    assert omega_density(1.0, 0.5) == pytest.approx(math.exp(-2 / 3) / math.pi)
    assert omega_density(1.0, 0.5) == pytest.approx(0.163426, abs=1e-6)
    with pytest.raises(TauOutOfRange):
        omega_density(0, 1.0)


@pytest.mark.parametrize("n_q", [2, 5, 20, 64, 150])
def test_rule_against_numpy(n_q):
    t, w = gauss_hermite(n_q)
    t_ref, w_ref = np.polynomial.hermite.hermgauss(n_q)
    np.testing.assert_allclose(t, t_ref, atol=1e-13)
    np.testing.assert_allclose(w, w_ref, rtol=1e-10, atol=1e-300)
    assert np.all(w > 0)
    np.testing.assert_allclose(t, -t[::-1], atol=1e-13)


def test_node_bounds():
    for bad in (1, 257):
        with pytest.raises(NodesOutOfRange):
            gauss_hermite(bad)


def test_mass_and_second_moment():
    g0 = quad_grid(32, 0.0)
    assert g0.integrate(lambda z: np.ones_like(z)) == pytest.approx(1.0, abs=1e-14)
    assert g0.integrate(lambda z: np.abs(z) ** 2) == pytest.approx(1.0, abs=1e-14)
    assert quad_grid(32, 0.6).integrate(lambda z: np.ones_like(z)) == pytest.approx(0.8, abs=1e-14)


@given(st.integers(0, 6), st.integers(0, 6), st.floats(0.0, 0.9))
@settings(max_examples=40, deadline=None)
def test_moments(a, b, tau):
    g = quad_grid(24, tau)
    x, y = g.points.real, g.points.imag
    approx = np.sum(g.weights * x ** (2 * a) * y ** (2 * b))
    assert approx == pytest.approx(gaussian_moment(a, b, tau), rel=1e-11)


def test_inner_product_examples():
    g = quad_grid(32, 0.0)
    assert inner_product(lambda z: np.ones_like(z), lambda z: np.ones_like(z), 0.0, g) == pytest.approx(1.0)
    assert inner_product(lambda z: z, lambda z: z, 0.0, g) == pytest.approx(1.0)
    # conjugate-linear in the first slot
    a = inner_product(lambda z: 1j * z, lambda z: z, 0.0, g)
    assert a == pytest.approx(-1j)


def test_grid_mismatch():
    g = quad_grid(16, 0.3)
    with pytest.raises(GridMismatch):
        inner_product(lambda z: z, lambda z: z, 0.4, g)
    with pytest.raises(GridMismatch):
        inner_product(lambda z: z, lambda z: z, 0.3, quad_grid(16, 0.3, FLAT))


def test_rescaled_hermite_orthogonality():
    tau = 0.5
    g = quad_grid(64, tau)
    G = gram_matrix([hermite_rescaled(m, Z, tau) for m in range(11)], tau, g)
    d = np.sqrt(np.abs(np.diag(G)))
    off = np.abs(G - np.diag(np.diag(G))) / np.outer(d, d)
    assert off.max() < 1e-9
    # measured norms: m! sqrt(1 - tau^2)
    expected = [math.factorial(m) * math.sqrt(1 - tau * tau) for m in range(11)]
    np.testing.assert_allclose(np.diag(G).real, expected, rtol=1e-11)


def test_csv_export():
    text = quad_grid(2, 0.0).to_csv()
    lines = text.splitlines()
    assert lines[0] == "x,y,weight"
    assert len(lines) == 5
    total = sum(float(l.split(",")[2]) for l in lines[1:])
    assert total == pytest.approx(1.0, abs=1e-15)
