import math

import numpy as np
import pytest
import sympy as sp

from polyhermite.hermite import Z, ZBAR, squeezed_hermite
from polyhermite.operators import (
    astar_binomial,
    bogoliubov,
    closed_form_g,
    commutator,
    ground_state,
    ladder_construct,
    ladder_product,
    ladder_route_squeezed,
    landau_gram,
    laplacian_apply,
    make_ladder,
    squeeze_monomial,
    squeezed_ground_closed,
    squeezed_ground_ladder,
)
from polyhermite.poly import BivariatePolynomial, LadderOperator, gw_apply
from polyhermite.quadrature import flat_inner_product

ONE = LadderOperator.identity()


def test_heisenberg_relations():
    A, As, B, Bs = (make_ladder(k) for k in ("A", "Astar", "B", "Bstar"))
    assert commutator(A, As).allclose(ONE)
    assert commutator(B, Bs).allclose(ONE)
    assert commutator(A, B).is_zero()
    assert commutator(A, A).is_zero()
    for mu in (0.2, 0.8):
        bm, bms = bogoliubov(mu)
        assert commutator(bm, bms).allclose(ONE)


def test_bogoliubov_at_zero_is_identity_map():
    bm, bms = bogoliubov(0.0)
    assert bm.allclose(make_ladder("B")) and bms.allclose(make_ladder("Bstar"))


def test_unknown_kind():
    with pytest.raises(ValueError):
        make_ladder("C")


def test_ground_states_are_annihilated():
    psi0 = ground_state(0.0)
    assert gw_apply(make_ladder("A"), psi0).poly.is_zero()
    assert gw_apply(make_ladder("B"), psi0).poly.is_zero()
    for mu in (0.3, 1.1):
        bm, _ = bogoliubov(mu)
        assert gw_apply(bm, ground_state(mu)).poly.max_abs() < 1e-14


def test_ground_state_norm():
    # flat L2 norm squared of psi_mu is 1 / sqrt(1 - tau^2)
    for mu in (0.0, 0.4, 0.9):
        psi = ground_state(mu)
        tau = math.tanh(mu)
        assert flat_inner_product(psi, psi).real == pytest.approx(1 / math.sqrt(1 - tau * tau), rel=1e-12)


def test_squeezed_ground_examples():
    mu = 0.6
    assert squeezed_ground_ladder(0, mu).poly == BivariatePolynomial.constant(1.0)
    p1 = squeezed_ground_ladder(1, mu).poly
    assert p1.max_abs_diff(Z / math.cosh(mu)) < 1e-15
    for m in range(13):
        for mu in (0.25, 0.7):
            a = squeezed_ground_ladder(m, mu).poly
            b = squeezed_ground_closed(m, mu).poly
            assert a.max_abs_diff(b) <= 1e-10 * max(b.max_abs(), 1.0)


def test_ladder_construct_trivial_cases():
    mu = 0.5
    assert ladder_construct(0, 0, mu).poly == BivariatePolynomial.constant(1.0)
    assert ladder_construct(3, 0, mu).poly == squeezed_ground_ladder(3, mu).poly


def test_closed_form_needs_sqrt_nfact():
    mu = 0.55
    for m, n in [(2, 3), (4, 2), (0, 4)]:
        ladder = ladder_construct(m, n, mu).poly
        closed = closed_form_g(m, n, mu)
        assert (ladder * math.sqrt(math.factorial(n))).max_abs_diff(closed) < 1e-12 * closed.max_abs()
        # without the factor the two differ
        assert ladder.max_abs_diff(closed) > 1e-3 * closed.max_abs()


def test_ladder_route_reproduces_squeezed_family():
    for tau in (0.25, 0.9):
        for m, n in [(0, 0), (3, 2), (5, 5)]:
            a = ladder_route_squeezed(m, n, tau)
            b = squeezed_hermite(m, n, tau)
            assert a.max_abs_diff(b) <= 1e-10 * b.max_abs()


def test_laplacian_examples():
    assert laplacian_apply(Z**5).is_zero()
    assert laplacian_apply(ZBAR) == ZBAR


def test_laplacian_against_sympy():
    z, zb, t = sp.symbols("z zb t")
    f = z**3 * zb**2 - 2 * t * z * zb + zb
    ref = sp.expand(-(1 - t**2) * sp.diff(f, z, zb) + (zb - t * z) * sp.diff(f, zb))
    tau = 0.3
    p = Z**3 * ZBAR**2 - Z * ZBAR * (2 * tau) + ZBAR
    ours = laplacian_apply(p, tau)
    poly = sp.Poly(ref.subs(t, sp.Rational(3, 10)), z, zb)
    assert {k: complex(v) for k, v in zip(poly.monoms(), poly.coeffs())} == pytest.approx(dict(ours.coeffs))


def test_squeezed_family_is_eigen():
    for tau in (0.2, 0.8):
        for m in range(6):
            for n in range(5):
                p = squeezed_hermite(m, n, tau)
                assert laplacian_apply(p, tau).max_abs_diff(p * n) <= 1e-11 * p.max_abs()


def test_undeformed_operator_fails_for_positive_tau():
    p = squeezed_hermite(0, 1, 0.5)
    assert laplacian_apply(p, 0.0).max_abs_diff(p) > 0.1


def test_binomial_expansion_of_astar_power():
    As = make_ladder("Astar")
    for n in range(6):
        assert (As**n).allclose(astar_binomial(n))


def test_ladder_identity():
    A, As = make_ladder("A"), make_ladder("Astar")
    for n in range(4):
        f = squeezed_ground_ladder(2, 0.4)
        lhs = gw_apply((A**n) @ (As**n), f).poly
        rhs = gw_apply(ladder_product(n), f).poly
        assert lhs.max_abs_diff(rhs) <= 1e-10 * max(rhs.max_abs(), 1.0)


def test_landau_gram_invariance_and_diagonal():
    mu = 0.5
    g0 = landau_gram(0, 4, mu, 48)
    g2 = landau_gram(2, 4, mu, 48)
    np.testing.assert_allclose(g2, g0, atol=1e-12)
    # measured diagonal is cosh(mu), not n!
    np.testing.assert_allclose(np.diag(g0).real, math.cosh(mu), rtol=1e-12)


def test_squeeze_monomial_examples():
    tau = 0.4
    s = math.sqrt(1 - tau * tau)
    f0 = squeeze_monomial(0, tau)
    w = 0.3 - 0.2j
    assert f0(w) == pytest.approx(s**0.5 * np.exp(tau * w * w / 2))
    f1 = squeeze_monomial(1, tau)
    assert f1(w) == pytest.approx(s**1.5 * w * np.exp(tau * w * w / 2))
    # small tau: polynomial part tends to w^k / sqrt(k!)
    f3 = squeeze_monomial(3, 1e-9)
    assert f3.poly.max_abs_diff(Z**3 / math.sqrt(6)) < 1e-8
