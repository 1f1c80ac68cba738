import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyhermite.poly import (
    BivariatePolynomial,
    GaussianEnvelope,
    LadderOperator,
    WeightedFunction,
    apply_to_poly,
    gw_apply,
    poly_arith,
    poly_eval,
)

Z = BivariatePolynomial.z()
ZB = BivariatePolynomial.zbar()

finite = st.floats(-2, 2, allow_nan=False)
cplx = st.builds(complex, finite, finite)
coeff_maps = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)), cplx, max_size=8
)


def test_trimmed_and_degrees():
    p = BivariatePolynomial({(2, 1): 3.0, (0, 3): 0.0, (1, 0): 1e-320})
    assert dict(p.coeffs) == {(2, 1): 3.0}
    assert (p.deg_z, p.deg_zbar) == (2, 1)
    zero = BivariatePolynomial()
    assert zero.is_zero() and zero.deg_z == -1 and zero.deg_zbar == -1


def test_coeffs_are_read_only():
    p = Z * ZB
    with pytest.raises(TypeError):
        p.coeffs[(0, 0)] = 1.0
    with pytest.raises(ValueError):
        p.dense[0, 0] = 1.0


def test_evaluation_uses_conjugate_by_default():
    p = Z * ZB - 1
    z = 0.3 - 1.2j
    assert p(z) == pytest.approx(abs(z) ** 2 - 1)
    assert poly_eval(p, z) == pytest.approx(abs(z) ** 2 - 1)
    # independent symbols
    assert p.evaluate(2.0, 5.0) == pytest.approx(9.0)


def test_evaluation_is_vectorized():
    p = Z**3 + ZB * 2j
    zs = np.array([0.1 + 0.2j, -1.0, 2j])
    np.testing.assert_allclose(p(zs), zs**3 + 2j * np.conj(zs))


@given(coeff_maps, coeff_maps, cplx)
@settings(max_examples=60, deadline=None)
def test_ring_operations_match_pointwise(a, b, z):
    p, q = BivariatePolynomial(a), BivariatePolynomial(b)
    scale = 1 + abs(p(z)) * abs(q(z)) + abs(p(z)) + abs(q(z))
    assert abs((p + q)(z) - (p(z) + q(z))) <= 1e-12 * scale
    assert abs((p * q)(z) - p(z) * q(z)) <= 1e-11 * scale * 50
    assert abs((p - q)(z) - (p(z) - q(z))) <= 1e-12 * scale


@given(coeff_maps)
@settings(max_examples=40, deadline=None)
def test_json_round_trip_is_exact(a):
    p = BivariatePolynomial(a)
    assert BivariatePolynomial.from_json(p.to_json()) == p
    records = json.loads(p.to_json())
    assert records == sorted(records, key=lambda r: (r["a"], r["b"]))


@given(coeff_maps, cplx)
@settings(max_examples=40, deadline=None)
def test_derivatives_match_complex_step(a, z):
    # d/dz and d/dzbar of the polynomial in independent symbols
    p = BivariatePolynomial(a)
    zb = z.conjugate()
    h = 1e-6
    dz = (p.evaluate(z + h, zb) - p.evaluate(z - h, zb)) / (2 * h)
    dzb = (p.evaluate(z, zb + h) - p.evaluate(z, zb - h)) / (2 * h)
    scale = 1 + sum(abs(c) for c in a.values()) * 50
    assert abs(p.d_z().evaluate(z, zb) - dz) <= 1e-6 * scale
    assert abs(p.d_zbar().evaluate(z, zb) - dzb) <= 1e-6 * scale


def test_poly_arith_dispatch():
    assert poly_arith("add", Z, ZB) == Z + ZB
    assert poly_arith("mul", Z, ZB) == Z * ZB
    assert poly_arith("d_z", Z**3) == Z**2 * 3
    with pytest.raises(ValueError):
        poly_arith("frobnicate", Z)


def test_substitute_scale_and_swap():
    p = Z**2 * ZB + 3
    assert p.substitute_scale(2.0) == Z**2 * ZB * 8 + 3
    assert p.swapped() == ZB**2 * Z + 3


def test_envelope_integrability():
    assert GaussianEnvelope(q11=-0.5, q20=0.2).is_integrable
    assert not GaussianEnvelope(q20=0.3).is_integrable


def test_weighted_function_derivative_matches_numeric():
    env = GaussianEnvelope(q20=0.2, q11=-0.5, c=0.7)
    f = WeightedFunction(Z**2 + ZB, env)
    z = 0.4 + 0.3j
    h = 1e-6
    # d/dx = d_z + d_zbar, d/dy = i (d_z - d_zbar)
    fx = (f(z + h) - f(z - h)) / (2 * h)
    fy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
    dz = 0.5 * (fx - 1j * fy)
    dzb = 0.5 * (fx + 1j * fy)
    assert f.d_z()(z) == pytest.approx(dz, abs=1e-8)
    assert f.d_zbar()(z) == pytest.approx(dzb, abs=1e-8)


def test_ladder_normal_ordering():
    # d_z z = z d_z + 1
    dz = LadderOperator([(1.0, 0, 0, 1, 0)])
    mz = LadderOperator([(1.0, 1, 0, 0, 0)])
    assert (dz @ mz).term_map == {(1, 0, 1, 0): 1.0, (0, 0, 0, 0): 1.0}
    assert ((dz @ mz) - (mz @ dz)).allclose(LadderOperator.identity())


@given(coeff_maps)
@settings(max_examples=30, deadline=None)
def test_composition_acts_as_successive_application(a):
    p = BivariatePolynomial(a)
    l1 = LadderOperator([(1.0, 0, 1, 1, 0), (0.5, 1, 0, 0, 1)])
    l2 = LadderOperator([(2.0, 0, 0, 0, 1), (-1.0, 0, 1, 0, 0)])
    assert apply_to_poly(l1 @ l2, p).max_abs_diff(apply_to_poly(l1, apply_to_poly(l2, p))) <= 1e-10 * (
        1 + p.max_abs()
    ) * 100


def test_gw_apply_on_gaussian():
    # (d_zbar + z/2) e^{-|z|^2/2} = 0
    env = GaussianEnvelope(q11=-0.5)
    f = WeightedFunction(BivariatePolynomial.constant(1.0), env)
    op = LadderOperator([(1.0, 0, 0, 0, 1), (0.5, 1, 0, 0, 0)])
    assert gw_apply(op, f).poly.is_zero()


def test_pow_rejects_negative():
    with pytest.raises(ValueError):
        Z ** -1
