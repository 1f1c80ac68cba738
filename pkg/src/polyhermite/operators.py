"""Ladder operators of the magnetic Laplacian, the Bogoliubov-squeezed pair and the
ladder construction of the squeezed complex Hermite polynomials.

Operators are ``LadderOperator`` sums of normal-ordered terms; they act
exactly on ``WeightedFunction`` values (polynomial times Gaussian).  The
magnetic field strength is fixed to 1.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import check_degree, check_tau
from .hermite import SQUEEZED_CAP, Z, hermite_rescaled
from .poly import (
    BivariatePolynomial,
    GaussianEnvelope,
    LadderOperator,
    WeightedFunction,
    apply_to_poly,
    gw_apply,
)
from .quadrature import flat_gram

LADDER_CAP = 20

_KINDS = ("A", "Astar", "B", "Bstar", "HL", "Laplacian")


def make_ladder(kind: str, tau: float = 0.0) -> LadderOperator:
    """Named operator in term form.

    ``A = -d_zbar - z/2``, ``Astar = d_z - zbar/2``, ``B = -d_z - zbar/2``,
    ``Bstar = d_zbar - z/2``, ``HL = Astar A``.  ``Laplacian`` is the magnetic
    Laplacian of the elliptic weight,
    ``-(1 - tau^2) d_z d_zbar + (zbar - tau z) d_zbar``, which is
    ``-d_z d_zbar + zbar d_zbar`` at ``tau = 0``.
    """
    if kind == "A":
        return LadderOperator([(-1.0, 0, 0, 0, 1), (-0.5, 1, 0, 0, 0)])
    if kind == "Astar":
        return LadderOperator([(1.0, 0, 0, 1, 0), (-0.5, 0, 1, 0, 0)])
    if kind == "B":
        return LadderOperator([(-1.0, 0, 0, 1, 0), (-0.5, 0, 1, 0, 0)])
    if kind == "Bstar":
        return LadderOperator([(1.0, 0, 0, 0, 1), (-0.5, 1, 0, 0, 0)])
    if kind == "HL":
        return make_ladder("Astar") @ make_ladder("A")
    if kind == "Laplacian":
        check_tau(tau)
        return LadderOperator([(-(1.0 - tau * tau), 0, 0, 1, 1), (1.0, 0, 1, 0, 1), (-tau, 1, 0, 0, 1)])
    raise ValueError(f"unknown operator {kind!r}; expected one of {_KINDS}")


def commutator(l1: LadderOperator, l2: LadderOperator) -> LadderOperator:
    return (l1 @ l2) - (l2 @ l1)


def bogoliubov(mu: float) -> tuple[LadderOperator, LadderOperator]:
    """``(B_mu, B_mu*) = (cosh mu B - sinh mu B*, -sinh mu B + cosh mu B*)``."""
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    b, bs = make_ladder("B"), make_ladder("Bstar")
    ch, sh = math.cosh(mu), math.sinh(mu)
    return b * ch - bs * sh, bs * ch - b * sh


def ground_state(mu: float) -> WeightedFunction:
    """``psi_mu = pi^{-1/2} exp(-(|z|^2 - tau z^2)/2)`` with ``tau = tanh mu``."""
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    tau = math.tanh(mu)
    env = GaussianEnvelope(q20=tau / 2, q11=-0.5, q02=0.0, c=1 / math.sqrt(math.pi))
    return WeightedFunction(BivariatePolynomial.constant(1.0), env)


def squeezed_ground_ladder(m: int, mu: float) -> WeightedFunction:
    """``(1/sqrt(m!)) (-B_mu*)^m psi_mu`` by repeated operator application."""
    check_degree("m", m, SQUEEZED_CAP)
    _, bs = bogoliubov(mu)
    raise_op = -bs
    f = ground_state(mu)
    for _ in range(m):
        f = gw_apply(raise_op, f)
    return f * (1 / math.sqrt(math.factorial(m)))


def squeezed_ground_closed(m: int, mu: float) -> WeightedFunction:
    """Closed form ``(1/sqrt(m!)) (tanh mu / 2)^{m/2} H_m(z / sqrt(sinh 2 mu)) psi_mu``."""
    check_degree("m", m, SQUEEZED_CAP)
    tau = math.tanh(mu)
    # (tanh mu/2)^{m/2} H_m(z/sqrt(sinh 2mu)) = hermite_rescaled(m, sqrt(1 - tau^2) z, tau)
    poly = hermite_rescaled(m, Z * math.sqrt(1 - tau * tau), tau) * (1 / math.sqrt(math.factorial(m)))
    return ground_state(mu).with_poly(poly)


def ladder_construct(m: int, n: int, mu: float) -> WeightedFunction:
    """``psi_m^{(n)} = (1/sqrt(n!)) (A*)^n psi_m^{(0)}`` with ``psi_m^{(0)}`` from the squeezed ladder.

    The polynomial part is ``G_{m,n}(z, zbar, tanh mu)``.
    """
    check_degree("m", m, LADDER_CAP)
    check_degree("n", n, LADDER_CAP)
    astar = make_ladder("Astar")
    f = squeezed_ground_ladder(m, mu)
    for _ in range(n):
        f = gw_apply(astar, f)
    return f * (1 / math.sqrt(math.factorial(n)))


def closed_form_g(m: int, n: int, mu: float) -> BivariatePolynomial:
    """Expansion of the closed form for ``(A*)^n`` applied to the level-0 state.

    ``1/sqrt(m!) (tanh mu/2)^{m/2} sum_k k! C(n,k) C(m,k) 2^k sinh(2mu)^{-k/2}
    (i sqrt(tanh mu / 2))^{n-k} H_{m-k}(z/sqrt(sinh 2mu)) H_{n-k}(-i sqrt(tanh mu/2) z + i zbar/sqrt(2 tanh mu))``.
    This carries no ``1/sqrt(n!)``: it equals ``sqrt(n!)`` times the ladder polynomial.
    """
    from .hermite import ONE, ZBAR, _hermite_seq

    check_degree("m", m, LADDER_CAP)
    check_degree("n", n, LADDER_CAP)
    t = math.tanh(mu)
    if t == 0:
        raise ValueError("closed form needs mu > 0")
    sh2 = math.sinh(2 * mu)
    x = Z / math.sqrt(sh2)
    y = Z * (-1j * math.sqrt(t / 2)) + ZBAR * (1j / math.sqrt(2 * t))
    total = BivariatePolynomial()
    for k in range(min(m, n) + 1):
        c = math.factorial(k) * math.comb(n, k) * math.comb(m, k) * 2**k / sh2 ** (k / 2)
        c *= (1j * math.sqrt(t / 2)) ** (n - k)
        total = total + _hermite_seq(m - k, x, ONE) * _hermite_seq(n - k, y, ONE) * c
    return total * ((t / 2) ** (m / 2) / math.sqrt(math.factorial(m)))


def ladder_route_squeezed(m: int, n: int, tau: float) -> BivariatePolynomial:
    """Squeezed Hermite coefficients from the ladder construction.

    ``sqrt(n!) G_{m,n}`` with ``mu = atanh tau`` after ``z -> z / sqrt(1 - tau^2)``.
    """
    check_tau(tau)
    g = ladder_construct(m, n, math.atanh(tau)).poly
    return g.substitute_scale(1 / math.sqrt(1 - tau * tau)) * math.sqrt(math.factorial(n))


def laplacian_apply(p: BivariatePolynomial, tau: float = 0.0) -> BivariatePolynomial:
    """Magnetic Laplacian on a polynomial, exact in coefficients (see ``make_ladder``)."""
    return apply_to_poly(make_ladder("Laplacian", tau), p)


def astar_binomial(n: int) -> LadderOperator:
    """``sum_j C(n,j) (-zbar/2)^{n-j} d_z^j``: the expansion of ``(A*)^n``."""
    return LadderOperator([(math.comb(n, j) * (-0.5) ** (n - j), 0, n - j, j, 0) for j in range(n + 1)])


def ladder_product(n: int) -> LadderOperator:
    """``prod_{k=1..n} (H_L + k)``."""
    hl = make_ladder("HL")
    out = LadderOperator.identity()
    for k in range(1, n + 1):
        out = (hl + LadderOperator.identity() * k) @ out
    return out


def squeeze_monomial(k: int, tau: float) -> WeightedFunction:
    """Image of ``w^k / sqrt(k!)`` under the squeeze operator, in the variable ``w``.

    ``(1 - tau^2)^{1/4} e^{tau w^2/2} (tau/2)^{k/2} H_k(sqrt((1 - tau^2)/(2 tau)) w) / sqrt(k!)``,
    stored with envelope ``q20 = tau/2`` and prefactor ``(1 - tau^2)^{1/4}``.
    """
    check_degree("k", k, SQUEEZED_CAP)
    check_tau(tau, allow_zero=False)
    s = math.sqrt(1 - tau * tau)
    poly = hermite_rescaled(k, Z * s, tau) * (1 / math.sqrt(math.factorial(k)))
    return WeightedFunction(poly, GaussianEnvelope(q20=tau / 2, c=s**0.5))


def landau_gram(n: int, mmax: int, mu: float, n_q: int = 64) -> np.ndarray:
    """Flat-measure Gram matrix ``<psi_m^{(n)}, psi_m'^{(n)}>`` for ``m, m' <= mmax``."""
    fs = [ladder_construct(m, n, mu) for m in range(mmax + 1)]
    return flat_gram(fs, fs, n_q)
