"""Hermite-type polynomial families: real, rescaled holomorphic, complex (Ito),
squeezed complex, Laguerre and 2D-Hermite.

Scalar families use three-term recurrences; the explicit sums are kept as
secondary routes (``*_sum``) for cross-checking at low degree.  The
recurrences are written generically so the same code produces numbers,
numpy arrays or ``BivariatePolynomial`` coefficient objects.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegreeTooLarge,
    SingularR,
    TauOutOfRange,
    TruncationTooSmall,
    check_degree,
    check_tau,
)
from .poly import BivariatePolynomial, GaussianEnvelope, WeightedFunction

SCALAR_CAP = 200
BIVARIATE_CAP = 60
SQUEEZED_CAP = 40

Z = BivariatePolynomial.z()
ZBAR = BivariatePolynomial.zbar()
ONE = BivariatePolynomial.constant(1.0)


@dataclass(frozen=True)
class SqueezeParams:
    """Squeeze parameter ``mu >= 0`` and its image ``tau = tanh(mu)`` in [0, 1)."""

    tau: float
    mu: float

    def __post_init__(self):
        check_tau(self.tau)
        if self.mu < 0:
            raise ValueError("mu must be nonnegative")
        if abs(math.tanh(self.mu) - self.tau) > 1e-14:
            raise ValueError(f"tau={self.tau} is not tanh(mu={self.mu})")

    @classmethod
    def from_tau(cls, tau: float) -> "SqueezeParams":
        check_tau(tau)
        return cls(tau=tau, mu=math.atanh(tau))

    @classmethod
    def from_mu(cls, mu: float) -> "SqueezeParams":
        return cls(tau=math.tanh(mu), mu=mu)


@dataclass(frozen=True)
class SymMatrix2:
    """Complex symmetric 2x2 matrix ``[[r11, r12], [r12, r22]]``."""

    r11: complex
    r12: complex
    r22: complex

    @property
    def det(self) -> complex:
        return self.r11 * self.r22 - self.r12 * self.r12

    def apply(self, xi1, xi2):
        return self.r11 * xi1 + self.r12 * xi2, self.r12 * xi1 + self.r22 * xi2

    def inverse(self) -> "SymMatrix2":
        d = self.det
        return SymMatrix2(self.r22 / d, -self.r12 / d, self.r11 / d)


def r_tau(tau: float) -> SymMatrix2:
    """The unimodular matrix ``[[tau, i s], [i s, tau]]`` with ``s = sqrt(1 - tau^2)``."""
    s = math.sqrt(1.0 - tau * tau)
    return SymMatrix2(complex(tau), 1j * s, complex(tau))


# ---------------------------------------------------------------------------
# one-variable families


def _hermite_seq(m, x, one):
    """``H_m(x)`` (physicists') by ``H_{k+1} = 2x H_k - 2k H_{k-1}``; generic in ``x``."""
    h_prev, h = one * 0, one
    for k in range(m):
        h_prev, h = h, 2 * x * h - 2 * k * h_prev
    return h


def hermite_real(m: int, x):
    """Physicists' Hermite polynomial ``H_m(x)``; ``x`` may be complex or an array."""
    check_degree("m", m, SCALAR_CAP)
    if isinstance(x, BivariatePolynomial):
        return _hermite_seq(m, x, ONE)
    x = np.asarray(x, dtype=complex)
    out = _hermite_seq(m, x, np.ones_like(x))
    return out[()] if out.ndim == 0 else out


def hermite_real_sum(m: int, x):
    """Explicit finite-sum form of ``H_m``; an independent route, exact only at low degree."""
    check_degree("m", m, 20)
    x = np.asarray(x, dtype=complex)
    total = np.zeros_like(x)
    for l in range(m // 2 + 1):
        total = total + (-1) ** l * (2 * x) ** (m - 2 * l) / (math.factorial(l) * math.factorial(m - 2 * l))
    out = math.factorial(m) * total
    return out[()] if out.ndim == 0 else out


def _rescaled_seq(m, z, tau, one):
    # (tau/2)^{k/2} H_k(z / sqrt(2 tau)) obeys P_{k+1} = z P_k - k tau P_{k-1}
    p_prev, p = one * 0, one
    for k in range(m):
        p_prev, p = p, z * p - k * tau * p_prev
    return p


def hermite_rescaled(m: int, z, tau: float):
    """Holomorphic Hermite polynomial ``(tau/2)^{m/2} H_m(z / sqrt(2 tau))``.

    Evaluated by the recurrence in ``z`` directly, which has no ``0/0`` at
    ``tau = 0``; there the value is the monomial ``z**m``.
    """
    check_degree("m", m, SCALAR_CAP)
    check_tau(tau)
    if isinstance(z, BivariatePolynomial):
        return z**m if tau == 0 else _rescaled_seq(m, z, tau, ONE)
    z = np.asarray(z, dtype=complex)
    out = z**m if tau == 0 else _rescaled_seq(m, z, tau, np.ones_like(z))
    return out[()] if out.ndim == 0 else out


def laguerre(m: int, alpha: float, x):
    """Generalized Laguerre polynomial ``L_m^{(alpha)}(x)``.

    Uses the three-term recurrence for ``alpha > -1`` and the shifted-factorial
    sum otherwise (negative integer parameters appear in the kernel identities).
    """
    check_degree("m", m, SCALAR_CAP)
    if alpha <= -1:
        return laguerre_sum(m, alpha, x)
    x = np.asarray(x, dtype=complex)
    l_prev, l = np.zeros_like(x), np.ones_like(x)
    for k in range(m):
        l_prev, l = l, ((2 * k + 1 + alpha - x) * l - (k + alpha) * l_prev) / (k + 1)
    return l[()] if l.ndim == 0 else l


def _pochhammer(a: float, k: int) -> float:
    out = 1.0
    for j in range(k):
        out *= a + j
    return out


def laguerre_sum(m: int, alpha: float, x):
    """``(1/m!) sum_k (-m)_k (k + alpha + 1)_{m-k} x^k / k!``, valid for any real ``alpha``."""
    check_degree("m", m, SCALAR_CAP)
    x = np.asarray(x, dtype=complex)
    total = np.zeros_like(x)
    for k in range(m, -1, -1):
        c = _pochhammer(-m, k) * _pochhammer(k + alpha + 1, m - k) / math.factorial(k)
        total = total * x + c if k < m else np.full_like(x, c)
    out = total / math.factorial(m)
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# complex (Ito) Hermite polynomials


def complex_hermite(m: int, n: int) -> BivariatePolynomial:
    """``H_{m,n}(z, zbar) = sum_k (-1)^k k! C(m,k) C(n,k) z^{m-k} zbar^{n-k}``."""
    check_degree("m", m, BIVARIATE_CAP)
    check_degree("n", n, BIVARIATE_CAP)
    return BivariatePolynomial(
        {
            (m - k, n - k): (-1) ** k * math.factorial(k) * math.comb(m, k) * math.comb(n, k)
            for k in range(min(m, n) + 1)
        }
    )


def complex_hermite_rodrigues(m: int, n: int) -> BivariatePolynomial:
    """``(-1)^{m+n} e^{|z|^2} d_z^n d_zbar^m e^{-|z|^2}``, differentiated in coefficient space."""
    check_degree("m", m, BIVARIATE_CAP)
    check_degree("n", n, BIVARIATE_CAP)
    f = WeightedFunction(ONE, GaussianEnvelope(q11=-1.0))
    for _ in range(m):
        f = f.d_zbar()
    for _ in range(n):
        f = f.d_z()
    return f.poly * (-1) ** (m + n)


def phi_normalized(m: int, n: int, z: complex) -> complex:
    """``H_{m,n}(z, zbar) / sqrt(m! n!)`` from the polar Laguerre form.

    With ``k = min(m, n)`` and ``d = |m - n|`` the value is
    ``(-1)^k k! / sqrt(m! n!) * |z|^d e^{i (m - n) theta} L_k^{(d)}(|z|^2)``.
    """
    check_degree("m", m, BIVARIATE_CAP)
    check_degree("n", n, BIVARIATE_CAP)
    z = complex(z)
    if z == 0 and m != n:
        return complex(complex_hermite(m, n).evaluate(0)) / math.sqrt(math.factorial(m) * math.factorial(n))
    k, d = min(m, n), abs(m - n)
    r2 = abs(z) ** 2
    theta = cmath.phase(z)
    lag = laguerre(k, d, r2)
    pref = (-1) ** k * math.exp(math.lgamma(k + 1) - 0.5 * (math.lgamma(m + 1) + math.lgamma(n + 1)))
    return complex(pref * abs(z) ** d * cmath.exp(1j * (m - n) * theta) * lag)


def phi_table(kmax: int, n: int, z: complex) -> np.ndarray:
    """Values ``phi_{k,n}(z)`` for ``k = 0..kmax`` by the normalized recurrence.

    ``phi_{k+1,n} = (z phi_{k,n} - sqrt(n) phi_{k,n-1}) / sqrt(k+1)``, seeded by
    ``phi_{0,j} = zbar^j / sqrt(j!)``.  No degree cap: this is a pure scalar
    recurrence used by series evaluations.
    """
    z = complex(z)
    zb = z.conjugate()
    rows = np.zeros((n + 1, kmax + 1), dtype=complex)
    for j in range(n + 1):
        rows[j, 0] = zb**j / math.sqrt(math.factorial(j))
    for k in range(kmax):
        rows[0, k + 1] = z * rows[0, k] / math.sqrt(k + 1)
        for j in range(1, n + 1):
            rows[j, k + 1] = (z * rows[j, k] - math.sqrt(j) * rows[j - 1, k]) / math.sqrt(k + 1)
    return rows[n]


# ---------------------------------------------------------------------------
# squeezed complex Hermite polynomials


def _squeezed_factors(m, n, tau):
    """Coefficient sequences ``P_j`` (holomorphic) and ``R_j`` (linear in zbar).

    ``P_j = (tau/2)^{j/2} H_j(z / sqrt(2 tau))`` and
    ``R_j = (i sqrt(tau/2))^j H_j(i (zbar - tau z) / sqrt(2 tau (1 - tau^2)))``;
    both satisfy recurrences free of ``1/tau``:
    ``P_{j+1} = z P_j - j tau P_{j-1}`` and ``R_{j+1} = L R_j + j tau R_{j-1}``
    with ``L = (tau z - zbar) / sqrt(1 - tau^2)``.
    """
    s = math.sqrt(1.0 - tau * tau)
    lin = (Z * tau - ZBAR) / s
    ps = [ONE]
    p_prev = BivariatePolynomial()
    for j in range(m):
        p_prev, p_next = ps[-1], Z * ps[-1] - p_prev * (j * tau)
        ps.append(p_next)
    rs = [ONE]
    r_prev = BivariatePolynomial()
    for j in range(n):
        r_prev, r_next = rs[-1], lin * rs[-1] + r_prev * (j * tau)
        rs.append(r_next)
    return ps, rs, s


def squeezed_hermite(m: int, n: int, tau: float) -> BivariatePolynomial:
    """Squeezed complex Hermite polynomial ``H_{m,n}(z, zbar; tau)`` in coefficient form.

    Expands ``1/sqrt(m!) sum_k i^{n-k} k! C(n,k) C(m,k) 2^k (1-tau^2)^{k/2} tau^{-k}
    (tau/2)^{(m+n)/2} H_{m-k}(.) H_{n-k}(.)``; grouping the powers of ``tau``
    into ``P`` and ``R`` removes every negative power, so the sum reads
    ``1/sqrt(m!) sum_k k! C(n,k) C(m,k) (1-tau^2)^{k/2} P_{m-k} R_{n-k}``.
    At ``tau = 0`` the limit ``(-1)^n H_{m,n} / sqrt(m!)`` is returned.
    """
    check_degree("m", m, SQUEEZED_CAP)
    check_degree("n", n, SQUEEZED_CAP)
    check_tau(tau)
    if tau == 0:
        return complex_hermite(m, n) * ((-1) ** n / math.sqrt(math.factorial(m)))
    ps, rs, s = _squeezed_factors(m, n, tau)
    total = BivariatePolynomial()
    for k in range(min(m, n) + 1):
        c = math.factorial(k) * math.comb(n, k) * math.comb(m, k) * s**k
        total = total + ps[m - k] * rs[n - k] * c
    return total / math.sqrt(math.factorial(m))


def squeezed_hermite_direct(m: int, n: int, tau: float) -> BivariatePolynomial:
    """Term-by-term transcription with the unscaled Hermite arguments.

    Numerically poorer for small ``tau`` (it carries ``tau^{-k}`` and
    ``1/sqrt(tau)``), kept as an independent route for the recurrence form.
    """
    check_degree("m", m, SQUEEZED_CAP)
    check_degree("n", n, SQUEEZED_CAP)
    check_tau(tau, allow_zero=False)
    s = math.sqrt(1.0 - tau * tau)
    x = Z / math.sqrt(2 * tau)
    y = (ZBAR - Z * tau) * (1j / math.sqrt(2 * tau * (1 - tau * tau)))
    total = BivariatePolynomial()
    for k in range(min(m, n) + 1):
        c = (1j ** (n - k)) * math.factorial(k) * math.comb(n, k) * math.comb(m, k) * 2**k * s**k / tau**k
        total = total + _hermite_seq(m - k, x, ONE) * _hermite_seq(n - k, y, ONE) * c
    return total * ((tau / 2) ** ((m + n) / 2) / math.sqrt(math.factorial(m)))


def squeezed_hermite_value(m: int, n: int, tau: float, z: complex) -> complex:
    """Pointwise value of ``H_{m,n}(z, zbar; tau)`` from scalar recurrences (no coefficient algebra)."""
    check_degree("m", m, SQUEEZED_CAP)
    check_degree("n", n, SQUEEZED_CAP)
    check_tau(tau)
    z = complex(z)
    s = math.sqrt(1.0 - tau * tau)
    lin = (tau * z - z.conjugate()) / s
    ps = [1.0 + 0j, z]
    for j in range(1, m):
        ps.append(z * ps[j] - j * tau * ps[j - 1])
    rs = [1.0 + 0j, lin]
    for j in range(1, n):
        rs.append(lin * rs[j] + j * tau * rs[j - 1])
    total = 0j
    for k in range(min(m, n) + 1):
        total += math.factorial(k) * math.comb(n, k) * math.comb(m, k) * s**k * ps[m - k] * rs[n - k]
    return total / math.sqrt(math.factorial(m))


def genfun_residual(u: complex, v: complex, z: complex, tau: float, K: int) -> float:
    """Distance between the truncated double series and its closed-form exponential.

    Series: ``sum_{m,n<=K} sqrt(m!) H_{m,n}(z, zbar; tau) u^m v^n / (m! n!)``.
    Raises ``TruncationTooSmall`` when the terms with ``max(m, n) = K`` are
    larger than the residual they are supposed to bound.
    """
    if abs(u) > 0.5 or abs(v) > 0.5:
        raise ValueError("generating-function probes require |u|, |v| <= 0.5")
    if K < 1:
        raise TruncationTooSmall("K must be at least 1")
    check_degree("K", K, SQUEEZED_CAP)
    check_tau(tau)
    s = math.sqrt(1.0 - tau * tau)
    z = complex(z)
    zb = z.conjugate()
    closed = cmath.exp(tau * (v * v - u * u) / 2 + u * z - v * (zb - tau * z) / s + u * v * s)
    total = 0j
    edge = 0.0
    for m in range(K + 1):
        for n in range(K + 1):
            val = squeezed_hermite_value(m, n, tau, z)
            term = val * u**m * v**n / (math.sqrt(math.factorial(m)) * math.factorial(n))
            total += term
            if max(m, n) == K:
                edge += abs(term)
    residual = abs(total - closed)
    if edge > max(residual, 1e-300) and edge > 1e-16 * max(abs(closed), 1.0):
        raise TruncationTooSmall(f"K={K}: last shell {edge:.3e} exceeds residual {residual:.3e}")
    return residual


# ---------------------------------------------------------------------------
# 2D-Hermite polynomials


def hermite2d(R: SymMatrix2, n: int, m: int, xi1, xi2):
    """``H^{(R)}_{n,m}(xi1, xi2)``: coefficient of ``g1^n g2^m / (n! m!)`` in
    ``exp(-<R g, g>/2 + <R xi, g>)``, through one-variable Hermite polynomials.

    ``n`` pairs with the first component ``zeta1 = r11 xi1 + r12 xi2``.  The
    square roots are taken as ``s1 = sqrt(r11)``, ``s2 = sqrt(r22)`` (principal
    branch) and ``sqrt(r11 r22)`` is replaced by ``s1 * s2`` so that every
    branch choice cancels.  ``xi1``, ``xi2`` may be numbers or polynomials.
    """
    check_degree("n", n, SQUEEZED_CAP)
    check_degree("m", m, SQUEEZED_CAP)
    if R.r11 == 0 or R.r22 == 0:
        raise SingularR("hermite2d needs r11 != 0 and r22 != 0")
    s1, s2 = cmath.sqrt(R.r11), cmath.sqrt(R.r22)
    zeta1, zeta2 = R.apply(xi1, xi2)
    poly = isinstance(zeta1, BivariatePolynomial) or isinstance(zeta2, BivariatePolynomial)
    one = ONE if poly else 1.0 + 0j
    x1 = zeta1 * (1 / (math.sqrt(2) * s1))
    x2 = zeta2 * (1 / (math.sqrt(2) * s2))
    h1 = [one]
    h2 = [one]
    for k in range(n):
        h1.append(2 * x1 * h1[-1] - 2 * k * (h1[-2] if k else one * 0))
    for k in range(m):
        h2.append(2 * x2 * h2[-1] - 2 * k * (h2[-2] if k else one * 0))
    ratio = -2 * R.r12 / (s1 * s2)
    total = one * 0
    for k in range(min(n, m) + 1):
        c = ratio**k * math.factorial(n) * math.factorial(m) / (
            math.factorial(n - k) * math.factorial(m - k) * math.factorial(k)
        )
        total = total + h1[n - k] * h2[m - k] * c
    return total * (s1**n * s2**m / math.sqrt(2.0) ** (n + m))


def hermite2d_genfun(R: SymMatrix2, n: int, m: int, xi1: complex, xi2: complex, K: int | None = None) -> complex:
    """Independent route for ``hermite2d``: truncated power-series expansion of the
    generating function.

    The exponent is a polynomial of degree two in ``(g1, g2)``, so the product
    of the five elementary exponential series truncated at total degree ``K``
    gives the ``g1^n g2^m`` coefficient exactly once ``K >= n + m``.
    """
    K = n + m if K is None else K
    if K < n + m:
        raise TruncationTooSmall(f"K={K} < n + m = {n + m}")
    zeta1, zeta2 = R.apply(complex(xi1), complex(xi2))
    # exponent = zeta1 g1 + zeta2 g2 - r11/2 g1^2 - r12 g1 g2 - r22/2 g2^2
    factors = [
        (zeta1, 1, 0),
        (zeta2, 0, 1),
        (-R.r11 / 2, 2, 0),
        (-R.r12, 1, 1),
        (-R.r22 / 2, 0, 2),
    ]
    size = K + 1
    acc = np.zeros((size, size), dtype=complex)
    acc[0, 0] = 1.0
    for c, da, db in factors:
        series = np.zeros((size, size), dtype=complex)
        j = 0
        while j * da < size and j * db < size and j * (da + db) <= K:
            series[j * da, j * db] = c**j / math.factorial(j)
            j += 1
        prod = np.zeros_like(acc)
        for a, b in zip(*np.nonzero(series)):
            prod[a:, b:] += series[a, b] * acc[: size - a, : size - b]
        acc = prod
    return complex(acc[n, m] * math.factorial(n) * math.factorial(m))


# ---------------------------------------------------------------------------
# rejected candidates (kept to demonstrate why they fail)


def rodrigues_elliptic_candidate(m: int, n: int, tau: float) -> BivariatePolynomial:
    """``(-1)^{m+n} w^{-1} d_z^n d_zbar^m w`` with ``w`` the elliptic weight.

    Reduces to the complex Hermite polynomials at ``tau = 0`` but is not
    holomorphic at ``n = 0`` once ``tau > 0``.
    """
    check_degree("m", m, BIVARIATE_CAP)
    check_degree("n", n, BIVARIATE_CAP)
    check_tau(tau)
    d = 1.0 - tau * tau
    f = WeightedFunction(ONE, GaussianEnvelope(q20=tau / (2 * d), q11=-1.0 / d, q02=tau / (2 * d)))
    for _ in range(m):
        f = f.d_zbar()
    for _ in range(n):
        f = f.d_z()
    return f.poly * (-1) ** (m + n)


def substitution_candidate(m: int, n: int, tau: float) -> BivariatePolynomial:
    """``sum_k (-1)^k k! C(m,k) C(n,k) H_{m-k}(z, tau) zbar^{n-k}``: polyanalytic but not
    orthogonal for the elliptic measure."""
    check_degree("m", m, BIVARIATE_CAP)
    check_degree("n", n, BIVARIATE_CAP)
    check_tau(tau)
    total = BivariatePolynomial()
    for k in range(min(m, n) + 1):
        c = (-1) ** k * math.factorial(k) * math.comb(m, k) * math.comb(n, k)
        total = total + hermite_rescaled(m - k, Z, tau).shift(0, n - k) * c
    return total


__all__ = [
    "DegreeTooLarge",
    "SqueezeParams",
    "SymMatrix2",
    "TauOutOfRange",
    "complex_hermite",
    "complex_hermite_rodrigues",
    "genfun_residual",
    "hermite2d",
    "hermite2d_genfun",
    "hermite_real",
    "hermite_real_sum",
    "hermite_rescaled",
    "laguerre",
    "laguerre_sum",
    "phi_normalized",
    "phi_table",
    "r_tau",
    "rodrigues_elliptic_candidate",
    "squeezed_hermite",
    "squeezed_hermite_direct",
    "squeezed_hermite_value",
    "substitution_candidate",
]
