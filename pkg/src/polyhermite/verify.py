"""Verification checks.  Each check returns a ``CheckResult`` with a stable identifier,
the largest error it measured and the tolerance it was judged against.

Negative checks (a rejected construction must fail) report the witnessed
magnitude and pass when it exceeds the threshold (``direction="above"``).
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import eigen, ginibre, hermite, kernels, operators, quadrature
from .hermite import (
    SymMatrix2,
    complex_hermite,
    complex_hermite_rodrigues,
    hermite2d,
    hermite2d_genfun,
    hermite_real,
    hermite_real_sum,
    hermite_rescaled,
    laguerre,
    laguerre_sum,
    phi_normalized,
    r_tau,
    squeezed_hermite,
    squeezed_hermite_direct,
)
from .poly import BivariatePolynomial, LadderOperator, gw_apply


@dataclass
class CheckResult:
    check: str
    max_abs_err: float
    tol: float
    passed: bool
    direction: str = "below"
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "max_abs_err": _jsonable(self.max_abs_err),
            "tol": self.tol,
            "direction": self.direction,
            "pass": bool(self.passed),
            "detail": _jsonable(self.detail),
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    return x


def _result(check, err, tol, direction="below", **detail) -> CheckResult:
    err = float(err)
    if direction == "below":
        ok = err <= tol
    elif direction == "at_least":
        ok = err >= tol
    else:
        ok = err > tol
    return CheckResult(check, err, tol, bool(ok and math.isfinite(err)), direction, detail)


def _rel(p: BivariatePolynomial, q: BivariatePolynomial) -> float:
    """Coefficient difference relative to the larger coefficient scale."""
    scale = max(p.max_abs(), q.max_abs(), 1e-300)
    return p.max_abs_diff(q) / scale


def _rng(seed):
    return np.random.default_rng(seed)


def _disc(rng, k, radius=1.0):
    r = radius * np.sqrt(rng.uniform(0, 1, k))
    t = rng.uniform(0, 2 * math.pi, k)
    return r * np.exp(1j * t)


# ---------------------------------------------------------------------------
# poly_core


def check_poly_algebra(seed=0, trials=20) -> CheckResult:
    """Products, sums, derivatives and JSON round trip against pointwise arithmetic."""
    rng = _rng(seed)
    worst = 0.0
    for _ in range(trials):
        p = BivariatePolynomial(
            {(a, b): complex(*rng.standard_normal(2)) for a in range(4) for b in range(3) if rng.uniform() < 0.6}
        )
        q = BivariatePolynomial(
            {(a, b): complex(*rng.standard_normal(2)) for a in range(3) for b in range(4) if rng.uniform() < 0.6}
        )
        z = complex(*rng.uniform(-1, 1, 2))
        worst = max(worst, abs((p * q)(z) - p(z) * q(z)), abs((p - q)(z) - (p(z) - q(z))))
        # derivative of z^a zbar^b against its closed form
        d = p.d_z()
        expected = sum(c * a * z ** (a - 1) * z.conjugate() ** b for (a, b), c in p.coeffs.items() if a)
        worst = max(worst, abs(d(z) - expected))
        if BivariatePolynomial.from_json(p.to_json()) != p:
            worst = max(worst, 1.0)
    return _result("poly.algebra", worst, 1e-12)


def check_commutators() -> CheckResult:
    A, As, B, Bs = (operators.make_ladder(k) for k in ("A", "Astar", "B", "Bstar"))
    one = LadderOperator.identity()
    errs = {
        "[A,A*]-1": (operators.commutator(A, As) - one).max_abs(),
        "[B,B*]-1": (operators.commutator(B, Bs) - one).max_abs(),
        "[A,B]": operators.commutator(A, B).max_abs(),
        "[A,B*]": operators.commutator(A, Bs).max_abs(),
        "[A*,B]": operators.commutator(As, B).max_abs(),
    }
    for mu in (0.2, 0.8):
        bm, bms = operators.bogoliubov(mu)
        errs[f"[B_mu,B_mu*]-1 mu={mu}"] = (operators.commutator(bm, bms) - one).max_abs()
    return _result("operators.commutators", max(errs.values()), 1e-12, terms=errs)


# ---------------------------------------------------------------------------
# hermite_families


def check_rodrigues(max_degree=10) -> CheckResult:
    worst = 0.0
    for m in range(max_degree + 1):
        for n in range(max_degree + 1):
            p, q = complex_hermite(m, n), complex_hermite_rodrigues(m, n)
            keys = set(p.coeffs) | set(q.coeffs)
            for k in keys:
                a, b = p.coeff(*k), q.coeff(*k)
                worst = max(worst, abs(a - b) / max(abs(a), abs(b)))
    return _result("hermite.rodrigues_oracle", worst, 1e-10, max_degree=max_degree)


def check_scalar_sums(max_degree=20, seed=1) -> CheckResult:
    """Recurrence values against the explicit sums (Hermite and Laguerre)."""
    rng = _rng(seed)
    worst = 0.0
    for m in range(max_degree + 1):
        x = complex(*rng.uniform(-1.5, 1.5, 2))
        a, b = hermite_real(m, x), hermite_real_sum(m, x)
        worst = max(worst, abs(a - b) / max(abs(b), 1.0))
        alpha = float(rng.uniform(-0.5, 3))
        a, b = laguerre(m, alpha, x), laguerre_sum(m, alpha, x)
        worst = max(worst, abs(a - b) / max(abs(b), 1.0))
    return _result("hermite.scalar_sums", worst, 1e-10, max_degree=max_degree)


def check_phi_polar(max_degree=8, seed=2) -> CheckResult:
    rng = _rng(seed)
    worst = 0.0
    for m in range(max_degree + 1):
        for n in range(max_degree + 1):
            ch = complex_hermite(m, n)
            norm = math.sqrt(math.factorial(m) * math.factorial(n))
            for z in _disc(rng, 3, 1.5):
                a = phi_normalized(m, n, z)
                b = ch(z) / norm
                worst = max(worst, abs(a - b) / max(abs(b), 1.0))
    return _result("hermite.phi_polar", worst, 1e-10, max_degree=max_degree)


def three_route_errors(max_degree=8, taus=(0.25, 0.55, 0.9)) -> dict:
    """Pairwise coefficient discrepancies of the three squeezed-Hermite routes.

    (i) the closed form, in both the recurrence and the literal transcription,
    (ii) the ladder construction after rescaling ``z``, (iii) the 2D-Hermite
    polynomial of ``R_tau`` evaluated symbolically at
    ``(zbar, i (tau zbar - z)/sqrt(1 - tau^2))``.
    """
    errs = {"closed_vs_literal": 0.0, "closed_vs_ladder": 0.0, "closed_vs_2d": 0.0, "ladder_vs_2d": 0.0}
    Z, ZB = hermite.Z, hermite.ZBAR
    for tau in taus:
        s = math.sqrt(1 - tau * tau)
        R = r_tau(tau)
        xi2 = (ZB * tau - Z) * (1j / s)
        for m in range(max_degree + 1):
            for n in range(max_degree + 1):
                closed = squeezed_hermite(m, n, tau)
                literal = squeezed_hermite_direct(m, n, tau)
                ladder = operators.ladder_route_squeezed(m, n, tau)
                twod = hermite2d(R, m, n, ZB, xi2) * (1j**n / math.sqrt(math.factorial(m)))
                errs["closed_vs_literal"] = max(errs["closed_vs_literal"], _rel(closed, literal))
                errs["closed_vs_ladder"] = max(errs["closed_vs_ladder"], _rel(closed, ladder))
                errs["closed_vs_2d"] = max(errs["closed_vs_2d"], _rel(closed, twod))
                errs["ladder_vs_2d"] = max(errs["ladder_vs_2d"], _rel(ladder, twod))
    return errs


def check_three_routes(max_degree=8, taus=(0.25, 0.55, 0.9)) -> CheckResult:
    errs = three_route_errors(max_degree, taus)
    return _result("hermite.three_routes", max(errs.values()), 1e-9, pairs=errs, taus=list(taus))


def check_polyanalytic(max_m=12, max_n=8, taus=(0.1, 0.3, 0.5, 0.7, 0.9)) -> CheckResult:
    """``deg_zbar(H_{m,n}(.;tau)) <= n``; the error is the largest excess degree."""
    excess = 0
    for tau in taus:
        for m in range(max_m + 1):
            for n in range(max_n + 1):
                excess = max(excess, squeezed_hermite(m, n, tau).deg_zbar - n)
    return _result("hermite.polyanalytic", excess, 0, taus=list(taus))


def check_tau0_limit(max_degree=6) -> CheckResult:
    """Richardson extrapolation to ``tau = 0`` from ``tau = 1e-2, 1e-3, 1e-4``.

    The raw errors must shrink by a factor close to 10 per step (first
    order), and the two-stage extrapolation must land on the limit.
    """
    taus = (1e-2, 1e-3, 1e-4)
    raw = {t: 0.0 for t in taus}
    extrap = 0.0
    for m in range(max_degree + 1):
        for n in range(max_degree + 1):
            limit = complex_hermite(m, n) * ((-1) ** n / math.sqrt(math.factorial(m)))
            polys = {t: squeezed_hermite(m, n, t) for t in taus}
            for t in taus:
                raw[t] = max(raw[t], _rel(polys[t], limit))
            r1 = (polys[1e-3] * 10 - polys[1e-2]) / 9
            r2 = (polys[1e-4] * 10 - polys[1e-3]) / 9
            rich = (r2 * 100 - r1) / 99
            extrap = max(extrap, _rel(rich, limit))
    ratios = [raw[1e-2] / max(raw[1e-3], 1e-300), raw[1e-3] / max(raw[1e-4], 1e-300)]
    ok_order = all(9 < r < 11 for r in ratios)
    err = extrap if ok_order else max(extrap, 1.0)
    return _result("hermite.tau0_limit", err, 1e-5, raw_errors=[raw[t] for t in taus], ratios=ratios)


def check_corollary_2d(max_degree=8, probes=100, seed=3) -> CheckResult:
    """Pointwise: ``H_{m,n}(z;tau) = i^n / sqrt(m!) H^{(R_tau)}_{m,n}(zbar, i(tau zbar - z)/sqrt(1-tau^2))``.

    The first 2D index is the one paired with ``zeta1 = r11 xi1 + r12 xi2``.
    """
    rng = _rng(seed)
    worst = 0.0
    for _ in range(probes):
        tau = float(rng.uniform(0.05, 0.95))
        z = complex(_disc(rng, 1, 1.5)[0])
        s = math.sqrt(1 - tau * tau)
        R = r_tau(tau)
        xi1, xi2 = z.conjugate(), 1j * (tau * z.conjugate() - z) / s
        for m in range(max_degree + 1):
            for n in range(max_degree + 1):
                a = hermite.squeezed_hermite_value(m, n, tau, z)
                b = 1j**n / math.sqrt(math.factorial(m)) * hermite2d(R, m, n, xi1, xi2)
                worst = max(worst, abs(a - b) / max(abs(a), 1e-3))
    return _result("hermite.corollary_2d", worst, 1e-9, probes=probes)


def check_hermite2d_genfun(probes=50, max_degree=6, seed=4) -> CheckResult:
    rng = _rng(seed)
    worst = 0.0
    for _ in range(probes):
        r11, r12, r22 = (complex(*rng.uniform(-1, 1, 2)) for _ in range(3))
        R = SymMatrix2(r11, r12, r22)
        xi1, xi2 = (complex(*rng.uniform(-1, 1, 2)) for _ in range(2))
        n, m = (int(v) for v in rng.integers(0, max_degree + 1, 2))
        a = hermite2d(R, n, m, xi1, xi2)
        b = hermite2d_genfun(R, n, m, xi1, xi2)
        worst = max(worst, abs(a - b) / max(abs(b), 1.0))
    return _result("hermite.hermite2d_genfun", worst, 1e-9, probes=probes)


def check_conjugation(max_degree=8, taus=(0.3, 0.7), seed=5) -> CheckResult:
    """``conj(H(z, zbar)) = H(zbar, z)``: the same coefficients evaluated with the symbols swapped."""
    rng = _rng(seed)
    worst = 0.0
    for tau in taus:
        for m in range(max_degree + 1):
            for n in range(max_degree + 1):
                p = squeezed_hermite(m, n, tau)
                for z in _disc(rng, 3, 1.5):
                    a = np.conj(p.evaluate(z, np.conj(z)))
                    b = p.evaluate(np.conj(z), z)
                    worst = max(worst, abs(a - b) / max(abs(a), 1.0))
    return _result("hermite.conjugation", worst, 1e-10)


def check_taylor_shift(max_degree=12, seed=6, probes=10) -> CheckResult:
    """``H_n(u + t) = sum_j C(n,j) (2u)^{n-j} H_j(t)``."""
    rng = _rng(seed)
    worst = 0.0
    for _ in range(probes):
        u, t = (complex(*rng.uniform(-1, 1, 2)) for _ in range(2))
        for n in range(max_degree + 1):
            terms = [math.comb(n, j) * (2 * u) ** (n - j) * hermite_real(j, t) for j in range(n + 1)]
            lhs = hermite_real(n, u + t)
            scale = max(sum(abs(x) for x in terms), 1.0)
            worst = max(worst, abs(lhs - sum(terms)) / scale)
    return _result("hermite.taylor_shift", worst, 1e-10)


def check_laguerre_identity(max_degree=10, seed=7) -> CheckResult:
    """``L_j^{(-s)}(t) = ((j-s)!/j!) (-t)^s L_{j-s}^{(s)}(t)`` for ``1 <= s <= j``."""
    rng = _rng(seed)
    worst = 0.0
    hand = laguerre_sum(2, -1, 0.7) - (0.7**2 / 2 - 0.7)
    for t in list(rng.uniform(0, 3, 5)) + [complex(*rng.uniform(-1, 1, 2))]:
        for j in range(1, max_degree + 1):
            for s in range(1, j + 1):
                lhs = laguerre_sum(j, -s, t)
                rhs = math.factorial(j - s) / math.factorial(j) * (-t) ** s * laguerre(j - s, s, t)
                worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1.0))
    return _result("hermite.laguerre_identity", max(worst, abs(hand)), 1e-10, hand_case=hand)


def check_hermite_sum(max_p=6, terms=60, seed=8) -> CheckResult:
    """``sum_m a^m H_{m+p}(x)/m! = e^{2ax - a^2} H_p(x - a)`` for ``|a| <= 0.5``."""
    rng = _rng(seed)
    worst = 0.0
    for _ in range(10):
        a = complex(_disc(rng, 1, 0.5)[0])
        x = complex(*rng.uniform(-1, 1, 2))
        for p in range(max_p + 1):
            lhs = sum(a**m * hermite_real(m + p, x) / math.factorial(m) for m in range(terms))
            rhs = cmath.exp(2 * a * x - a * a) * hermite_real(p, x - a)
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1.0))
    return _result("hermite.hermite_sum", worst, 1e-9)


def check_genfun(probes=20, K=24, radius=0.3, seed=9) -> CheckResult:
    """Generating function of the squeezed family, and its ``tau = 0`` reduction."""
    rng = _rng(seed)
    worst = 0.0
    worst0 = 0.0
    for _ in range(probes):
        u, v = (complex(_disc(rng, 1, radius)[0]) for _ in range(2))
        z = complex(_disc(rng, 1, 1.5)[0])
        tau = float(rng.uniform(0.05, 0.95))
        worst = max(worst, hermite.genfun_residual(u, v, z, tau, K))
        # tau = 0 with v -> -v: exp(u z + v zbar - u v)
        closed = cmath.exp(u * z + v * z.conjugate() - u * v)
        total = sum(
            hermite.squeezed_hermite_value(m, n, 0.0, z) * u**m * (-v) ** n / (math.sqrt(math.factorial(m)) * math.factorial(n))
            for m in range(K + 1)
            for n in range(K + 1)
        )
        worst0 = max(worst0, abs(total - closed))
    return _result("hermite.genfun", max(worst, worst0), 1e-10, elliptic=worst, tau0=worst0, K=K)


def check_negative_rodrigues(tau=0.5, max_m=4) -> CheckResult:
    """The Rodrigues formula with the elliptic weight is not holomorphic at ``n = 0``."""
    witness = 0.0
    for m in range(1, max_m + 1):
        p = hermite.rodrigues_elliptic_candidate(m, 0, tau)
        witness = max(witness, max((abs(c) for (a, b), c in p.coeffs.items() if b > 0), default=0.0))
    return _result("hermite.negative_rodrigues", witness, 1e-6, direction="above", tau=tau)


def check_negative_substitution(tau=0.5, max_m=5, n_q=64) -> CheckResult:
    """The substituted candidate at ``n = 1`` is not orthogonal to level 0 in ``omega_tau``.

    Gram matrix over ``{candidate(m, n')}``, ``m <= max_m``, ``n' in {0, 1}``;
    the witness is the largest normalized entry in the ``n = 1`` rows outside
    the diagonal.  The true family on the same index set is reported for
    contrast (it stays at rounding level).
    """
    grid = quadrature.quad_grid(n_q, tau)

    def normalized_rows(fam):
        fs = [fam(m, n, tau) for n in (0, 1) for m in range(max_m + 1)]
        G = quadrature.gram_matrix(fs, tau, grid)
        d = np.sqrt(np.abs(np.diag(G)))
        N = np.abs(G) / np.outer(d, d)
        np.fill_diagonal(N, 0.0)
        return N[max_m + 1 :], N[max_m + 1 :, max_m + 1 :]

    cand_rows, cand_block = normalized_rows(hermite.substitution_candidate)
    true_rows, _ = normalized_rows(squeezed_hermite)
    return _result(
        "hermite.negative_substitution",
        cand_rows.max(),
        1e-3,
        direction="above",
        within_level_1=float(cand_block.max()),
        true_family=float(true_rows.max()),
        tau=tau,
    )


# ---------------------------------------------------------------------------
# operators


def check_ground_annihilation(mus=(0.0, 0.3, 0.8)) -> CheckResult:
    worst = gw_apply(operators.make_ladder("A"), operators.ground_state(0.0)).poly.max_abs()
    worst = max(worst, gw_apply(operators.make_ladder("B"), operators.ground_state(0.0)).poly.max_abs())
    for mu in mus:
        bm, _ = operators.bogoliubov(mu)
        worst = max(worst, gw_apply(bm, operators.ground_state(mu)).poly.max_abs())
    return _result("operators.ground_annihilation", worst, 1e-12)


def check_squeezed_ground(max_m=12, mus=(0.25, 0.7)) -> CheckResult:
    worst = 0.0
    for mu in mus:
        for m in range(max_m + 1):
            worst = max(
                worst, _rel(operators.squeezed_ground_ladder(m, mu).poly, operators.squeezed_ground_closed(m, mu).poly)
            )
    return _result("operators.squeezed_ground", worst, 1e-10)


def check_closed_form_g(max_degree=8, mus=(0.25, 0.55, 0.9)) -> CheckResult:
    """Closed-form expansion against ``sqrt(n!)`` times the ladder polynomial."""
    worst = 0.0
    for mu in mus:
        for m in range(max_degree + 1):
            for n in range(max_degree + 1):
                ladder = operators.ladder_construct(m, n, mu).poly * math.sqrt(math.factorial(n))
                worst = max(worst, _rel(ladder, operators.closed_form_g(m, n, mu)))
    return _result("operators.closed_form_g", worst, 1e-10)


def check_laplacian_eigen(max_m=12, max_n=8, taus=(0.1, 0.3, 0.5, 0.7, 0.9)) -> CheckResult:
    """``Delta_tau H_{m,n}(.;tau) = n H_{m,n}(.;tau)``, normwise relative in coefficients."""
    worst = 0.0
    for tau in taus:
        for m in range(max_m + 1):
            for n in range(max_n + 1):
                p = squeezed_hermite(m, n, tau)
                lhs = operators.laplacian_apply(p, tau)
                worst = max(worst, lhs.max_abs_diff(p * n) / max(p.max_abs(), 1e-300))
    return _result("operators.laplacian_eigen", worst, 1e-10, taus=list(taus))


def check_laplacian_literal_negative(tau=0.5) -> CheckResult:
    """The undeformed operator does not have the squeezed family as eigenfunctions for ``tau > 0``."""
    p = squeezed_hermite(0, 1, tau)
    lhs = operators.laplacian_apply(p, 0.0)
    witness = lhs.max_abs_diff(p) / p.max_abs()
    return _result("operators.laplacian_literal_negative", witness, 1e-3, direction="above", tau=tau)


def check_ladder_identity(max_n=4, max_m=4, mu=0.5) -> CheckResult:
    """``A^n (A*)^n f = prod_{k=1..n} (H_L + k) f`` on the level-0 states."""
    A, As = operators.make_ladder("A"), operators.make_ladder("Astar")
    worst = 0.0
    for n in range(max_n + 1):
        lhs_op = (A**n) @ (As**n)
        rhs_op = operators.ladder_product(n)
        for m in range(max_m + 1):
            f = operators.squeezed_ground_ladder(m, mu)
            worst = max(worst, _rel(gw_apply(lhs_op, f).poly, gw_apply(rhs_op, f).poly))
    return _result("operators.ladder_identity", worst, 1e-9)


def check_astar_binomial(max_n=8) -> CheckResult:
    As = operators.make_ladder("Astar")
    worst = 0.0
    for n in range(max_n + 1):
        worst = max(worst, ((As**n) - operators.astar_binomial(n)).max_abs())
    return _result("operators.astar_binomial", worst, 1e-12)


def check_gram_invariance(max_n=4, max_m=6, mu=0.5, n_q=64) -> CheckResult:
    """``G(n) = G(0)`` for the flat-measure Gram matrices of ``psi_m^{(n)}``; diagonals are reported."""
    g0 = operators.landau_gram(0, max_m, mu, n_q)
    scale = np.max(np.abs(np.diag(g0)))
    worst = 0.0
    offdiag = 0.0
    diagonals = {}
    for n in range(max_n + 1):
        g = g0 if n == 0 else operators.landau_gram(n, max_m, mu, n_q)
        worst = max(worst, np.max(np.abs(g - g0)) / scale)
        d = np.abs(np.diag(g))
        off = np.abs(g - np.diag(np.diag(g))) / np.sqrt(np.outer(d, d))
        offdiag = max(offdiag, off.max())
        diagonals[n] = [float(x.real) for x in np.diag(g)]
    return [
        _result("operators.gram_invariance", worst, 1e-7, diagonals=diagonals, expected_diagonal=math.cosh(mu)),
        _result("operators.gram_offdiag", offdiag, 1e-8),
    ]


def orthogonality_data(max_n=4, max_m=8, taus=(0.3, 0.6), n_q=64) -> dict:
    worst = 0.0
    norms = {}
    for tau in taus:
        grid = quadrature.quad_grid(n_q, tau)
        for n in range(max_n + 1):
            G = quadrature.gram_matrix([squeezed_hermite(m, n, tau) for m in range(max_m + 1)], tau, grid)
            d = np.abs(np.diag(G))
            off = np.abs(G - np.diag(np.diag(G))) / np.sqrt(np.outer(d, d))
            worst = max(worst, off.max())
            norms[f"tau={tau},n={n}"] = float(np.mean(d.real) / (math.factorial(n) * math.sqrt(1 - tau * tau)))
    return {"offdiag": worst, "diag_over_nfact_sqrt": norms}


def check_orthogonality(max_n=4, max_m=8, taus=(0.3, 0.6), n_q=64) -> CheckResult:
    data = orthogonality_data(max_n, max_m, taus, n_q)
    return _result("operators.orthogonality_elliptic", data["offdiag"], 1e-8, norms=data["diag_over_nfact_sqrt"])


# ---------------------------------------------------------------------------
# measures_quadrature


def check_rule(n_qs=(2, 8, 32, 64, 128)) -> CheckResult:
    """1D exactness for ``t^{2k}``, positive weights and node symmetry."""
    worst = 0.0
    for n_q in n_qs:
        t, w = quadrature.gauss_hermite(n_q)
        if np.any(w <= 0):
            worst = max(worst, 1.0)
        worst = max(worst, np.max(np.abs(t + t[::-1])) / 1e-13 * 1e-12)
        for k in range(n_q):
            exact = math.gamma(k + 0.5)
            # relative to the absolute sum, which is the conditioning of the rule
            approx = np.sum(w * t ** (2 * k))
            worst = max(worst, abs(approx - exact) / exact)
    return _result("quadrature.rule_exactness", worst, 1e-12)


def check_mass(taus=(0.0, 0.3, 0.6, 0.9), n_q=64) -> CheckResult:
    worst = 0.0
    for tau in taus:
        g = quadrature.quad_grid(n_q, tau)
        worst = max(worst, abs(np.sum(g.weights) - math.sqrt(1 - tau * tau)))
    return _result("quadrature.mass", worst, 1e-12)


def check_moments(max_total=10, taus=(0.0, 0.5, 0.8), n_q=64) -> CheckResult:
    worst = 0.0
    for tau in taus:
        g = quadrature.quad_grid(n_q, tau)
        x, y = g.points.real, g.points.imag
        for a in range(max_total + 1):
            for b in range(max_total + 1 - a):
                exact = quadrature.gaussian_moment(a, b, tau)
                approx = np.sum(g.weights * x ** (2 * a) * y ** (2 * b))
                worst = max(worst, abs(approx - exact) / exact)
    return _result("quadrature.moments", worst, 1e-11)


def check_refinement(tau=0.5, n_q=32, max_degree=6) -> CheckResult:
    """Doubling the rule leaves inner products of low-degree polynomials unchanged."""
    coarse = quadrature.quad_grid(n_q, tau)
    fine = quadrature.quad_grid(2 * n_q, tau)
    fs = [squeezed_hermite(m, n, tau) for m in range(max_degree + 1) for n in range(max_degree + 1 - m)]
    gc = quadrature.gram_matrix(fs, tau, coarse)
    gf = quadrature.gram_matrix(fs, tau, fine)
    err = np.max(np.abs(gc - gf)) / np.max(np.abs(gf))
    return _result("quadrature.refinement", err, 1e-11, n_q=n_q)


def check_rescaled_orthogonality(max_degree=10, tau=0.5, n_q=64) -> CheckResult:
    grid = quadrature.quad_grid(n_q, tau)
    Z = hermite.Z
    G = quadrature.gram_matrix([hermite_rescaled(m, Z, tau) for m in range(max_degree + 1)], tau, grid)
    d = np.abs(np.diag(G))
    off = np.abs(G - np.diag(np.diag(G))) / np.sqrt(np.outer(d, d))
    return _result("quadrature.rescaled_orthogonality", off.max(), 1e-9)


def check_h_gram(max_degree=12, tau=0.5, n_q=64) -> CheckResult:
    """Normalized holomorphic family: diagonal Gram, diagonal values recorded."""
    grid = quadrature.quad_grid(n_q, tau)
    Z = hermite.Z
    hs = [hermite_rescaled(k, Z, tau) * (1 / math.sqrt(math.factorial(k))) for k in range(max_degree + 1)]
    G = quadrature.gram_matrix(hs, tau, grid)
    d = np.abs(np.diag(G))
    off = np.abs(G - np.diag(np.diag(G))) / np.sqrt(np.outer(d, d))
    return _result("quadrature.h_gram", off.max(), 1e-9, diagonal=[float(x) for x in d])


# ---------------------------------------------------------------------------
# kernels_transforms


def _probes(rng, k, radius=1.0):
    return _disc(rng, k, radius), _disc(rng, k, radius)


def check_ratio_constancy(max_n=4, taus=(0.2, 0.5, 0.8), probes=200, seed=10) -> CheckResult:
    rng = _rng(seed)
    worst = 0.0
    constants = {}
    for tau in taus:
        for n in range(max_n + 1):
            zs, ws = _probes(rng, probes)
            _, rep = kernels.calibrate(kernels.KernelSpec(tau, n), zs, ws)
            worst = max(worst, rep["std"] / rep["abs"])
            constants[f"tau={tau},n={n}"] = {"abs": rep["abs"], "arg": rep["arg"]}
    return _result("kernels.ratio_constancy", worst, 1e-8, c_n=constants)


def check_kernel_tau0(max_n=4, probes=50, seed=11) -> CheckResult:
    """Series at ``tau = 0`` and closed form at small ``tau`` against ``e^{zbar w}(z - w)^n / sqrt(n!)``.

    The constant between them is measured (a single value per ``n``).
    """
    rng = _rng(seed)
    worst = 0.0
    closed = 0.0
    consts = {}
    for n in range(max_n + 1):
        zs, ws = _probes(rng, probes)
        lim = kernels.kernel_w_limit(n, zs, ws)
        ser = np.array([kernels.kernel_w_series(kernels.KernelSpec(0.0, n), z, w).value for z, w in zip(zs, ws)])
        c = complex(np.mean(ser / lim))
        consts[n] = c
        worst = max(worst, np.max(np.abs(ser - c * lim)) / np.max(np.abs(lim)))
        small = kernels.kernel_w_closed(kernels.KernelSpec(1e-9, n), zs, ws)
        closed = max(closed, np.max(np.abs(small - lim)) / np.max(np.abs(lim)))
    return [
        _result("kernels.tau0_limit", worst, 1e-10, constant=consts),
        _result("kernels.tau0_closed", closed, 1e-7, tau=1e-9),
    ]


def check_finite_part(max_n=8, tau=0.5, probes=20, seed=12) -> CheckResult:
    rng = _rng(seed)
    worst = 0.0
    for n in range(max_n + 1):
        zs, ws = _probes(rng, probes, 1.5)
        for z, w in zip(zs, ws):
            total, coef = kernels.finite_part(kernels.KernelSpec(tau, n), z, w)
            worst = max(worst, abs(total), coef)
    return _result("kernels.finite_part", worst, 1e-10)


def check_landau_reproduction(max_m=6, max_n=3, n_q=64, probes=4, seed=13) -> CheckResult:
    """``int K_n(z, u) phi_{m,n}(u) omega_0(u) du = phi_{m,n}(z)``; the plain-distance
    variant is reported for contrast."""
    rng = _rng(seed)
    grid = quadrature.quad_grid(n_q, 0.0)
    pts = grid.points
    worst = 0.0
    plain = 0.0
    for n in range(max_n + 1):
        for m in range(max_m + 1):
            phi = np.array([phi_normalized(m, n, u) for u in pts])
            for z in _disc(rng, probes, 1.0):
                val = np.sum(kernels.kernel_k_landau(n, z, pts) * phi * grid.weights)
                ref = phi_normalized(m, n, z)
                worst = max(worst, abs(val - ref))
                if n:
                    k_plain = np.exp(z * np.conj(pts)) * laguerre(n, 0, np.abs(z - pts))
                    plain = max(plain, abs(np.sum(k_plain * phi * grid.weights) - ref))
    return _result("kernels.landau_reproduction", worst, 1e-7, plain_distance_error=plain)


def check_squeeze_identity(max_n=3, tau=0.4, probes=10, seed=14) -> CheckResult:
    rng = _rng(seed)
    worst = kernels.squeeze_identity_residual(kernels.KernelSpec(tau, 0), 0.0, 0.3 + 0.2j)
    small = 0.0
    for n in range(max_n + 1):
        zs, ws = _probes(rng, probes)
        for z, w in zip(zs, ws):
            worst = max(worst, kernels.squeeze_identity_residual(kernels.KernelSpec(tau, n), z, w))
            small = max(small, kernels.squeeze_identity_residual(kernels.KernelSpec(1e-6, n), z, w))
    return _result("kernels.squeeze_identity", max(worst, small), 1e-8, tau0=small)


def check_tpcs(probes=100, seed=15) -> CheckResult:
    rng = _rng(seed)
    worst = 0.0
    ab = 0.0
    for _ in range(probes):
        tau = float(rng.uniform(0.01, 0.95))
        z, w = (complex(x) for x in _disc(rng, 2, 1.5))
        t = kernels.tpcs_kernel(tau, z, w)
        tilde = math.exp(-abs(w) ** 2 / 2) * kernels.tilde_kernel(kernels.KernelSpec(tau, 0), z, w)
        worst = max(worst, abs(t - tilde), abs(t - kernels.tpcs_expanded(tau, z, w)))
        a, b = kernels.tpcs_ab(tau)
        ab = max(ab, abs(a * a - b * b - 1))
    return [_result("kernels.tpcs", worst, 1e-12), _result("kernels.tpcs_ab", ab, 1e-14)]


def check_transform(max_k=6, ns=(0, 1, 2), tau=0.5, n_q=48, seed=16) -> CheckResult:
    """Transform of ``h_{tau,k}``: the image is fitted by polynomials of ``zbar``-degree ``<= n``
    and is proportional to ``phi_{k,n}``."""
    rng = _rng(seed)
    grid = quadrature.quad_grid(n_q, tau)
    zs = _disc(rng, 60, 1.2)
    fit = 0.0
    prop = 0.0
    consts = {}
    for n in ns:
        spec = kernels.KernelSpec(tau, n)
        for k in range(max_k + 1):
            hk = hermite_rescaled(k, hermite.Z, tau) * (1 / math.sqrt(math.factorial(k)))
            image = kernels.transform_T(spec, hk, grid)(zs)
            _, resid = kernels.fit_polyanalytic(zs, image, k + n + 2, n)
            fit = max(fit, resid)
            target = np.array([phi_normalized(k, n, z) for z in zs])
            c = np.vdot(target, image) / np.vdot(target, target)
            prop = max(prop, np.linalg.norm(image - c * target) / np.linalg.norm(image))
            consts[f"n={n},k={k}"] = complex(c)
    return _result("kernels.transform_image", max(fit, prop), 1e-7, fit=fit, proportionality=prop, constants=consts)


# ---------------------------------------------------------------------------
# elliptic_ginibre


def check_eigensolver(count=100, sizes=(8, 32, 128), seed=17) -> CheckResult:
    rng = _rng(seed)
    worst = 0.0
    for i in range(count):
        n = sizes[i % len(sizes)]
        m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        worst = max(worst, eigen.residuals(m, eigen.eigenvalues(m)).max())
    return _result("ginibre.eigensolver_residuals", worst, 1e-8, count=count)


def check_eigen_small() -> CheckResult:
    diag = eigen.canonical_sort(eigen.eigenvalues(np.diag([3.0, -1.0, 2.0, 0.5])))
    err = np.max(np.abs(diag - np.array([-1.0, 0.5, 2.0, 3.0])))
    comp = eigen.canonical_sort(eigen.eigenvalues(np.array([[0.0, 1.0], [1.0, 0.0]])))
    err = max(err, np.max(np.abs(comp - np.array([-1.0, 1.0]))))
    return _result("ginibre.eigen_small_cases", err, 1e-12)


def check_elliptic_law(n=256, trials=20, tau=0.5, seed=0, threads=None) -> CheckResult:
    samples = ginibre.run_trials(n, tau, ginibre.trial_seeds(seed, trials), threads=threads)
    st = ginibre.pooled_stats(samples)
    info = dict(N=n, trials=trials, tau=tau, generator=ginibre.GENERATOR)
    return [
        _result("ginibre.elliptic_moment", abs(st.second_moment_over_N - tau), 0.05, value=st.second_moment_over_N, **info),
        _result("ginibre.ellipse_fraction", st.ellipse_fraction, 0.99, direction="at_least", **info),
    ]


def check_gue_moment(n=256, trials=20, seed=1) -> CheckResult:
    vals = []
    for s in ginibre.trial_seeds(seed, trials):
        m = ginibre.sample_gue(n, s)
        vals.append(np.trace(m @ m).real / n**2)
    herm = max(np.max(np.abs(ginibre.sample_gue(8, s) - ginibre.sample_gue(8, s).conj().T)) for s in range(3))
    err = abs(np.mean(vals) - 1.0)
    return _result("ginibre.gue_second_moment", err + herm, 0.05, moment=float(np.mean(vals)))


def check_entry_covariance(tau=0.5, n=448, seed=2) -> CheckResult:
    j = ginibre.sample_elliptic(n, tau, seed)
    iu = np.triu_indices(n, 1)
    cov = complex(np.mean(j[iu] * j.T[iu]))
    var = float(np.mean(np.abs(j) ** 2))
    j0 = ginibre.sample_elliptic(n, 0.0, seed + 1)
    var0 = float(np.mean(np.abs(j0) ** 2))
    err = max(abs(cov - tau), abs(var - 1), abs(var0 - 1))
    return _result("ginibre.entry_covariance", err, 0.05, covariance=cov, variance=var, variance_tau0=var0, pairs=len(iu[0]))


def check_endpoints(n=256, seed=3) -> CheckResult:
    s1 = ginibre.sample_spectrum(n, 1.0, seed)
    imag = float(np.max(np.abs(s1.eigenvalues.imag)))
    herm = float(np.max(np.abs(ginibre.sample_elliptic(16, 1.0, seed) - ginibre.sample_elliptic(16, 1.0, seed).conj().T)))
    s0 = ginibre.sample_spectrum(n, 0.0, seed)
    frac = ginibre.spectral_stats(s0).ellipse_fraction
    return [
        _result("ginibre.tau1_real", max(imag, herm), 1e-10),
        _result("ginibre.tau0_disc", frac, 0.99, direction="at_least", N=n),
    ]


def check_determinism(n=64, tau=0.5, seed=4) -> CheckResult:
    a = ginibre.sample_spectrum(n, tau, seed).eigenvalues
    b = ginibre.sample_spectrum(n, tau, seed).eigenvalues
    c = ginibre.run_trials(n, tau, [seed, seed + 1], threads=2)[0].eigenvalues
    same = np.array_equal(a.view(np.float64), b.view(np.float64)) and np.array_equal(a.view(np.float64), c.view(np.float64))
    return _result("ginibre.determinism", 0.0 if same else 1.0, 0.0)


# ---------------------------------------------------------------------------
# suites


def suite_checks(suite: str, *, tau: float = 0.5, max_degree: int = 8, n_q: int = 64, seed: int = 0, trials: int = 20, threads=None):
    """Zero-argument callables for a named suite, parameterized by the CLI flags."""
    d = max_degree
    taus = tuple(sorted({0.25, 0.55, 0.9, tau} - {0.0}))
    suites = {
        "poly": [check_poly_algebra, check_commutators],
        "hermite": [
            lambda: check_rodrigues(min(d, 10)),
            check_scalar_sums,
            lambda: check_phi_polar(d),
            lambda: check_three_routes(d, taus),
            lambda: check_polyanalytic(max(d, 1) + 4, d),
            lambda: check_tau0_limit(min(d, 6)),
            lambda: check_corollary_2d(d),
            check_hermite2d_genfun,
            lambda: check_conjugation(d),
            check_taylor_shift,
            check_laguerre_identity,
            check_hermite_sum,
            check_genfun,
            check_negative_rodrigues,
            check_negative_substitution,
        ],
        "operators": [
            check_ground_annihilation,
            lambda: check_squeezed_ground(min(d + 4, 12)),
            lambda: check_closed_form_g(d),
            lambda: check_laplacian_eigen(d + 4, d),
            check_laplacian_literal_negative,
            check_ladder_identity,
            check_astar_binomial,
            lambda: check_gram_invariance(n_q=n_q, mu=math.atanh(tau) if 0 < tau < 1 else 0.5),
            lambda: check_orthogonality(4, d, (0.3, 0.6) if tau in (0.3, 0.6) else (0.3, 0.6, tau), n_q),
        ],
        "quadrature": [
            check_rule,
            check_mass,
            check_moments,
            check_refinement,
            check_rescaled_orthogonality,
            check_h_gram,
        ],
        "kernels": [
            check_ratio_constancy,
            check_kernel_tau0,
            check_finite_part,
            check_landau_reproduction,
            check_squeeze_identity,
            check_tpcs,
            check_transform,
        ],
        "ginibre": [
            check_eigen_small,
            check_eigensolver,
            lambda: check_elliptic_law(256, trials, tau if tau <= 1 else 0.5, seed, threads),
            check_gue_moment,
            check_entry_covariance,
            check_endpoints,
            check_determinism,
        ],
    }
    if suite == "all":
        return [c for name in ("poly", "hermite", "operators", "quadrature", "kernels", "ginibre") for c in suites[name]]
    if suite not in suites:
        raise KeyError(suite)
    return suites[suite]


SUITES = ("poly", "hermite", "operators", "quadrature", "kernels", "ginibre", "all")


def run_suite(suite: str, **params) -> list[CheckResult]:
    out = []
    for fn in suite_checks(suite, **params):
        t0 = time.perf_counter()
        res = fn()
        res = res if isinstance(res, list) else [res]
        for r in res:
            r.seconds = (time.perf_counter() - t0) / len(res)
        out.extend(res)
    return out
