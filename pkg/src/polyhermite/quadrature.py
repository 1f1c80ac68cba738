"""Gaussian and elliptic measures on the plane and tensor Gauss-Hermite rules for them.

The one-dimensional rule comes from the Golub-Welsch eigenproblem of the
Hermite Jacobi matrix, solved here by implicit-shift QL; each node is then
polished with one Newton step on the orthonormal recurrence, and its weight is
recomputed from the (analytically known) normalized eigenvector at the
polished node.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import EigensolveFailure, GridMismatch, NodesOutOfRange, check_tau
from .poly import WeightedFunction

ELLIPTIC = "elliptic-native"
FLAT = "flat-with-density"


def omega_density(z, tau: float):
    """Elliptic weight ``exp(-(|z|^2 - tau Re z^2) / (1 - tau^2)) / pi`` (Gaussian at tau = 0)."""
    check_tau(tau)
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    out = np.exp(-x * x / (1 + tau) - y * y / (1 - tau)) / math.pi
    return out[()] if out.ndim == 0 else out


def _tridiag_ql(diag: np.ndarray, off: np.ndarray):
    """Eigenvalues and first eigenvector components of a symmetric tridiagonal matrix.

    Implicit-shift QL (Wilkinson shift), rotating only the first row of the
    eigenvector matrix since Gauss weights need nothing else.
    """
    n = len(diag)
    d = np.array(diag, dtype=float)
    e = np.zeros(n)
    e[: n - 1] = off
    first = np.zeros(n)
    first[0] = 1.0
    eps = np.finfo(float).eps
    for l in range(n):
        its = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            its += 1
            if its > 60:
                raise EigensolveFailure(f"QL did not converge for eigenvalue {l}")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = first[i + 1]
                first[i + 1] = s * first[i] + c * f
                first[i] = c * first[i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d, first


def _orthonormal_hermite(n: int, x: np.ndarray):
    """Orthonormal Hermite polynomials ``p_0..p_n`` (weight ``exp(-t^2)``) at ``x``."""
    p = np.zeros((n + 1,) + x.shape)
    p[0] = math.pi**-0.25
    if n > 0:
        p[1] = math.sqrt(2.0) * x * p[0]
    for k in range(1, n):
        p[k + 1] = x * math.sqrt(2.0 / (k + 1)) * p[k] - math.sqrt(k / (k + 1)) * p[k - 1]
    return p


def gauss_hermite(n_q: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``n_q``-point rule for ``int f(t) exp(-t^2) dt``."""
    if not (2 <= n_q <= 256):
        raise NodesOutOfRange(f"n_q={n_q} outside [2, 256]")
    off = np.sqrt(np.arange(1, n_q) / 2.0)
    nodes, first = _tridiag_ql(np.zeros(n_q), off)
    order = np.argsort(nodes)
    nodes = nodes[order]
    # one Newton step on p_n, p_n' = sqrt(2 n) p_{n-1}
    p = _orthonormal_hermite(n_q, nodes)
    nodes = nodes - p[n_q] / (math.sqrt(2.0 * n_q) * p[n_q - 1])
    # symmetrize: the exact rule is odd-symmetric
    nodes = 0.5 * (nodes - nodes[::-1])
    p = _orthonormal_hermite(n_q - 1, nodes)
    weights = 1.0 / np.sum(p * p, axis=0)
    weights = 0.5 * (weights + weights[::-1])
    return nodes, weights


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    """Tensor rule on the plane: ``sum_ij wx_i wy_j f(x_i + i y_j)``."""

    nodes_x: np.ndarray
    nodes_y: np.ndarray
    weights_x: np.ndarray
    weights_y: np.ndarray
    tau: float
    kind: str

    @cached_property
    def points(self) -> np.ndarray:
        x, y = np.meshgrid(self.nodes_x, self.nodes_y, indexing="ij")
        return (x + 1j * y).ravel()

    @cached_property
    def weights(self) -> np.ndarray:
        return np.outer(self.weights_x, self.weights_y).ravel()

    @property
    def n_q(self) -> int:
        return len(self.nodes_x)

    def integrate(self, f) -> complex:
        vals = f(self.points) if callable(f) else np.asarray(f)
        return complex(np.sum(vals * self.weights))

    def to_csv(self, fh=None) -> str | None:
        """Write columns ``x, y, weight``; returns the text when no handle is given."""
        own = fh is None
        buf = io.StringIO() if own else fh
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "y", "weight"])
        for zz, w in zip(self.points, self.weights):
            writer.writerow([f"{zz.real:.17g}", f"{zz.imag:.17g}", f"{w:.17g}"])
        return buf.getvalue() if own else None


def gaussian_grid(n_q: int, alpha: float, beta: float, *, scale: float = 1.0, tau: float = 0.0, kind: str = FLAT):
    """Rule for ``scale * int f(x + i y) exp(-alpha x^2 - beta y^2) dx dy``."""
    if alpha <= 0 or beta <= 0:
        raise ValueError("Gaussian weight must be integrable")
    t, w = gauss_hermite(n_q)
    return QuadratureGrid(
        nodes_x=t / math.sqrt(alpha),
        nodes_y=t / math.sqrt(beta),
        weights_x=w / math.sqrt(alpha) * scale,
        weights_y=w / math.sqrt(beta),
        tau=tau,
        kind=kind,
    )


def quad_grid(n_q: int, tau: float, kind: str = ELLIPTIC) -> QuadratureGrid:
    """Tensor Gauss-Hermite grid adapted to a planar Gaussian measure.

    ``elliptic-native``: ``sum w f ~ int f(z) omega_tau(z) dz`` (mass sqrt(1 - tau^2)).
    ``flat-with-density``: ``sum w f ~ int f(z) |psi_mu(z)|^2 dz`` with
    ``|psi_mu|^2 = exp(-(1 - tau) x^2 - (1 + tau) y^2) / pi``, i.e. flat
    Lebesgue integrals of products of squeezed ground-state functions.
    """
    check_tau(tau)
    if kind == ELLIPTIC:
        return gaussian_grid(n_q, 1.0 / (1 + tau), 1.0 / (1 - tau), scale=1 / math.pi, tau=tau, kind=ELLIPTIC)
    if kind == FLAT:
        return gaussian_grid(n_q, 1.0 - tau, 1.0 + tau, scale=1 / math.pi, tau=tau, kind=FLAT)
    raise ValueError(f"unknown grid kind {kind!r}")


def inner_product(f, g, tau: float, grid: QuadratureGrid) -> complex:
    """``int conj(f) g omega_tau dz`` by quadrature; conjugate-linear in ``f``."""
    if grid.kind != ELLIPTIC or grid.tau != tau:
        raise GridMismatch(f"grid built for tau={grid.tau} ({grid.kind}), asked for tau={tau}")
    pts = grid.points
    fv = np.asarray(f(pts), dtype=complex)
    gv = np.asarray(g(pts), dtype=complex)
    return complex(np.sum(np.conj(fv) * gv * grid.weights))


def gram_matrix(funcs, tau: float, grid: QuadratureGrid) -> np.ndarray:
    """Matrix of ``inner_product(f_i, f_j)`` with each function evaluated once."""
    if grid.kind != ELLIPTIC or grid.tau != tau:
        raise GridMismatch(f"grid built for tau={grid.tau} ({grid.kind}), asked for tau={tau}")
    vals = np.array([np.asarray(f(grid.points), dtype=complex) for f in funcs])
    return (np.conj(vals) * grid.weights) @ vals.T


def flat_inner_product(f: WeightedFunction, g: WeightedFunction, n_q: int = 64) -> complex:
    """``int conj(f) g dx dy`` over the flat plane for Gaussian-weighted functions.

    The envelopes combine into ``exp(E)``; ``Re E`` must be a diagonal,
    negative-definite form in ``(x, y)``, which sets the rule, and ``Im E`` is
    kept in the integrand.
    """
    return flat_gram([f], [g], n_q)[0, 0]


def flat_gram(fs, gs, n_q: int = 64) -> np.ndarray:
    ef, eg = fs[0].env, gs[0].env
    for h in fs:
        if h.env != ef:
            raise ValueError("all left functions must share one envelope")
    for h in gs:
        if h.env != eg:
            raise ValueError("all right functions must share one envelope")
    q20 = np.conj(ef.q02) + eg.q20
    q11 = np.conj(ef.q11) + eg.q11
    q02 = np.conj(ef.q20) + eg.q02
    axx = (q20 + q11 + q02).real
    ayy = (q11 - q20 - q02).real
    axy = (2j * (q20 - q02)).real
    if abs(axy) > 1e-14 * (abs(axx) + abs(ayy)):
        raise ValueError("combined envelope has an x*y cross term; rotate coordinates first")
    grid = gaussian_grid(n_q, -axx, -ayy)
    pts = grid.points
    expo = q20 * pts**2 + q11 * pts * np.conj(pts) + q02 * np.conj(pts) ** 2
    phase = np.exp(1j * expo.imag) * np.conj(ef.c) * eg.c
    left = np.array([np.conj(h.poly(pts)) for h in fs])
    right = np.array([h.poly(pts) for h in gs])
    return (left * (grid.weights * phase)) @ right.T


def gaussian_moment(a: int, b: int, tau: float) -> float:
    """Closed form of ``int x^{2a} y^{2b} omega_tau dz``."""
    return (
        math.gamma(a + 0.5) * math.gamma(b + 0.5) * (1 + tau) ** (a + 0.5) * (1 - tau) ** (b + 0.5) / math.pi
    )
