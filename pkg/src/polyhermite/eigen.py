"""Dense nonsymmetric eigenvalues: Householder Hessenberg reduction followed by
single-shift complex QR (implicit bulge chase) with Wilkinson shifts.

Only eigenvalues are produced; rotations are applied to the active block.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .errors import NoConvergence, SizeOutOfRange

MAX_N = 512

_STATUS_OK = 0
_STATUS_NOCONV = 1


@njit(cache=True, nogil=True)
def _hessenberg(a):
    n = a.shape[0]
    for k in range(n - 2):
        m = n - k - 1
        v = np.empty(m, dtype=np.complex128)
        alpha = 0.0
        for i in range(m):
            v[i] = a[k + 1 + i, k]
            alpha += v[i].real ** 2 + v[i].imag ** 2
        alpha = np.sqrt(alpha)
        if alpha == 0.0:
            continue
        x0 = v[0]
        ax0 = abs(x0)
        phase = x0 / ax0 if ax0 > 0 else 1.0 + 0.0j
        v[0] = x0 + phase * alpha
        vn = 0.0
        for i in range(m):
            vn += v[i].real ** 2 + v[i].imag ** 2
        vn = np.sqrt(vn)
        for i in range(m):
            v[i] /= vn
        # left: rows k+1.., columns k..
        for j in range(k, n):
            s = 0.0j
            for i in range(m):
                s += np.conj(v[i]) * a[k + 1 + i, j]
            s *= 2.0
            for i in range(m):
                a[k + 1 + i, j] -= v[i] * s
        # right: all rows, columns k+1..
        for i in range(n):
            s = 0.0j
            for j in range(m):
                s += a[i, k + 1 + j] * v[j]
            s *= 2.0
            for j in range(m):
                a[i, k + 1 + j] -= s * np.conj(v[j])
        for i in range(k + 2, n):
            a[i, k] = 0.0
    return a


@njit(cache=True, nogil=True)
def _eig2(a, b, c, d):
    # eigenvalues of [[a, b], [c, d]]
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    mid = 0.5 * (a + d)
    return mid + disc, mid - disc


@njit(cache=True, nogil=True)
def _qr_eigvals(h, max_iter_factor):
    n = h.shape[0]
    eig = np.empty(n, dtype=np.complex128)
    eps = np.finfo(np.float64).eps
    hnorm = 0.0
    for i in range(n):
        for j in range(n):
            hnorm = max(hnorm, abs(h[i, j]))
    total = 0
    its = 0
    hi = n - 1
    while hi >= 0:
        if hi == 0:
            eig[0] = h[0, 0]
            break
        # look for a negligible subdiagonal
        l = hi
        while l > 0:
            tst = abs(h[l, l]) + abs(h[l - 1, l - 1])
            if tst == 0.0:
                tst = hnorm
            if abs(h[l, l - 1]) <= eps * tst:
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            eig[hi] = h[hi, hi]
            hi -= 1
            its = 0
            continue
        if l == hi - 1:
            e1, e2 = _eig2(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
            eig[hi - 1] = e1
            eig[hi] = e2
            hi -= 2
            its = 0
            continue
        its += 1
        total += 1
        if total > max_iter_factor * n:
            return eig, _STATUS_NOCONV
        if its % 10 == 0:
            # exceptional shift
            sigma = h[hi, hi] + 0.75 * abs(h[hi, hi - 1].real) + 0.75j * abs(h[hi, hi - 1].imag)
        else:
            e1, e2 = _eig2(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
            sigma = e1 if abs(e1 - h[hi, hi]) < abs(e2 - h[hi, hi]) else e2
        x = h[l, l] - sigma
        y = h[l + 1, l]
        for k in range(l, hi):
            ax = abs(x)
            ay = abs(y)
            r = np.hypot(ax, ay)
            if r == 0.0:
                c = 1.0
                s = 0.0j
            elif ax == 0.0:
                c = 0.0
                s = np.conj(y) / ay
            else:
                c = ax / r
                s = (x / ax) * np.conj(y) / r
            j0 = k - 1 if k > l else l
            for j in range(j0, hi + 1):
                p = h[k, j]
                q = h[k + 1, j]
                h[k, j] = c * p + s * q
                h[k + 1, j] = -np.conj(s) * p + c * q
            i1 = k + 2 if k + 2 < hi else hi
            for i in range(l, i1 + 1):
                p = h[i, k]
                q = h[i, k + 1]
                h[i, k] = c * p + np.conj(s) * q
                h[i, k + 1] = -s * p + c * q
            if k > l:
                h[k + 1, k - 1] = 0.0
            if k < hi - 1:
                x = h[k + 1, k]
                y = h[k + 2, k]
    return eig, _STATUS_OK


def eigenvalues(m, *, max_iter_factor: int = 30) -> np.ndarray:
    """All eigenvalues of a square complex matrix (``N <= 512``), unordered.

    Raises ``NoConvergence`` after ``max_iter_factor * N`` QR iterations.
    """
    a = np.array(m, dtype=np.complex128, order="C", copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    if not (1 <= n <= MAX_N):
        raise SizeOutOfRange(f"N={n} outside [1, {MAX_N}]")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    h = _hessenberg(a)
    eig, status = _qr_eigvals(h, max_iter_factor)
    if status != _STATUS_OK:
        raise NoConvergence(f"QR iteration exceeded {max_iter_factor}*N iterations (N={n})")
    return eig


def canonical_sort(values) -> np.ndarray:
    """Sort by real part, then imaginary part."""
    values = np.asarray(values, dtype=complex)
    return values[np.lexsort((values.imag, values.real))]


def residuals(m, eigs, *, steps: int = 2) -> np.ndarray:
    """``||M v - lambda v|| / ||M||`` with ``v`` from inverse iteration at each eigenvalue.

    Uses LAPACK (via ``numpy.linalg.solve``) so that it is independent of the
    QR solver; the shift is nudged by ``1e-10 ||M||`` to keep the solve regular.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    norm = np.linalg.norm(m, 2)
    rng = np.random.default_rng(0)
    start = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    out = np.empty(len(eigs))
    eye = np.eye(n)
    for i, lam in enumerate(eigs):
        shifted = m - (lam + 1e-10 * norm) * eye
        v = start / np.linalg.norm(start)
        for _ in range(steps):
            v = np.linalg.solve(shifted, v)
            v /= np.linalg.norm(v)
        out[i] = np.linalg.norm(m @ v - lam * v) / norm
    return out
