"""Coefficient algebra for polynomials in the independent symbols z and zbar.

Everything here is immutable.  A ``BivariatePolynomial`` is a sparse map
``(a, b) -> c`` standing for ``sum c * z**a * zbar**b``; a ``WeightedFunction``
multiplies such a polynomial by a Gaussian envelope ``c * exp(Q(z, zbar))``
with ``Q`` quadratic, so derivatives and ladder operators act exactly in
coefficient space.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

# coefficients below this are true underflow and are dropped
_UNDERFLOW = 1e-300


def _trim(coeffs: Mapping[tuple[int, int], complex]) -> dict[tuple[int, int], complex]:
    out = {}
    for (a, b), c in coeffs.items():
        c = complex(c)
        if abs(c) >= _UNDERFLOW:
            out[(int(a), int(b))] = c
    return out


class BivariatePolynomial:
    """Complex polynomial in ``z`` and ``zbar`` treated as independent symbols.

    ``deg_z`` and ``deg_zbar`` are the maximal exponents present; the zero
    polynomial has both equal to -1.
    """

    __slots__ = ("_coeffs", "_dense", "deg_z", "deg_zbar")

    def __init__(self, coeffs: Mapping[tuple[int, int], complex] | None = None):
        trimmed = _trim(coeffs or {})
        for a, b in trimmed:
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in {(a, b)}")
        self._coeffs = MappingProxyType(trimmed)
        self.deg_z = max((a for a, _ in trimmed), default=-1)
        self.deg_zbar = max((b for _, b in trimmed), default=-1)
        dense = np.zeros((self.deg_z + 1, self.deg_zbar + 1), dtype=complex)
        for (a, b), c in trimmed.items():
            dense[a, b] = c
        dense.setflags(write=False)
        self._dense = dense

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c: complex) -> "BivariatePolynomial":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c: complex = 1.0) -> "BivariatePolynomial":
        return cls({(a, b): c})

    @classmethod
    def z(cls) -> "BivariatePolynomial":
        return cls({(1, 0): 1.0})

    @classmethod
    def zbar(cls) -> "BivariatePolynomial":
        return cls({(0, 1): 1.0})

    @classmethod
    def from_dense(cls, arr) -> "BivariatePolynomial":
        arr = np.asarray(arr, dtype=complex)
        return cls({(a, b): arr[a, b] for a, b in zip(*np.nonzero(arr))})

    # -- views --------------------------------------------------------------
    @property
    def coeffs(self) -> Mapping[tuple[int, int], complex]:
        return self._coeffs

    @property
    def dense(self) -> np.ndarray:
        """Read-only array ``C[a, b]`` of shape ``(deg_z + 1, deg_zbar + 1)``."""
        return self._dense

    def coeff(self, a: int, b: int) -> complex:
        return self._coeffs.get((a, b), 0j)

    def is_zero(self) -> bool:
        return not self._coeffs

    def max_abs(self) -> float:
        return max((abs(c) for c in self._coeffs.values()), default=0.0)

    def __len__(self):
        return len(self._coeffs)

    def __repr__(self):
        if not self._coeffs:
            return "BivariatePolynomial(0)"
        parts = [f"({c:.6g})*z^{a}*zb^{b}" for (a, b), c in sorted(self._coeffs.items())]
        return "BivariatePolynomial(" + " + ".join(parts) + ")"

    # -- evaluation -----------------------------------------------------------
    def evaluate(self, z, zbar=None):
        """Evaluate with ``zbar`` as an independent value (defaults to conj(z)).

        Two-level Horner: rows in ``zbar`` first, then the outer sum in ``z``.
        Accepts scalars or numpy arrays.
        """
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z) if zbar is None else np.asarray(zbar, dtype=complex)
        acc = np.zeros(np.broadcast(z, zb).shape, dtype=complex)
        dense = self._dense
        for a in range(self.deg_z, -1, -1):
            inner = np.zeros_like(acc)
            row = dense[a]
            for b in range(self.deg_zbar, -1, -1):
                inner = inner * zb + row[b]
            acc = acc * z + inner
        return acc[()] if acc.ndim == 0 else acc

    def __call__(self, z, zbar=None):
        return self.evaluate(z, zbar)

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, BivariatePolynomial):
            other = BivariatePolynomial.constant(other)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0j) + c
        return BivariatePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BivariatePolynomial):
            c = complex(other)
            return BivariatePolynomial({k: c * v for k, v in self._coeffs.items()})
        if self.is_zero() or other.is_zero():
            return BivariatePolynomial()
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        da, db = big._dense.shape
        out = np.zeros((self.deg_z + other.deg_z + 1, self.deg_zbar + other.deg_zbar + 1), dtype=complex)
        for (a, b), c in small._coeffs.items():
            out[a:a + da, b:b + db] += c * big._dense
        return BivariatePolynomial.from_dense(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1.0 / complex(c))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = BivariatePolynomial.constant(1.0)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return dict(self._coeffs) == dict(other._coeffs)

    __hash__ = None

    def d_z(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(a - 1, b): a * c for (a, b), c in self._coeffs.items() if a > 0})

    def d_zbar(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(a, b - 1): b * c for (a, b), c in self._coeffs.items() if b > 0})

    def shift(self, a: int, b: int) -> "BivariatePolynomial":
        """Multiply by ``z**a * zbar**b``."""
        return BivariatePolynomial({(i + a, j + b): c for (i, j), c in self._coeffs.items()})

    def substitute_scale(self, cz: complex, czbar: complex | None = None) -> "BivariatePolynomial":
        """Coefficients of ``p(cz * z, czbar * zbar)``; ``czbar`` defaults to conj(cz)."""
        czbar = np.conj(cz) if czbar is None else czbar
        return BivariatePolynomial({(a, b): c * cz**a * czbar**b for (a, b), c in self._coeffs.items()})

    def swapped(self) -> "BivariatePolynomial":
        """Exchange the roles of the two symbols: ``(a, b) -> (b, a)``."""
        return BivariatePolynomial({(b, a): c for (a, b), c in self._coeffs.items()})

    def conj_coeffs(self) -> "BivariatePolynomial":
        return BivariatePolynomial({k: c.conjugate() for k, c in self._coeffs.items()})

    def max_abs_diff(self, other: "BivariatePolynomial") -> float:
        keys = set(self._coeffs) | set(other._coeffs)
        return max((abs(self.coeff(*k) - other.coeff(*k)) for k in keys), default=0.0)

    def allclose(self, other: "BivariatePolynomial", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        scale = max(self.max_abs(), other.max_abs())
        return self.max_abs_diff(other) <= atol + rtol * scale

    # -- serialization --------------------------------------------------------
    def to_records(self) -> list[dict]:
        return [
            {"a": a, "b": b, "re": c.real, "im": c.imag}
            for (a, b), c in sorted(self._coeffs.items())
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_records())

    @classmethod
    def from_records(cls, records: Iterable[Mapping]) -> "BivariatePolynomial":
        return cls({(int(r["a"]), int(r["b"])): complex(r["re"], r["im"]) for r in records})

    @classmethod
    def from_json(cls, text: str) -> "BivariatePolynomial":
        return cls.from_records(json.loads(text))


def poly_eval(p: BivariatePolynomial, z):
    """Value of ``p`` at ``(z, conj(z))``."""
    return p.evaluate(z)


def poly_arith(kind: str, *args):
    """Dispatch for the elementary operations ``add``, ``scale``, ``mul``, ``d_z``, ``d_zbar``."""
    if kind == "add":
        p, q = args
        return p + q
    if kind == "scale":
        p, c = args
        return p * c
    if kind == "mul":
        p, q = args
        return p * q
    if kind == "d_z":
        (p,) = args
        return p.d_z()
    if kind == "d_zbar":
        (p,) = args
        return p.d_zbar()
    raise ValueError(f"unknown polynomial operation {kind!r}")


@dataclass(frozen=True)
class GaussianEnvelope:
    """``c * exp(q20 z**2 + q11 z zbar + q02 zbar**2)``."""

    q20: complex = 0.0
    q11: complex = 0.0
    q02: complex = 0.0
    c: complex = 1.0

    def dz_exponent(self) -> BivariatePolynomial:
        return BivariatePolynomial({(1, 0): 2 * self.q20, (0, 1): self.q11})

    def dzbar_exponent(self) -> BivariatePolynomial:
        return BivariatePolynomial({(1, 0): self.q11, (0, 1): 2 * self.q02})

    def exponent(self, z, zbar=None):
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z) if zbar is None else zbar
        return self.q20 * z * z + self.q11 * z * zb + self.q02 * zb * zb

    def __call__(self, z, zbar=None):
        return self.c * np.exp(self.exponent(z, zbar))

    def real_quadratic_form(self) -> tuple[float, float, float]:
        """``(axx, axy, ayy)`` with ``Re Q = axx x^2 + axy x y + ayy y^2`` on the real plane."""
        q20, q11, q02 = complex(self.q20), complex(self.q11), complex(self.q02)
        axx = (q20 + q11 + q02).real
        ayy = (q11 - q20 - q02).real
        axy = (2j * (q20 - q02)).real
        return axx, axy, ayy

    @property
    def is_integrable(self) -> bool:
        axx, axy, ayy = self.real_quadratic_form()
        return axx < 0 and axx * ayy - axy * axy / 4 > 0


@dataclass(frozen=True)
class WeightedFunction:
    """``poly(z, zbar) * env(z, zbar)``; closed under d_z, d_zbar and multiplication by z, zbar."""

    poly: BivariatePolynomial
    env: GaussianEnvelope

    def __call__(self, z):
        return self.poly(z) * self.env(z)

    def with_poly(self, poly: BivariatePolynomial) -> "WeightedFunction":
        return WeightedFunction(poly, self.env)

    def d_z(self) -> "WeightedFunction":
        return self.with_poly(self.poly.d_z() + self.env.dz_exponent() * self.poly)

    def d_zbar(self) -> "WeightedFunction":
        return self.with_poly(self.poly.d_zbar() + self.env.dzbar_exponent() * self.poly)

    def mul_z(self) -> "WeightedFunction":
        return self.with_poly(self.poly.shift(1, 0))

    def mul_zbar(self) -> "WeightedFunction":
        return self.with_poly(self.poly.shift(0, 1))

    def __add__(self, other: "WeightedFunction") -> "WeightedFunction":
        if other.env != self.env:
            raise ValueError("cannot add weighted functions with different envelopes")
        return self.with_poly(self.poly + other.poly)

    def __sub__(self, other: "WeightedFunction") -> "WeightedFunction":
        return self + other * -1.0

    def __mul__(self, c) -> "WeightedFunction":
        return self.with_poly(self.poly * c)

    __rmul__ = __mul__

    def full_poly(self) -> BivariatePolynomial:
        """Polynomial part with the envelope prefactor ``c`` folded in."""
        return self.poly * self.env.c


class LadderOperator:
    """Finite sum of normal-ordered terms ``coef * z^a zbar^b d_z^p d_zbar^q``.

    Multiplications always stand left of derivatives; composition re-orders
    with ``d_z z = z d_z + 1`` (and its conjugate), so everything stays exact.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple] | Mapping = ()):
        acc: dict[tuple[int, int, int, int], complex] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((t[1:], t[0]) for t in terms)
        for key, c in items:
            key = tuple(int(k) for k in key)
            if min(key) < 0:
                raise ValueError(f"negative power in term {key}")
            acc[key] = acc.get(key, 0j) + complex(c)
        self._terms = MappingProxyType({k: c for k, c in acc.items() if abs(c) >= _UNDERFLOW})

    @classmethod
    def identity(cls) -> "LadderOperator":
        return cls({(0, 0, 0, 0): 1.0})

    @classmethod
    def zero(cls) -> "LadderOperator":
        return cls()

    @property
    def terms(self) -> tuple[tuple[complex, int, int, int, int], ...]:
        return tuple((c, *k) for k, c in sorted(self._terms.items()))

    @property
    def term_map(self) -> Mapping[tuple[int, int, int, int], complex]:
        return self._terms

    def is_zero(self, atol: float = 0.0) -> bool:
        return all(abs(c) <= atol for c in self._terms.values())

    def __repr__(self):
        if not self._terms:
            return "LadderOperator(0)"
        return "LadderOperator(" + " + ".join(
            f"({c:.6g}) z^{a} zb^{b} dz^{p} dzb^{q}" for (a, b, p, q), c in sorted(self._terms.items())
        ) + ")"

    def __add__(self, other: "LadderOperator") -> "LadderOperator":
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0j) + c
        return LadderOperator(acc)

    def __neg__(self):
        return LadderOperator({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c) -> "LadderOperator":
        if isinstance(c, LadderOperator):
            return self @ c
        c = complex(c)
        return LadderOperator({k: c * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "LadderOperator") -> "LadderOperator":
        """Composition ``self o other`` (``other`` acts first)."""
        acc: dict[tuple[int, int, int, int], complex] = {}
        for (a1, b1, p1, q1), c1 in self._terms.items():
            for (a2, b2, p2, q2), c2 in other._terms.items():
                for i in range(min(p1, a2) + 1):
                    fi = math.comb(p1, i) * math.perm(a2, i)
                    for j in range(min(q1, b2) + 1):
                        fj = math.comb(q1, j) * math.perm(b2, j)
                        key = (a1 + a2 - i, b1 + b2 - j, p1 - i + p2, q1 - j + q2)
                        acc[key] = acc.get(key, 0j) + c1 * c2 * fi * fj
        return LadderOperator(acc)

    def __pow__(self, k: int) -> "LadderOperator":
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = LadderOperator.identity()
        for _ in range(k):
            result = self @ result
        return result

    def max_abs(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def max_abs_diff(self, other: "LadderOperator") -> float:
        keys = set(self._terms) | set(other._terms)
        return max((abs(self._terms.get(k, 0j) - other._terms.get(k, 0j)) for k in keys), default=0.0)

    def allclose(self, other: "LadderOperator", atol: float = 1e-12) -> bool:
        return self.max_abs_diff(other) <= atol

    def __call__(self, f):
        if isinstance(f, WeightedFunction):
            return gw_apply(self, f)
        return apply_to_poly(self, f)


def _apply(terms, base, d_z, d_zbar, times_monomial, add, zero):
    cache = {(0, 0): base}

    def deriv(p, q):
        key = (p, q)
        if key not in cache:
            cache[key] = d_z(deriv(p - 1, q)) if p > 0 else d_zbar(deriv(0, q - 1))
        return cache[key]

    out = zero
    for c, a, b, p, q in terms:
        out = add(out, times_monomial(deriv(p, q), a, b, c))
    return out


def gw_apply(op: LadderOperator, f: WeightedFunction) -> WeightedFunction:
    """Apply a ladder operator to a Gaussian-weighted function.

    Envelope derivatives are folded into the polynomial part by the product
    rule; the envelope of the result is the envelope of ``f``.
    """
    poly = _apply(
        op.terms,
        f,
        lambda g: g.d_z(),
        lambda g: g.d_zbar(),
        lambda g, a, b, c: g.poly.shift(a, b) * c,
        lambda x, y: x + y,
        BivariatePolynomial(),
    )
    return WeightedFunction(poly, f.env)


def apply_to_poly(op: LadderOperator, p: BivariatePolynomial) -> BivariatePolynomial:
    """Apply a ladder operator to a bare polynomial (no envelope)."""
    return _apply(
        op.terms,
        p,
        lambda g: g.d_z(),
        lambda g: g.d_zbar(),
        lambda g, a, b, c: g.shift(a, b) * c,
        lambda x, y: x + y,
        BivariatePolynomial(),
    )
