"""Exception types raised across the package."""

import operator


class PolyHermiteError(Exception):
    """Base class for all package errors."""


class DegreeTooLarge(PolyHermiteError, ValueError):
    pass


class TauOutOfRange(PolyHermiteError, ValueError):
    pass


class TruncationTooSmall(PolyHermiteError, ArithmeticError):
    pass


class SingularR(PolyHermiteError, ValueError):
    pass


class NodesOutOfRange(PolyHermiteError, ValueError):
    pass


class EigensolveFailure(PolyHermiteError, ArithmeticError):
    pass


class GridMismatch(PolyHermiteError, ValueError):
    pass


class SizeOutOfRange(PolyHermiteError, ValueError):
    pass


class NoConvergence(PolyHermiteError, ArithmeticError):
    pass


def check_degree(name, value, cap):
    value = operator.index(value)
    if value < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
    if value > cap:
        raise DegreeTooLarge(f"{name}={value} exceeds the cap {cap}")


def check_tau(tau, *, allow_zero=True, allow_one=False):
    lo_ok = tau >= 0.0 if allow_zero else tau > 0.0
    hi_ok = tau <= 1.0 if allow_one else tau < 1.0
    if not (lo_ok and hi_ok):
        lo = "[0" if allow_zero else "(0"
        hi = "1]" if allow_one else "1)"
        raise TauOutOfRange(f"tau={tau!r} outside {lo}, {hi}")
