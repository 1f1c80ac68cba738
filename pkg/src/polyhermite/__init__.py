"""Squeezed complex Hermite polynomials with exact coefficient algebra, plus
ladder operators, elliptic quadrature, transform kernels and a random-matrix sampler."""

from .errors import (
    DegreeTooLarge,
    EigensolveFailure,
    GridMismatch,
    NoConvergence,
    NodesOutOfRange,
    PolyHermiteError,
    SingularR,
    SizeOutOfRange,
    TauOutOfRange,
    TruncationTooSmall,
)
from .hermite import (
    SqueezeParams,
    SymMatrix2,
    complex_hermite,
    complex_hermite_rodrigues,
    genfun_residual,
    hermite2d,
    hermite2d_genfun,
    hermite_real,
    hermite_rescaled,
    laguerre,
    phi_normalized,
    r_tau,
    squeezed_hermite,
)
from .poly import BivariatePolynomial, GaussianEnvelope, LadderOperator, WeightedFunction, gw_apply, poly_eval
from .quadrature import QuadratureGrid, inner_product, omega_density, quad_grid

__version__ = "0.1.0"
