"""Witt vectors, explicit Monsky-Washnitzer homotopies and integral de Rham
cohomology of Laurent-polynomial algebras over Z/p^N."""

from . import errors
from ._backend import BACKEND, HAVE_COMPILED
from .errors import *  # noqa: F403
from .poly import LaurentRing, LPoly
from .scalars import PrecScalar, PrimeCtx, scalar_div_exact, unit_coeff

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "HAVE_COMPILED",
    "LaurentRing",
    "LPoly",
    "PrecScalar",
    "PrimeCtx",
    "scalar_div_exact",
    "unit_coeff",
    *(name for name in dir(errors) if name[0].isupper()),
]
