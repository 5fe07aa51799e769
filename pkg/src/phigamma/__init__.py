"""Finite-precision cyclotomic Frobenius/Gamma operator calculus."""

__version__ = "0.1.0"

from .padic import PadicScalar, padic, padic_exp, padic_log, padic_log0  # noqa: F401
from .errors import (  # noqa: F401
    PhiGammaError,
    DomainError,
    PrecisionError,
    ConsistencyError,
    UnsolvableError,
)
