"""Exact scalars, rational functions of hbar and multi-index combinatorics."""

from .combinatorics import (
    Signature,
    SignatureError,
    TruncatedSeries,
    multi_binom,
    multi_factorial,
    sgn_T,
    verify_falling_rising,
)
from .hbar import (
    SYMBOLIC,
    HbarValue,
    HRational,
    OmegaError,
    Symbolic,
    falling_scaled,
    in_omega,
    parse_hbar,
)
from .scalars import ONE, ZERO, GaussianRational, I, as_gaussian

__all__ = [
    "GaussianRational", "as_gaussian", "I", "ONE", "ZERO",
    "HRational", "HbarValue", "Symbolic", "SYMBOLIC", "OmegaError",
    "parse_hbar", "in_omega", "falling_scaled",
    "Signature", "SignatureError", "TruncatedSeries",
    "multi_binom", "multi_factorial", "sgn_T", "verify_falling_rising",
]
