"""Threshold secret sharing with flexible, communication-efficient decoding."""

from .audit import run_audit
from .core import (
    BandwidthLedger,
    PreprocessedShare,
    Scheme,
    SchemeId,
    SchemeParams,
    ShareBundle,
    bandwidth_bound_symbols,
    co_lower_bound,
    rate_capacity,
    retrieve,
    validate_access,
)
from .gf import FieldElement, PrimeField
from .matrix import FieldMatrix
from .poly import DensePolynomial
from .random_code import CeRandom
from .rs import CeRs
from .shamir import CeShamir

__version__ = "0.1.0"

__all__ = [
    "BandwidthLedger",
    "CeRandom",
    "CeRs",
    "CeShamir",
    "DensePolynomial",
    "FieldElement",
    "FieldMatrix",
    "PreprocessedShare",
    "PrimeField",
    "Scheme",
    "SchemeId",
    "SchemeParams",
    "ShareBundle",
    "bandwidth_bound_symbols",
    "co_lower_bound",
    "rate_capacity",
    "retrieve",
    "run_audit",
    "validate_access",
]
