"""
q-Dedekind audit

Exact q-Euler numbers, fermionic p-adic q-integrals, Dedekind-type DC sums,
the p-adic interpolation function T_q and a ledger that checks each of their
identities exactly.
"""

__version__ = "0.1.0"
__author__ = "q-Dedekind Audit Team"

from .claims import CLAIM_IDS, ClaimReport, Sweep, verify_all, verify_claim
from .config import Config
from .dedekind_sums import dc_sum_classical, dc_sum_q, higher_order_dc
from .exceptions import (
    InvariantViolationError,
    PoleError,
    PrecisionError,
    PreconditionError,
    QDedekindException,
    ResourceLimitError,
    UnknownClaimError,
)
from .interpolation import s_pq, t_extended, t_int_a, t_int_b, t_series
from .q_numbers import QParam, euler_carlitz, euler_modified, q_euler_poly

__all__ = [
    "CLAIM_IDS",
    "ClaimReport",
    "Config",
    "InvariantViolationError",
    "PoleError",
    "PrecisionError",
    "PreconditionError",
    "QDedekindException",
    "QParam",
    "ResourceLimitError",
    "Sweep",
    "UnknownClaimError",
    "dc_sum_classical",
    "dc_sum_q",
    "euler_carlitz",
    "euler_modified",
    "higher_order_dc",
    "q_euler_poly",
    "s_pq",
    "t_extended",
    "t_int_a",
    "t_int_b",
    "t_series",
    "verify_all",
    "verify_claim",
]
