"""
Dedekind-type DC sums and their q-analogue
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .exceptions import PreconditionError
from .q_numbers import (
    QBracketArg,
    QLike,
    classical_euler_poly,
    periodic_euler,
    q_euler_poly,
    q_value,
)


@dataclass(frozen=True)
class DCParams:
    """Weight m, coprime h and k, and for the q-analogue a base exponent l with k | l"""

    m: int
    h: int
    k: int
    l: Optional[int] = None

    def __post_init__(self) -> None:
        check_coprime(self.h, self.k)
        if self.m < 0:
            raise PreconditionError("m", "must be non-negative")
        if self.l is not None and (self.l < 1 or self.l % self.k):
            raise PreconditionError("l", f"{self.k} must divide l = {self.l}")


def check_coprime(h: int, k: int) -> None:
    if h < 1 or k < 1:
        raise PreconditionError("h, k", "must be positive")
    if gcd(h, k) != 1:
        raise PreconditionError("h, k", f"gcd({h}, {k}) = {gcd(h, k)} is not 1")


def dc_sum_classical(m: int, h: int, k: int) -> Fraction:
    """
    S_m(h, k) = sum_{M=1}^{k-1} (-1)^{M-1} (M/k) periodic_euler(m, hM/k)

    Example:
        >>> dc_sum_classical(1, 1, 3)
        Fraction(-1, 6)
    """
    DCParams(m, h, k)
    total = Fraction(0)
    for M in range(1, k):
        total += (-1) ** (M - 1) * Fraction(M, k) * periodic_euler(m, Fraction(h * M, k))
    return total


def dc_sum_fractional(m: int, h: int, k: int) -> Fraction:
    """sum (-1)^{M-1} (M/k) E_m({hM/k}): the q -> 1 limit of dc_sum_q"""
    DCParams(m, h, k)
    total = Fraction(0)
    for M in range(1, k):
        total += (-1) ** (M - 1) * Fraction(M, k) * classical_euler_poly(m, Fraction(h * M % k, k))
    return total


def higher_order_dc(m: int, h: int, k: int) -> Fraction:
    """k^m S_{m+1}(h, k)"""
    return k**m * dc_sum_classical(m + 1, h, k)


def dc_sum_q(m: int, h: int, k: int, l: int, q: QLike) -> Fraction:
    """
    q-analogue S_{m,q}(h, k : q^l)

    sum_{M=1}^{k-1} (-1)^{M-1} (1-q^M)/(1-q^k) E_{m,q^l}({hM/k});
    {hM/k} = (hM mod k)/k is handed over as the pair ((hM mod k) * l/k, l),
    so every power of q stays integral.
    """
    DCParams(m, h, k, l)
    qv = q_value(q)
    scale = l // k
    total = Fraction(0)
    for M in range(1, k):
        weight = (1 - qv**M) / (1 - qv**k)
        arg = QBracketArg((h * M % k) * scale, l)
        total += (-1) ** (M - 1) * weight * q_euler_poly(m, arg, qv)
    return total
