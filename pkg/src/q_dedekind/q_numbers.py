"""
q-brackets, q-Euler numbers and polynomials, classical and periodic Euler functions
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import List, Optional, Union

from .cache import EulerCache, get_cache
from .exact_arith import PAdicContext, Rational, vp
from .exceptions import PoleError, PreconditionError


class QMode(str, Enum):
    ALGEBRAIC = "algebraic"
    PADIC = "padic"


@dataclass(frozen=True)
class QParam:
    """
    The deformation parameter q as an exact rational

    In p-adic mode q must satisfy |1 - q|_p < 1, i.e. v_p(1 - q) >= 1.
    """

    q: Fraction
    mode: QMode = QMode.ALGEBRAIC
    ctx: Optional[PAdicContext] = None

    def __post_init__(self) -> None:
        q = Fraction(self.q)
        object.__setattr__(self, "q", q)
        if q in (1, -1):
            raise PreconditionError("q", f"q = {q} is a pole of the closed forms")
        if q == 0:
            raise PreconditionError("q", "q must be nonzero")
        if self.mode is QMode.PADIC:
            if self.ctx is None:
                raise PreconditionError("q", "p-adic mode needs a PAdicContext")
            if vp(1 - q, self.ctx.p) < 1:
                raise PreconditionError("q", f"v_{self.ctx.p}(1 - {q}) must be at least 1")

    @classmethod
    def algebraic(cls, q: Union[Rational, int, str]) -> "QParam":
        return cls(Fraction(q), QMode.ALGEBRAIC)

    @classmethod
    def padic(cls, q: Union[Rational, int, str], ctx: PAdicContext) -> "QParam":
        return cls(Fraction(q), QMode.PADIC, ctx)

    def power(self, n: int) -> "QParam":
        """The parameter q^n in the same mode"""
        return QParam(self.q**n, self.mode, self.ctx)

    def __str__(self) -> str:
        return f"{self.q.numerator}/{self.q.denominator}"


QLike = Union[QParam, Fraction, int]


def q_value(q: QLike) -> Fraction:
    """Extract the rational value of q"""
    if isinstance(q, QParam):
        return q.q
    value = Fraction(q)
    if value in (0, 1, -1):
        raise PreconditionError("q", f"q = {value} is not admissible")
    return value


@dataclass(frozen=True)
class QBracketArg:
    """
    Argument of a q-Euler polynomial: the integer x, or a/N against base q^N

    Only integer powers of q ever occur: q^(N * (a/N) * l) = q^(a*l).
    """

    a: int
    N: int = 1

    def __post_init__(self) -> None:
        if self.N < 1:
            raise PreconditionError("N", "base exponent must be positive")

    @classmethod
    def integer(cls, x: int) -> "QBracketArg":
        return cls(x, 1)

    @classmethod
    def fractional(cls, a: int, N: int) -> "QBracketArg":
        return cls(a, N)

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.N)


def _bracket(q: Fraction, x: int) -> Fraction:
    return (1 - q**x) / (1 - q)


def q_int(x: int, q: QLike) -> Fraction:
    """The q-bracket [x]_q = (1 - q^x)/(1 - q)"""
    return _bracket(q_value(q), x)


def _with_cache(kind: str, index: int, base_exp: int, q: Fraction, compute) -> Fraction:
    cache: Optional[EulerCache] = get_cache()
    if cache is None:
        return compute()
    return cache.get_or_compute(EulerCache.make_key(kind, index, base_exp, q), compute)


def _base(q: QLike, base_exp: int) -> Fraction:
    """q^N for the base exponent N >= 1"""
    if base_exp < 1:
        raise PreconditionError("base_exp", f"must be a positive integer, got {base_exp}")
    return q_value(q) ** base_exp


def _modified_closed_form(n: int, b: Fraction) -> Fraction:
    total = Fraction(0)
    for l in range(n + 1):
        denom = 1 + b**l
        if denom == 0:
            raise PoleError(f"1 + q^{l}")
        total += comb(n, l) * (-1) ** l / denom
    return (1 + b) * (1 / (1 - b)) ** n * total


def euler_modified(n: int, q: QLike, base_exp: int = 1) -> Fraction:
    """
    Modified q-Euler number E_{n, q^N} from its closed form

    E_{n,q} = (1+q) (1/(1-q))^n sum_l C(n,l) (-1)^l / (1+q^l)

    Args:
        n: Index (n >= 0)
        q: Deformation parameter
        base_exp: N, so that the number is evaluated at base q^N

    Returns:
        Exact rational value
    """
    if n < 0:
        raise PreconditionError("n", "must be non-negative")
    b = _base(q, base_exp)
    return _with_cache("modified", n, base_exp, q_value(q),
                       lambda: _modified_closed_form(n, b))


def euler_modified_recurrence(n: int, q: QLike, base_exp: int = 1) -> Fraction:
    """
    Modified q-Euler numbers from E_0 = (1+q)/2 and (qE + 1)^n + E_n = 0

    The umbral expansion sends E^l to E_{l,q}, the constant term included,
    so (q^n + 1) E_n = -sum_{l<n} C(n,l) q^l E_l.
    """
    if n < 0:
        raise PreconditionError("n", "must be non-negative")
    b = _base(q, base_exp)
    values = [(1 + b) / 2]
    for k in range(1, n + 1):
        lead = b**k + 1
        if lead == 0:
            raise PoleError(f"1 + q^{k}")
        rest = sum((comb(k, l) * b**l * values[l] for l in range(k)), Fraction(0))
        values.append(-rest / lead)
    return values[n]


def _carlitz_closed_form(m: int, q: Fraction) -> Fraction:
    total = Fraction(0)
    for l in range(m + 1):
        denom = 1 + q ** (l + 1)
        if denom == 0:
            raise PoleError(f"1 + q^{l + 1}")
        total += comb(m, l) * (-1) ** l * (1 + q) / denom
    return (1 / (1 - q)) ** m * total


def euler_carlitz(m: int, q: QLike, base_exp: int = 1) -> Fraction:
    """
    Carlitz-type q-Euler number, the m-th moment of [x]_q under the q-measure

    Integrating q^{l x} against the measure gives (1+q)/(1+q^{l+1}), hence
    eps_{m,q} = (1/(1-q))^m sum_l C(m,l) (-1)^l (1+q)/(1+q^{l+1}).
    """
    if m < 0:
        raise PreconditionError("m", "must be non-negative")
    b = _base(q, base_exp)
    return _with_cache("carlitz", m, base_exp, q_value(q), lambda: _carlitz_closed_form(m, b))


def q_euler_poly(m: int, arg: Union[QBracketArg, int], q: QLike) -> Fraction:
    """
    q-Euler polynomial E_{m, q^N}(a/N)

    sum_l C(m,l) q^{a l} E_{l, q^N} ((1 - q^a)/(1 - q^N))^(m-l);
    an integer argument x is the case a = x, N = 1.
    """
    if m < 0:
        raise PreconditionError("m", "must be non-negative")
    if isinstance(arg, int):
        arg = QBracketArg.integer(arg)
    qv = q_value(q)
    qa = qv**arg.a
    ratio = (1 - qa) / (1 - qv**arg.N)
    total = Fraction(0)
    for l in range(m + 1):
        total += comb(m, l) * qa**l * euler_modified(l, qv, arg.N) * ratio ** (m - l)
    return total


def _classical_values(n: int, x: Fraction) -> List[Fraction]:
    values: List[Fraction] = []
    for k in range(n + 1):
        acc = sum((comb(k, j) * values[j] for j in range(k)), Fraction(0))
        values.append(x**k - acc / 2)
    return values


def classical_euler_poly(n: int, x: Union[Rational, int]) -> Fraction:
    """
    Classical Euler polynomial E_n(x)

    E_n(x) = x^n - (1/2) sum_{k<n} C(n,k) E_k(x), E_0(x) = 1,
    matching the generating function 2 e^{xt}/(e^t + 1).
    """
    if n < 0:
        raise PreconditionError("n", "must be non-negative")
    x = Fraction(x)
    return _with_cache("classical", n, 1, x, lambda: _classical_values(n, x)[n])


def euler_number(n: int) -> Fraction:
    """E_n := E_n(0), the value the q-Euler numbers tend to as q -> 1"""
    return classical_euler_poly(n, 0)


def periodic_euler(m: int, x: Union[Rational, int]) -> Fraction:
    """
    Periodic Euler function (-1)^floor(x) E_m({x})

    Antiperiodic: periodic_euler(m, x + 1) == -periodic_euler(m, x).
    """
    x = Fraction(x)
    whole = math.floor(x)
    sign = -1 if whole % 2 else 1
    return sign * classical_euler_poly(m, x - whole)


def euler_modified_near_one(n: int, epsilon: Fraction = Fraction(1, 10**6)) -> float:
    """
    E_{n,q} at q = 1 + epsilon, as a float

    The closed form cancels catastrophically in floating point, so the value
    is computed exactly and converted once.
    """
    return float(_modified_closed_form(n, 1 + Fraction(epsilon)))
