"""
Exact rational arithmetic, p-adic valuations and finite-precision p-adic numbers
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .exceptions import InvariantViolationError, PoleError, PrecisionError, PreconditionError

Rational = Fraction
Valuation = Union[int, float]

# v_p(0); compares above every integer
VP_INFINITY = math.inf


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (inputs are small primes)"""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def vp_int(n: int, p: int) -> Valuation:
    """p-adic valuation of an integer; VP_INFINITY for zero"""
    if n == 0:
        return VP_INFINITY
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x: Union[Rational, int], p: int) -> Valuation:
    """
    p-adic valuation extended to the rationals

    Args:
        x: Rational number
        p: Prime

    Returns:
        v_p(num) - v_p(den), or VP_INFINITY when x == 0

    Example:
        >>> vp(Fraction(9, 4), 3)
        2
    """
    x = Fraction(x)
    if x == 0:
        return VP_INFINITY
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def vp_factorial(j: int, p: int) -> int:
    """v_p(j!) by Legendre's formula"""
    total = 0
    while j:
        j //= p
        total += j
    return total


def congruent(x: Union[Rational, int], y: Union[Rational, int], p: int, n: int) -> bool:
    """True iff x ≡ y (mod p^n), i.e. v_p(x - y) >= n"""
    return vp(Fraction(x) - Fraction(y), p) >= n


@dataclass(frozen=True)
class PAdicContext:
    """An odd prime together with a working precision of K base-p digits"""

    p: int
    K: int

    def __post_init__(self) -> None:
        if not is_prime(self.p) or self.p < 3:
            raise PreconditionError("p", f"{self.p} is not an odd prime")
        if self.K < 1:
            raise PreconditionError("K", "precision must be at least 1")

    @property
    def modulus(self) -> int:
        return self.p**self.K

    def with_precision(self, K: int) -> "PAdicContext":
        return PAdicContext(self.p, K)


@dataclass(frozen=True)
class PAdicInt:
    """An element of Z_p truncated to K digits, stored as an integer mod p^K"""

    value: int
    ctx: PAdicContext

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % self.ctx.modulus)

    @property
    def digits(self) -> Tuple[int, ...]:
        """Base-p digits, least significant first, exactly K of them"""
        out = []
        n = self.value
        for _ in range(self.ctx.K):
            n, r = divmod(n, self.ctx.p)
            out.append(r)
        return tuple(out)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} (mod {self.ctx.p}^{self.ctx.K})"


@dataclass(frozen=True)
class PAdicApprox:
    """
    The p-adic number p^valuation * unit, known to `precision` unit digits

    A nonzero value has p ∤ unit and 0 < unit < p^precision, so it is known
    modulo p^(valuation + precision). A zero carries valuation VP_INFINITY,
    unit 0, and uses `precision` for the number of digits known to vanish
    (VP_INFINITY for an exact zero).
    """

    p: int
    valuation: Valuation
    unit: int
    precision: Valuation

    @classmethod
    def zero(cls, p: int, absolute_precision: Valuation = VP_INFINITY) -> "PAdicApprox":
        return cls(p, VP_INFINITY, 0, absolute_precision)

    @classmethod
    def from_scaled(cls, p: int, scaled: int, low: int, absolute_precision: int) -> "PAdicApprox":
        """Normalize p^low * scaled, known modulo p^absolute_precision"""
        digits = absolute_precision - low
        if digits <= 0:
            return cls.zero(p, absolute_precision)
        residue = scaled % p**digits
        if residue == 0:
            return cls.zero(p, absolute_precision)
        w = vp_int(residue, p)
        valuation = low + w
        return cls(p, valuation, residue // p**w, absolute_precision - valuation)

    @property
    def is_zero(self) -> bool:
        return self.valuation == VP_INFINITY

    @property
    def absolute_precision(self) -> Valuation:
        if self.is_zero:
            return self.precision
        return self.valuation + self.precision

    def with_precision(self, absolute_precision: Valuation) -> "PAdicApprox":
        """Forget every digit at or beyond p^absolute_precision"""
        if self.is_zero:
            return PAdicApprox.zero(self.p, min(self.precision, absolute_precision))
        target = min(self.absolute_precision, absolute_precision)
        return PAdicApprox.from_scaled(self.p, self.unit, self.valuation, target)

    def _check(self, other: "PAdicApprox") -> None:
        if not isinstance(other, PAdicApprox):
            raise TypeError(f"Cannot combine PAdicApprox with {type(other).__name__}")
        if other.p != self.p:
            raise PreconditionError("p", f"mixed primes {self.p} and {other.p}")

    def __add__(self, other: "PAdicApprox") -> "PAdicApprox":
        self._check(other)
        if self.is_zero:
            return other.with_precision(self.precision)
        if other.is_zero:
            return self.with_precision(other.precision)
        low = min(self.valuation, other.valuation)
        absolute = min(self.absolute_precision, other.absolute_precision)
        scaled = (self.unit * self.p ** (self.valuation - low)
                  + other.unit * self.p ** (other.valuation - low))
        return PAdicApprox.from_scaled(self.p, scaled, low, absolute)

    def __neg__(self) -> "PAdicApprox":
        if self.is_zero:
            return self
        return PAdicApprox(self.p, self.valuation, (-self.unit) % self.p**self.precision,
                           self.precision)

    def __sub__(self, other: "PAdicApprox") -> "PAdicApprox":
        self._check(other)
        return self + (-other)

    def __mul__(self, other: "PAdicApprox") -> "PAdicApprox":
        self._check(other)
        if self.is_zero and other.is_zero:
            return PAdicApprox.zero(self.p, self.precision + other.precision)
        if self.is_zero:
            return PAdicApprox.zero(self.p, self.precision + other.valuation)
        if other.is_zero:
            return PAdicApprox.zero(self.p, other.precision + self.valuation)
        k = min(self.precision, other.precision)
        unit = (self.unit * other.unit) % self.p**k
        return PAdicApprox(self.p, self.valuation + other.valuation, unit, k)

    def inverse(self) -> "PAdicApprox":
        if self.is_zero:
            raise PoleError("inverse of a p-adic zero")
        modulus = self.p**self.precision
        return PAdicApprox(self.p, -self.valuation, pow(self.unit, -1, modulus), self.precision)

    def __truediv__(self, other: "PAdicApprox") -> "PAdicApprox":
        self._check(other)
        return self * other.inverse()

    def __pow__(self, n: int) -> "PAdicApprox":
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_zero:
            if n == 0:
                raise PreconditionError("n", "0^0 is not represented")
            return PAdicApprox.zero(self.p, self.precision * n)
        modulus = self.p**self.precision
        return PAdicApprox(self.p, self.valuation * n, pow(self.unit, n, modulus), self.precision)

    def agrees_with(self, other: "PAdicApprox") -> bool:
        """True iff the two values coincide to their common precision"""
        return (self - other).is_zero

    def vp_difference(self, other: "PAdicApprox") -> Valuation:
        """Valuation of self - other; a lower bound when they agree to precision"""
        diff = self - other
        if diff.is_zero:
            return diff.precision
        return diff.valuation

    def residue(self, n: int) -> int:
        """The value modulo p^n (requires an integral value known to n digits)"""
        if n > self.absolute_precision:
            raise PrecisionError(f"only {self.absolute_precision} digits known, {n} requested")
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise PreconditionError("x", "value is not p-integral")
        return (self.unit * self.p**self.valuation) % self.p**n

    def to_rational(self) -> Rational:
        """Read back p^valuation * unit as a rational number"""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.p) ** self.valuation * self.unit

    def __str__(self) -> str:
        if self.is_zero:
            if self.precision == VP_INFINITY:
                return "0"
            return f"0 (mod {self.p}^{self.precision})"
        return f"{self.p}^{self.valuation} * {self.unit} (mod {self.p}^{self.precision})"


def to_padic(x: Union[Rational, int], ctx: PAdicContext) -> PAdicApprox:
    """
    Expand a rational number p-adically to K significant digits

    Example:
        >>> to_padic(Fraction(1, 2), PAdicContext(3, 2))
        PAdicApprox(p=3, valuation=0, unit=5, precision=2)
    """
    x = Fraction(x)
    p = ctx.p
    if x == 0:
        return PAdicApprox.zero(p)
    v = vp(x, p)
    num, den = x.numerator, x.denominator
    if v >= 0:
        num //= p**v
    else:
        den //= p ** (-v)
    if den % p == 0:
        raise InvariantViolationError(f"denominator of {x} still divisible by {p}")
    modulus = ctx.modulus
    unit = (num * pow(den, -1, modulus)) % modulus
    return PAdicApprox(p, v, unit, ctx.K)


def teichmuller(a: int, ctx: PAdicContext) -> PAdicApprox:
    """
    Teichmüller representative ω(a): the (p-1)-st root of unity ≡ a (mod p)

    Computed by iterating x -> x^p (mod p^K) until the value is stable.
    """
    p = ctx.p
    if a % p == 0:
        raise PreconditionError("a", f"{a} is divisible by {p}")
    modulus = ctx.modulus
    x = a % modulus
    for _ in range(ctx.K + 1):
        nxt = pow(x, p, modulus)
        if nxt == x:
            return PAdicApprox(p, 0, x, ctx.K)
        x = nxt
    raise InvariantViolationError(f"Teichmüller iteration for {a} did not stabilize")


def padic_binom(s: PAdicInt, j: int, ctx: Optional[PAdicContext] = None) -> PAdicApprox:
    """
    Binomial coefficient C(s, j) for s in Z_p

    The numerator s(s-1)...(s-j+1) is formed mod p^K and then divided by j!,
    which costs v_p(j!) digits: the result is known mod p^(K - v_p(j!)). K is
    the smaller of the context precision and the precision s was built with.
    """
    ctx = ctx or s.ctx
    if s.ctx.p != ctx.p:
        raise PreconditionError("s", f"s lives in Z_{s.ctx.p}, not Z_{ctx.p}")
    p, K = ctx.p, min(ctx.K, s.ctx.K)
    if j < 0:
        raise PreconditionError("j", "must be non-negative")
    lost = vp_factorial(j, p)
    if K - lost <= 0:
        raise PrecisionError(f"C(s, {j}) needs more than {K} digits of s")
    if j == 0:
        return PAdicApprox(p, 0, 1, K)
    modulus = p**K
    product = 1
    for i in range(j):
        product = product * (s.value - i) % modulus
    if product % p**lost:
        raise InvariantViolationError(f"numerator of C(s, {j}) not divisible by p^{lost}")
    cofactor = math.factorial(j) // p**lost
    keep = K - lost
    value = (product // p**lost) * pow(cofactor, -1, p**keep)
    return PAdicApprox.from_scaled(p, value, 0, keep)
