"""
Teichmüller-twisted p-adic interpolation of q-Euler values and p-adic DC sums

Two finite readings of the interpolation function coexist:

* reading A, the value [N]_q^m E_{m,q^N}(a/N) at m with m + 1 ≡ 0 (mod p-1);
* reading B, the same value with the Euler factor at p removed,
  [N]_q^m E_{m,q^N}(a/N) - [pN]_q^m E_{m,q^{pN}}((p^{-1}a)_N / N).

`t_series` is the p-adic function of s (defined when p | N), `t_extended`
covers p ∤ N through the restricted distribution sum at modulus pN.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb, gcd
from typing import List, Optional, Tuple, Union

from .exact_arith import (
    PAdicApprox,
    PAdicContext,
    PAdicInt,
    padic_binom,
    teichmuller,
    to_padic,
    vp,
    vp_factorial,
)
from .exceptions import InvariantViolationError, PrecisionError, PreconditionError
from .q_numbers import QBracketArg, QLike, QMode, QParam, euler_modified, q_euler_poly, q_value

logger = logging.getLogger(__name__)


class Variant(str, Enum):
    A = "A"
    B = "B"
    SERIES = "series"


class SkipPolicy(str, Enum):
    INCLUDE = "include"
    EXCLUDE = "exclude"


def _resolve_prime(q: QLike, p: Optional[int]) -> int:
    if p is not None:
        return p
    if isinstance(q, QParam) and q.ctx is not None:
        return q.ctx.p
    raise PreconditionError("p", "no prime given and q carries no p-adic context")


def _resolve_context(q: QParam, ctx: Optional[PAdicContext]) -> PAdicContext:
    if q.mode is not QMode.PADIC:
        raise PreconditionError("q", "p-adic evaluation needs q in p-adic mode")
    ctx = ctx or q.ctx
    if ctx.p != q.ctx.p:
        raise PreconditionError("ctx", f"prime {ctx.p} does not match q's prime {q.ctx.p}")
    return ctx


def check_interpolation_index(m: int, p: int) -> None:
    """m + 1 ≡ 0 (mod p - 1) makes the Teichmüller factor trivial"""
    if m < 0:
        raise PreconditionError("m", "must be non-negative")
    if (m + 1) % (p - 1):
        raise PreconditionError("m", f"m + 1 = {m + 1} is not divisible by p - 1 = {p - 1}")


def inverse_residue(p: int, a: int, N: int) -> int:
    """(p^{-1} a)_N: the x with 0 <= x < N and p x ≡ a (mod N)"""
    if gcd(p, N) != 1:
        raise PreconditionError("N", f"p = {p} is not invertible modulo N = {N}")
    return pow(p, -1, N) * a % N


def removed_indices(a: int, N: int, p: int) -> List[int]:
    """Indices i in [0, p) with a + iN ≡ 0 (mod p)"""
    return [i for i in range(p) if (a + i * N) % p == 0]


def t_int_a(
    m: int, a: int, N: int, q: QLike, p: Optional[int] = None, *, require_unit: bool = True
) -> Fraction:
    """
    Reading A at an integer: [a]_q^m sum_j C(m,j) q^{aj} ρ^j E_{j,q^N}, ρ = [N]_q/[a]_q

    Both the finite sum and [N]_q^m E_{m,q^N}(a/N) are evaluated and must agree.

    Args:
        m: Integer argument with m + 1 ≡ 0 (mod p - 1)
        a: Positive integer, prime to p unless require_unit is False
        N: Positive modulus
        q: Deformation parameter
        p: Odd prime (defaults to the prime of a p-adic q)
        require_unit: Reject a divisible by p

    Returns:
        Exact rational value
    """
    p = _resolve_prime(q, p)
    check_interpolation_index(m, p)
    if a < 1 or N < 1:
        raise PreconditionError("a, N", "must be positive")
    if require_unit and a % p == 0:
        raise PreconditionError("a", f"{a} is divisible by {p}")
    qv = q_value(q)
    qa = qv**a
    bracket_a = (1 - qa) / (1 - qv)
    rho = (1 - qv**N) / (1 - qa)
    total = Fraction(0)
    for j in range(m + 1):
        total += comb(m, j) * qa**j * rho**j * euler_modified(j, qv, N)
    direct = bracket_a**m * total
    via_poly = ((1 - qv**N) / (1 - qv)) ** m * q_euler_poly(m, QBracketArg(a, N), qv)
    if direct != via_poly:
        raise InvariantViolationError(f"reading A paths disagree at m={m}, a={a}, N={N}")
    return direct


def euler_factor_correction(m: int, a: int, N: int, p: int, q: QLike) -> Fraction:
    """[pN]_q^m E_{m,q^{pN}}((p^{-1}a)_N / N), the term reading B subtracts"""
    c = inverse_residue(p, a, N)
    qv = q_value(q)
    return ((1 - qv ** (p * N)) / (1 - qv)) ** m * q_euler_poly(m, QBracketArg(c * p, p * N), qv)


def t_int_b(
    m: int, a: int, N: int, p: int, q: QLike, *, require_unit: bool = True
) -> Fraction:
    """Reading B: reading A minus the Euler-factor correction at p"""
    base = t_int_a(m, a, N, q, p, require_unit=require_unit)
    return base - euler_factor_correction(m, a, N, p, q)


def one_unit_part(a: int, q: QParam, ctx: Optional[PAdicContext] = None) -> PAdicApprox:
    """<a>_q = ω^{-1}(a) [a]_q, a 1-unit of Z_p"""
    ctx = _resolve_context(q, ctx)
    bracket = to_padic((1 - q.q**a) / (1 - q.q), ctx)
    return teichmuller(a, ctx).inverse() * bracket


def _series_length(step: int, p: int, K: int) -> int:
    """First j >= 1 with j*step - v_p(j!) >= K"""
    j = 1
    while j * step - vp_factorial(j, p) < K:
        j += 1
    return j


def _working_context(s: Union[PAdicInt, int], ctx: PAdicContext) -> PAdicContext:
    """Context capped at the digits s actually carries"""
    if isinstance(s, PAdicInt) and s.ctx.K < ctx.K:
        logger.debug(f"s known to {s.ctx.K} digits; working at {s.ctx.K} instead of {ctx.K}")
        return ctx.with_precision(s.ctx.K)
    return ctx


def _as_padic_int(s: Union[PAdicInt, int], ctx: PAdicContext) -> PAdicInt:
    if isinstance(s, PAdicInt):
        if s.ctx.p != ctx.p:
            raise PreconditionError("s", f"s lives in Z_{s.ctx.p}, not Z_{ctx.p}")
        return PAdicInt(s.value, ctx)
    if s < 0:
        raise PreconditionError("s", "integer arguments must be non-negative")
    return PAdicInt(s, ctx)


def one_unit_power(a: int, s: Union[PAdicInt, int], q: QParam,
                   ctx: Optional[PAdicContext] = None) -> PAdicApprox:
    """<a>_q^s = sum_j C(s,j) (<a>_q - 1)^j"""
    ctx = _working_context(s, _resolve_context(q, ctx))
    s = _as_padic_int(s, ctx)
    one = PAdicApprox(ctx.p, 0, 1, ctx.K)
    delta = one_unit_part(a, q, ctx) - one
    if delta.is_zero:
        return one
    if delta.valuation < 1:
        raise InvariantViolationError(f"<{a}>_q is not a 1-unit")
    total = one
    for j in range(1, _series_length(delta.valuation, ctx.p, ctx.K)):
        total = total + padic_binom(s, j, ctx) * delta**j
    return total.with_precision(ctx.K)


def t_series(s: Union[PAdicInt, int], a: int, N: int, q: QParam,
             ctx: Optional[PAdicContext] = None) -> PAdicApprox:
    """
    T_q(s, a, N : q^N) = ω^{-1}(a) <a>_q^s sum_j C(s,j) q^{aj} ρ^j E_{j,q^N}

    with ρ = (1 - q^N)/(1 - q^a). Requires p | N, so v_p(ρ) = v_p(N) >= 1 and
    the j-th term has valuation at least j v_p(ρ); the sum stops at the first
    j where j v_p(ρ) - v_p(j!) reaches K.
    """
    ctx = _working_context(s, _resolve_context(q, ctx))
    p, K = ctx.p, ctx.K
    if N < 1 or N % p:
        raise PreconditionError("N", f"{p} must divide N = {N}")
    if a < 1 or a % p == 0:
        raise PreconditionError("a", f"must be positive and prime to {p}")
    s = _as_padic_int(s, ctx)
    qv = q.q
    qa = qv**a
    rho = (1 - qv**N) / (1 - qa)
    step = vp(rho, p)
    if step < 1:
        raise PrecisionError(f"v_{p}(ρ) = {step}: the series does not converge")
    length = _series_length(step, p, K)
    logger.debug(f"t_series(a={a}, N={N}): {length} terms for {K} digits")

    total = PAdicApprox.zero(p)
    ratio = qa * rho
    for j in range(length):
        term = padic_binom(s, j, ctx) * to_padic(ratio**j * euler_modified(j, qv, N), ctx)
        if not term.is_zero and term.valuation < j * step:
            raise PrecisionError(f"term {j} has valuation {term.valuation} < {j * step}")
        total = total + term

    twist = teichmuller(a, ctx).inverse() * one_unit_power(a, s, q, ctx)
    return (twist * total.with_precision(K)).with_precision(K)


def t_extended(s: Union[PAdicInt, int], a: int, N: int, q: QParam,
               ctx: Optional[PAdicContext] = None) -> PAdicApprox:
    """
    T_q for p ∤ N through the restricted sum at modulus pN

    (1+q^N)/(1+q^{pN}) sum_{i < p, p ∤ a+iN} (-1)^i T_q(s, (a+iN)_{pN}, pN : q^{pN})
    """
    ctx = _resolve_context(q, ctx)
    p, K = ctx.p, ctx.K
    if N < 1 or N % p == 0:
        raise PreconditionError("N", f"{p} divides N = {N}; use t_series")
    if a < 1 or a % p == 0:
        raise PreconditionError("a", f"must be positive and prime to {p}")
    dropped = removed_indices(a, N, p)
    if len(dropped) != 1:
        raise InvariantViolationError(f"expected one removed index, found {dropped}")
    qv = q.q
    total = PAdicApprox.zero(p)
    for i in range(p):
        if i in dropped:
            continue
        term = t_series(s, (a + i * N) % (p * N), p * N, q, ctx)
        total = total + term if i % 2 == 0 else total - term
    factor = to_padic((1 + qv**N) / (1 + qv ** (p * N)), ctx)
    return (factor * total).with_precision(K)


def distribution_sum(m: int, a: int, N: int, p: int, q: QLike, *, restricted: bool) -> Fraction:
    """
    Rational counterpart of t_extended at s = m

    (1+q^N)/(1+q^{pN}) sum_i (-1)^i [pN]_q^m E_{m,q^{pN}}((a+iN)_{pN} / pN),
    optionally without the index where p | a + iN.
    """
    qv = q_value(q)
    dropped = set(removed_indices(a, N, p)) if restricted else set()
    bracket = ((1 - qv ** (p * N)) / (1 - qv)) ** m
    total = Fraction(0)
    for i in range(p):
        if i in dropped:
            continue
        arg = QBracketArg((a + i * N) % (p * N), p * N)
        total += (-1) ** i * bracket * q_euler_poly(m, arg, qv)
    return (1 + qv**N) / (1 + qv ** (p * N)) * total


@dataclass(frozen=True)
class DedekindValue:
    """Value of a p-adic DC sum together with the indices M that were skipped"""

    value: Union[Fraction, PAdicApprox]
    skipped: Tuple[int, ...] = ()


def _skips(p: int, h: int, k: int, M: int) -> bool:
    return (h * M) % p == 0 or (h * M % k) % p == 0


def s_pq(
    s: Union[PAdicInt, int],
    h: int,
    k: int,
    p: int,
    q: QLike,
    variant: Union[Variant, str] = Variant.A,
    skip_policy: Union[SkipPolicy, str] = SkipPolicy.EXCLUDE,
    ctx: Optional[PAdicContext] = None,
) -> DedekindValue:
    """
    p-adic Dedekind-type DC sum S_{p,q}(s : h, k : q^k)

    sum_{M=1}^{k-1} [M]_q (-1)^{M-1} T_q(s, (hM)_k, k : q^k), with T read as
    variant A, B or the p-adic series. Under the exclude policy the indices
    with p | hM (or p | (hM)_k) are skipped and reported.
    """
    variant = Variant(variant)
    skip_policy = SkipPolicy(skip_policy)
    if gcd(h, k) != 1 or h < 1 or k < 1:
        raise PreconditionError("h, k", f"need positive coprime h, k; got {h}, {k}")
    if k % p == 0:
        raise PreconditionError("k", f"{p} divides k = {k}")

    skipped = tuple(M for M in range(1, k)
                    if skip_policy is SkipPolicy.EXCLUDE and _skips(p, h, k, M))
    indices = [M for M in range(1, k) if M not in skipped]
    require_unit = skip_policy is SkipPolicy.EXCLUDE

    if variant is Variant.SERIES:
        if not isinstance(q, QParam):
            raise PreconditionError("q", "the series variant needs a p-adic QParam")
        ctx = _resolve_context(q, ctx)
        total = PAdicApprox.zero(p)
        for M in indices:
            r = h * M % k
            if r % p == 0:
                raise PreconditionError("M", f"T_q is undefined at (hM)_k = {r}")
            weight = to_padic((1 - q.q**M) / (1 - q.q), ctx)
            term = weight * t_extended(s, r, k, q, ctx)
            total = total + term if M % 2 == 1 else total - term
        return DedekindValue(total.with_precision(ctx.K), skipped)

    if not isinstance(s, int):
        raise PreconditionError("s", "variants A and B take an integer m")
    qv = q_value(q)
    total = Fraction(0)
    for M in indices:
        r = h * M % k
        if variant is Variant.A:
            t = t_int_a(s, r, k, qv, p, require_unit=require_unit)
        else:
            t = t_int_b(s, r, k, p, qv, require_unit=require_unit)
        total += (-1) ** (M - 1) * (1 - qv**M) / (1 - qv) * t
    return DedekindValue(total, skipped)
