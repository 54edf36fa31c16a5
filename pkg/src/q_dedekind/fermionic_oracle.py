"""
The fermionic p-adic q-measure and brute-force Riemann-sum integration
"""

import csv
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, List, Optional, Tuple

from .exact_arith import VP_INFINITY, PAdicContext, Valuation, vp
from .exceptions import PoleError, PreconditionError, ResourceLimitError
from .q_numbers import QBracketArg, QMode, QParam, euler_carlitz, euler_modified, q_euler_poly

logger = logging.getLogger(__name__)

DEFAULT_MAX_POINTS = 10**6
# Fixed chunk count: sums are split the same way whatever the thread count
CHUNKS = 16


@dataclass(frozen=True)
class MeasureLevel:
    """Cylinder sets a + p^N Z_p at level N for the measure with parameter q"""

    ctx: PAdicContext
    N: int
    q: QParam

    def __post_init__(self) -> None:
        if self.N < 1:
            raise PreconditionError("N", "level must be at least 1")
        if self.q.mode is not QMode.PADIC:
            raise PreconditionError("q", "the q-measure needs q in p-adic mode")
        if vp(1 - self.q.q, self.ctx.p) < 1:
            raise PreconditionError("q", f"v_{self.ctx.p}(1 - q) must be at least 1")

    @property
    def points(self) -> int:
        return self.ctx.p**self.N

    @cached_property
    def normalizer(self) -> Fraction:
        """(1 + q)/(1 + q^{p^N})"""
        q = self.q.q
        denom = 1 + q**self.points
        if denom == 0:
            raise PoleError(f"1 + q^{self.points}")
        return (1 + q) / denom

    @cached_property
    def finer(self) -> "MeasureLevel":
        """The level N+1 refining this one"""
        return MeasureLevel(self.ctx, self.N + 1, self.q)

    @cached_property
    def _children_factor(self) -> Fraction:
        # mass of the children of a, divided by (-q)^a
        step = (-self.q.q) ** self.points
        total = sum((step**i for i in range(self.ctx.p)), Fraction(0))
        return self.finer.normalizer * total

    def total_mass(self) -> Fraction:
        """Sum of the measure over all cylinders; 1 exactly"""
        q = self.q.q
        running = Fraction(1)
        total = Fraction(0)
        for _ in range(self.points):
            total += running
            running *= -q
        return self.normalizer * total

    def children_mass(self, a: int) -> Fraction:
        """Sum of the measure over the p children of a + p^N Z_p at level N+1"""
        if not 0 <= a < self.points:
            raise PreconditionError("a", f"must lie in [0, {self.points})")
        return self._children_factor * (-self.q.q) ** a


def measure(a: int, lvl: MeasureLevel) -> Fraction:
    """
    Mass of the cylinder a + p^N Z_p: (1+q)(-q)^a / (1 + q^{p^N})

    Args:
        a: Cylinder representative, 0 <= a < p^N
        lvl: Measure level

    Returns:
        Exact rational mass
    """
    if not 0 <= a < lvl.points:
        raise PreconditionError("a", f"must lie in [0, {lvl.points})")
    return lvl.normalizer * (-lvl.q.q) ** a


@dataclass(frozen=True)
class Integrand:
    """
    A named integrand x -> f(x) on {0, ..., p^N - 1}

    Built-in families know their closed-form integral (`limit`); the measure
    they are integrated against has parameter q^base_exp.
    """

    name: str
    function: Callable[[int], Fraction] = field(compare=False)
    base_exp: int = 1
    limit: Optional[Fraction] = None

    def __call__(self, x: int) -> Fraction:
        return self.function(x)

    @classmethod
    def constant(cls) -> "Integrand":
        return cls("constant", lambda x: Fraction(1), 1, Fraction(1))

    @classmethod
    def carlitz(cls, m: int, q: QParam) -> "Integrand":
        """[x]_q^m"""
        qv = q.q
        return cls(f"carlitz(m={m})",
                   lambda x: ((1 - qv**x) / (1 - qv)) ** m,
                   1, euler_carlitz(m, q))

    @classmethod
    def modified(cls, m: int, q: QParam) -> "Integrand":
        """[x]_q^m q^{-x}"""
        qv = q.q
        return cls(f"modified(m={m})",
                   lambda x: ((1 - qv**x) / (1 - qv)) ** m * qv ** (-x),
                   1, euler_modified(m, q))

    @classmethod
    def shifted(cls, m: int, a: int, q: QParam, N: int = 1) -> "Integrand":
        """q^{-Nx} [x + a/N]_{q^N}^m, integrated against the measure at q^N"""
        qv = q.q
        b = qv**N
        qa = qv**a
        return cls(f"shifted(m={m}, a={a}, N={N})",
                   lambda x: ((1 - qa * b**x) / (1 - b)) ** m * b ** (-x),
                   N, q_euler_poly(m, QBracketArg(a, N), q))


def _chunk_sum(f: Callable[[int], Fraction], q: Fraction, start: int, stop: int) -> Fraction:
    weight = (-q) ** start
    total = Fraction(0)
    for x in range(start, stop):
        total += f(x) * weight
        weight *= -q
    return total


def _tree_reduce(values: List[Fraction]) -> Fraction:
    while len(values) > 1:
        pairs = [values[i] + values[i + 1] for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            pairs.append(values[-1])
        values = pairs
    return values[0] if values else Fraction(0)


def integrate_riemann(
    f: Callable[[int], Fraction],
    lvl: MeasureLevel,
    parallelism: int = 1,
    max_points: int = DEFAULT_MAX_POINTS,
) -> Fraction:
    """
    Riemann sum sum_{x < p^N} f(x) mu_q(x + p^N Z_p), exactly

    The range is cut into a fixed number of chunks and combined by a
    fixed-shape pairwise reduction, so the result does not depend on
    `parallelism`.
    """
    points = lvl.points
    if points > max_points:
        raise ResourceLimitError(points, max_points)
    q = lvl.q.q
    bounds = [points * i // CHUNKS for i in range(CHUNKS + 1)]
    spans = [(bounds[i], bounds[i + 1]) for i in range(CHUNKS) if bounds[i] < bounds[i + 1]]
    if parallelism > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            partials = list(pool.map(lambda span: _chunk_sum(f, q, *span), spans))
    else:
        partials = [_chunk_sum(f, q, *span) for span in spans]
    return lvl.normalizer * _tree_reduce(partials)


@dataclass(frozen=True)
class TraceRow:
    level: int
    value: Fraction
    vp_diff: Optional[Valuation]
    vp_to_limit: Optional[Valuation] = None


@dataclass(frozen=True)
class ConvergenceTrace:
    """Partial Riemann sums by level, with valuations of successive differences"""

    integrand: str
    p: int
    q: Fraction
    rows: Tuple[TraceRow, ...]

    def __post_init__(self) -> None:
        levels = [row.level for row in self.rows]
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise PreconditionError("rows", "levels must be strictly increasing")

    def limit_valuations(self) -> List[Valuation]:
        return [row.vp_to_limit for row in self.rows if row.vp_to_limit is not None]

    def to_csv(self) -> str:
        """Rows N, value, vp_diff, vp_to_limit; rationals as num/den"""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(("N", "value", "vp_diff", "vp_to_limit"))
        for row in self.rows:
            writer.writerow((row.level, f"{row.value.numerator}/{row.value.denominator}",
                             _cell(row.vp_diff), _cell(row.vp_to_limit)))
        return buffer.getvalue()


def _cell(value: Optional[Valuation]) -> str:
    if value is None:
        return ""
    return "inf" if value == VP_INFINITY else str(value)


def convergence_trace(
    f: Integrand,
    max_level: int,
    ctx: PAdicContext,
    q: QParam,
    parallelism: int = 1,
    max_points: int = DEFAULT_MAX_POINTS,
) -> ConvergenceTrace:
    """
    Partial sums of the q-integral of f for levels 1..max_level

    The measure parameter is q^f.base_exp. When f carries a closed-form
    limit, each row also records v_p(limit - partial).
    """
    if ctx.p**max_level > max_points:
        raise ResourceLimitError(ctx.p**max_level, max_points)
    base = q.power(f.base_exp)
    rows: List[TraceRow] = []
    previous: Optional[Fraction] = None
    for level in range(1, max_level + 1):
        value = integrate_riemann(f, MeasureLevel(ctx, level, base), parallelism, max_points)
        vp_diff = None if previous is None else vp(value - previous, ctx.p)
        to_limit = None if f.limit is None else vp(f.limit - value, ctx.p)
        rows.append(TraceRow(level, value, vp_diff, to_limit))
        logger.debug(f"{f.name} level {level}: vp to limit {to_limit}")
        previous = value
    return ConvergenceTrace(f.name, ctx.p, q.q, tuple(rows))
