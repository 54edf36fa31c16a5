"""
Claims ledger: each displayed identity as an executable, exactly checked proposition

A claim is a generator of parameter instances plus an evaluator returning
both sides of the identity. The expected outcome of every instance comes from
the versioned table in data/expected_verdicts.json.
"""

import csv
import io
import json
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache, partial
from itertools import product
from math import gcd
from pathlib import Path
from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    Iterator,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from .config import Config
from .dedekind_sums import check_coprime, dc_sum_q
from .exact_arith import PAdicApprox, PAdicContext, Valuation, to_padic, vp
from .exceptions import (
    PreconditionError,
    QDedekindException,
    ResourceLimitError,
    UnknownClaimError,
)
from .fermionic_oracle import Integrand, MeasureLevel, convergence_trace, measure
from .interpolation import (
    SkipPolicy,
    Variant,
    check_interpolation_index,
    distribution_sum,
    euler_factor_correction,
    inverse_residue,
    removed_indices,
    s_pq,
    t_extended,
    t_int_a,
    t_int_b,
    t_series,
)
from .q_numbers import QBracketArg, QParam, q_euler_poly, q_int

logger = logging.getLogger(__name__)

EXPECTED_VERDICTS_PATH = Path(__file__).parent / "data" / "expected_verdicts.json"

# Readings of the displayed formulas that differ from their literal text
MEASURE_SIGN_READING = "d mu_{q^-k} in the weighted-sum identity is read as d mu_{q^k}"
RESIDUE_READING = "(y)_k is the residue x with 0 <= x < k and x = y (mod k)"
ODD_MODULUS_READING = "the distribution relation is asserted for odd moduli only"
INNER_MODULUS_READING = "the inner modulus p^N of the restricted sum is read as pN"
SUBTRACTED_EXPONENT_READING = "the exponent n of the subtracted integrand is read as m"
SUBTRACTED_MEASURE_READING = "d mu_{q^(p^N)} in the subtracted integral is read as d mu_{q^(pN)}"
THEOREM_ARGUMENT_READING = "T_q(m, hM, k) in the DC-sum identity is evaluated at (hM)_k"

Value = Union[Fraction, PAdicApprox]
Params = Dict[str, Any]

_Q_TOKEN = re.compile(r"^1([+-])p(?:\^(\d+))?$")


def resolve_q(token: Union[str, Fraction, int], p: int) -> Fraction:
    """
    Turn a q token into a rational

    Accepts "num/den", integers and the p-relative forms "1+p", "1-p", "1+p^2".
    """
    if not isinstance(token, str):
        return Fraction(token)
    text = token.replace(" ", "")
    match = _Q_TOKEN.match(text)
    if match:
        sign = 1 if match.group(1) == "+" else -1
        return Fraction(1 + sign * p ** int(match.group(2) or 1))
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise PreconditionError("q", f"cannot read '{token}' as a rational") from e


def format_value(value: Any) -> Any:
    """JSON/CSV form: rationals as "num/den", p-adic values in their printed form"""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, PAdicApprox):
        return str(value)
    if isinstance(value, float):
        return "inf" if value == float("inf") else repr(value)
    if isinstance(value, Enum):
        return value.value
    return value


@dataclass(frozen=True)
class Sweep:
    """Value lists per parameter; a parameter left out takes the claim's default"""

    values: Dict[str, Tuple[Any, ...]] = field(default_factory=dict)

    @classmethod
    def of(cls, **values: Any) -> "Sweep":
        return cls({name: tuple(v) for name, v in values.items() if v})

    def get(self, name: str, default: Sequence[Any]) -> Tuple[Any, ...]:
        return tuple(self.values.get(name) or default)

    def first(self, name: str, default: Any) -> Any:
        return self.get(name, (default,))[0]

    def has(self, name: str) -> bool:
        return bool(self.values.get(name))


@dataclass(frozen=True)
class Outcome:
    """Both sides of one checked instance"""

    lhs: Value
    rhs: Value
    holds: bool
    exact_equal: bool
    vp_diff: Valuation
    conditions: FrozenSet[str] = frozenset()
    skipped_indices: Tuple[int, ...] = ()


def compare(lhs: Value, rhs: Value, p: int, conditions: Optional[Set[str]] = None,
            skipped_indices: Tuple[int, ...] = ()) -> Outcome:
    """Exact comparison for rationals, agreement to common precision for p-adic values"""
    if isinstance(lhs, PAdicApprox) or isinstance(rhs, PAdicApprox):
        equal = lhs.agrees_with(rhs)
        vp_diff = lhs.vp_difference(rhs)
    else:
        equal = lhs == rhs
        vp_diff = vp(lhs - rhs, p)
    return Outcome(lhs, rhs, equal, equal, vp_diff, frozenset(conditions or ()), skipped_indices)


@dataclass(frozen=True)
class ClaimInstance:
    params: Params
    expected: str
    verdict: str
    lhs: Value | None = None
    rhs: Value | None = None
    exact_equal: bool | None = None
    vp_diff: Valuation | None = None
    skipped_reason: str | None = None
    skipped_indices: Tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict in PASSING_VERDICTS

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "params": {name: format_value(v) for name, v in self.params.items()},
            "lhs": format_value(self.lhs),
            "rhs": format_value(self.rhs),
            "exact_equal": self.exact_equal,
            "vp_diff": format_value(self.vp_diff),
            "expected": self.expected,
            "verdict": self.verdict,
        }
        if self.skipped_reason is not None:
            data["skipped_reason"] = self.skipped_reason
        if self.skipped_indices:
            data["skipped_indices"] = list(self.skipped_indices)
        return data


PASSING_VERDICTS = frozenset({"holds", "fails-as-expected", "recorded"})
CSV_COLUMNS = ("claim", "params", "lhs", "rhs", "exact_equal", "vp_diff",
               "expected", "verdict", "skipped_reason")


@dataclass(frozen=True)
class ClaimReport:
    claim: str
    normalizations: Tuple[str, ...]
    instances: Tuple[ClaimInstance, ...]

    @property
    def summary(self) -> Dict[str, int]:
        skipped = sum(1 for i in self.instances if i.verdict == "skipped")
        passed = sum(1 for i in self.instances if i.passed)
        return {"pass": passed, "fail": len(self.instances) - passed - skipped, "skipped": skipped}

    @property
    def verdict(self) -> str:
        """holds, fails-as-expected, or unexpected"""
        if self.summary["fail"]:
            return "unexpected"
        if any(i.verdict == "fails-as-expected" for i in self.instances):
            return "fails-as-expected"
        return "holds"

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def discrepancies(self) -> List[ClaimInstance]:
        return [i for i in self.instances if i.exact_equal is False]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claim": self.claim,
            "normalizations": list(self.normalizations),
            "instances": [i.to_dict() for i in self.instances],
            "summary": self.summary,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def csv_rows(self) -> Iterator[List[Any]]:
        for inst in self.instances:
            data = inst.to_dict()
            params = ";".join(f"{k}={v}" for k, v in data["params"].items())
            yield [self.claim, params, data["lhs"], data["rhs"], data["exact_equal"],
                   data["vp_diff"], data["expected"], data["verdict"],
                   data.get("skipped_reason", "")]

    def to_csv(self, header: bool = True) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if header:
            writer.writerow(CSV_COLUMNS)
        writer.writerows(self.csv_rows())
        return buffer.getvalue()


@dataclass(frozen=True)
class ClaimDefinition:
    claim_id: str
    instances: Callable[[Sweep, Config], Iterator[Params]]
    evaluate: Callable[[Params, Config], Outcome]
    normalizations: Tuple[str, ...] = ()


CLAIMS: Dict[str, ClaimDefinition] = {}


def claim(claim_id: str, instances: Callable[[Sweep, Config], Iterator[Params]],
          normalizations: Tuple[str, ...] = ()):
    """Register an evaluator under a claim id"""

    def register(evaluate: Callable[[Params, Config], Outcome]):
        CLAIMS[claim_id] = ClaimDefinition(claim_id, instances, evaluate, normalizations)
        return evaluate

    return register


def get_claim(claim_id: str) -> ClaimDefinition:
    try:
        return CLAIMS[claim_id]
    except KeyError:
        raise UnknownClaimError(claim_id) from None


@lru_cache(maxsize=1)
def load_expected_verdicts(path: Path = EXPECTED_VERDICTS_PATH) -> Dict[str, Any]:
    """The shipped expected-verdict table"""
    return json.loads(path.read_text(encoding="utf-8"))


def expected_verdict(rules: Dict[str, Any], conditions: FrozenSet[str]) -> str:
    """First rule whose condition is met, else the claim's default"""
    for rule in rules.get("when", ()):
        if rule["condition"] in conditions:
            return rule["expected"]
    return rules["default"]


def _verdict(holds: bool, expected: str) -> str:
    if expected == "n/a":
        return "recorded"
    if expected == "holds":
        return "holds" if holds else "unexpected-fail"
    return "unexpected-hold" if holds else "fails-as-expected"


# Sweep helpers


def _padic_q(q: Fraction, p: int, K: int) -> Tuple[PAdicContext, QParam]:
    ctx = PAdicContext(p, K)
    return ctx, QParam.padic(q, ctx)


def _default_m(p: int) -> Tuple[int, ...]:
    return (p - 2, 2 * p - 3)


def _coprime_h(sweep: Sweep, k: int) -> Tuple[int, ...]:
    return sweep.get("h", [h for h in range(1, k) if gcd(h, k) == 1])


def _dc_instances(sweep: Sweep, config: Config, *, allow_p_divides_k: bool) -> Iterator[Params]:
    for p in sweep.get("p", (3, 5)):
        default_k = range(2, 8) if allow_p_divides_k else (2, 3, 4, 5, 7)
        ks = sweep.get("k", [k for k in default_k if allow_p_divides_k or k % p])
        for token, k, m in product(sweep.get("q", ("2", "1+p")), ks, sweep.get("m", _default_m(p))):
            for h in _coprime_h(sweep, k):
                yield {"p": p, "q": resolve_q(token, p), "k": k, "h": h, "m": m}


def _weighted_sum_instances(sweep: Sweep, config: Config) -> Iterator[Params]:
    for params in _dc_instances(sweep, config, allow_p_divides_k=True):
        params["regime"] = "p|k" if params["k"] % params["p"] == 0 else "p∤k"
        yield params


def _residue_instances(sweep: Sweep, config: Config) -> Iterator[Params]:
    return _dc_instances(sweep, config, allow_p_divides_k=False)


def _theorem_instances(sweep: Sweep, config: Config) -> Iterator[Params]:
    for params in _dc_instances(sweep, config, allow_p_divides_k=False):
        for policy in sweep.get("skip_policy", ("include",)):
            yield {**params, "skip_policy": SkipPolicy(policy).value}


def _measure_instances(sweep: Sweep, config: Config) -> Iterator[Params]:
    max_level = sweep.first("maxN", 4)
    for p, token in product(sweep.get("p", (3, 5, 7)), sweep.get("q", ("1+p", "1+p^2", "1-p"))):
        for N, check in product(range(1, max_level + 1), ("total-mass", "additivity")):
            yield {"p": p, "q": resolve_q(token, p), "N": N, "check": check}


def _distribution_instances(sweep: Sweep, config: Config) -> Iterator[Params]:
    p = sweep.first("p", config.default_prime)
    for token, d, n, x in product(sweep.get("q", ("2", "4", "1+p")), sweep.get("d", (1, 3, 5)),
                                  sweep.get("n", range(7)), sweep.get("x", (0, 1, 2))):
        yield {"p": p, "q": resolve_q(token, p), "d": d, "n": n, "x": x}
    if not sweep.has("d"):
        yield {"p": p, "q": Fraction(2), "d": 2, "n": 1, "x": 0}


def _specialized_distribution_instances(sweep: Sweep, config: Config) -> Iterator[Params]:
    for p in sweep.get("p", (3, 5)):
        for token, N, a, m in product(sweep.get("q", ("2", "1+p")), sweep.get("N", (1, 2, 3)),
                                      sweep.get("a", (1, 2, 3)), sweep.get("m", _default_m(p))):
            yield {"p": p, "q": resolve_q(token, p), "N": N, "a": a, "m": m}


def _restricted_instances(sweep: Sweep, config: Config) -> Iterator[Params]:
    for p in sweep.get("p", (3, 5)):
        for token, N, a, m, K in product(
            sweep.get("q", ("1+p",)), sweep.get("N", (1, 2, 4)), sweep.get("a", (1, 2)),
            sweep.get("m", _default_m(p)), sweep.get("K", (config.precision,)),
        ):
            yield {"p": p, "q": resolve_q(token, p), "N": N, "a": a, "m": m, "K": K}


def _subtraction_instances(sweep: Sweep, config: Config) -> Iterator[Params]:
    for p in sweep.get("p", (3, 5)):
        Ns = sweep.get("N", [N for N in (2, 4, 5, 7) if N % p])
        for token, N, m in product(sweep.get("q", ("2", "1+p")), Ns, sweep.get("m", _default_m(p))):
            for a in sweep.get("a", [a for a in range(1, N) if a % p]):
                yield {"p": p, "q": resolve_q(token, p), "N": N, "a": a, "m": m}


def _series_instances(sweep: Sweep, config: Config) -> Iterator[Params]:
    for p in sweep.get("p", (3, 5)):
        for token, N, a, m, K in product(
            sweep.get("q", ("1+p",)), sweep.get("N", (p, 2 * p)), sweep.get("a", (1, 2)),
            sweep.get("m", _default_m(p)), sweep.get("K", (4, 6, 8)),
        ):
            yield {"p": p, "q": resolve_q(token, p), "N": N, "a": a, "m": m, "K": K}


def _kummer_instances(sweep: Sweep, config: Config) -> Iterator[Params]:
    for p in sweep.get("p", (3, 5)):
        for token, N, a, m, c, K in product(
            sweep.get("q", ("1+p",)), sweep.get("N", (p,)), sweep.get("a", (1, 2)),
            sweep.get("m", (1, 2)), sweep.get("c", (0, 1, 2, 3)),
            sweep.get("K", (config.precision,)),
        ):
            yield {"p": p, "q": resolve_q(token, p), "N": N, "a": a, "m": m, "c": c, "K": K}


def _oracle_instances(sweep: Sweep, config: Config) -> Iterator[Params]:
    max_level = sweep.first("maxN", 6)
    for p in sweep.get("p", (3,)):
        for token, family, m in product(sweep.get("q", ("4",)),
                                        sweep.get("family", ("carlitz", "modified")),
                                        sweep.get("m", range(5))):
            yield {"p": p, "q": resolve_q(token, p), "family": family, "m": m, "maxN": max_level}


# Claim evaluators


@claim("measure-additivity", _measure_instances)
def _measure_additivity(params: Params, config: Config) -> Outcome:
    p, N = params["p"], params["N"]
    if p ** (N + 1) > config.max_points:
        raise ResourceLimitError(p ** (N + 1), config.max_points)
    ctx, q = _padic_q(params["q"], p, config.precision)
    lvl = MeasureLevel(ctx, N, q)
    if params["check"] == "total-mass":
        return compare(lvl.total_mass(), Fraction(1), p)
    additive = sum(1 for a in range(lvl.points) if lvl.children_mass(a) == measure(a, lvl))
    return compare(Fraction(additive), Fraction(lvl.points), p)


@claim("eq1", _weighted_sum_instances, (MEASURE_SIGN_READING,))
def _weighted_sum(params: Params, config: Config) -> Outcome:
    p, q, k, h, m = params["p"], params["q"], params["k"], params["h"], params["m"]
    check_interpolation_index(m, p)
    check_coprime(h, k)
    bracket_k = q_int(k, q)
    lhs = rhs = Fraction(0)
    for M in range(1, k):
        value = q_euler_poly(m, QBracketArg(h * M, k), q)
        sign = (-1) ** (M - 1)
        lhs += (1 - q**M) / (1 - q**k) * sign * value
        rhs += sign * q_int(M, q) * bracket_k**m * value
    return compare(bracket_k ** (m + 1) * lhs, rhs, p)


@claim("eq2", _residue_instances, (MEASURE_SIGN_READING, RESIDUE_READING))
def _residue_form(params: Params, config: Config) -> Outcome:
    p, q, k, h, m = params["p"], params["q"], params["k"], params["h"], params["m"]
    check_interpolation_index(m, p)
    lhs = q_int(k, q) ** (m + 1) * dc_sum_q(m, h, k, k, q)
    rhs = Fraction(0)
    for M in range(1, k):
        t = t_int_a(m, h * M % k, k, q, p, require_unit=False)
        rhs += (-1) ** (M - 1) * q_int(M, q) * t
    return compare(lhs, rhs, p)


@claim("eq3", _distribution_instances, (ODD_MODULUS_READING,))
def _distribution(params: Params, config: Config) -> Outcome:
    p, q, d, n, x = params["p"], params["q"], params["d"], params["n"], params["x"]
    if d < 1 or n < 0 or x < 0:
        raise PreconditionError("d, n, x", "need d >= 1 and n, x >= 0")
    lhs = q_euler_poly(n, QBracketArg(x, 1), q)
    total = sum(((-1) ** i * q_euler_poly(n, QBracketArg(x + i, d), q) for i in range(d)),
                Fraction(0))
    rhs = q_int(d, q) ** n * (1 + q) / (1 + q**d) * total
    return compare(lhs, rhs, p, {"even-modulus"} if d % 2 == 0 else set())


@claim("eq4", _specialized_distribution_instances)
def _specialized_distribution(params: Params, config: Config) -> Outcome:
    p, q, N, a, m = params["p"], params["q"], params["N"], params["a"], params["m"]
    if N < 1 or a < 0 or m < 0:
        raise PreconditionError("N, a, m", "need N >= 1 and a, m >= 0")
    lhs = q_int(N, q) ** m * q_euler_poly(m, QBracketArg(a, N), q)
    bracket = q_int(p * N, q) ** m
    total = sum(((-1) ** i * bracket * q_euler_poly(m, QBracketArg(a + i * N, p * N), q)
                 for i in range(p)), Fraction(0))
    rhs = (1 + q**N) / (1 + q ** (p * N)) * total
    return compare(lhs, rhs, p)


@claim("restricted-sum", _restricted_instances, (INNER_MODULUS_READING,))
def _restricted_sum(params: Params, config: Config) -> Outcome:
    p, N, a, m = params["p"], params["N"], params["a"], params["m"]
    check_interpolation_index(m, p)
    ctx, q = _padic_q(params["q"], p, params["K"])
    lhs = t_extended(m, a, N, q, ctx)
    rhs = to_padic(distribution_sum(m, a, N, p, q, restricted=True), ctx)
    return compare(lhs, rhs, p)


@claim("subtraction-vs-inparticular", _subtraction_instances,
       (INNER_MODULUS_READING, SUBTRACTED_EXPONENT_READING, SUBTRACTED_MEASURE_READING))
def _subtraction_vs_inparticular(params: Params, config: Config) -> Outcome:
    p, q, N, a, m = params["p"], params["q"], params["N"], params["a"], params["m"]
    check_interpolation_index(m, p)
    if not 1 <= a < N:
        raise PreconditionError("a", f"need 1 <= a < N = {N}")
    lhs = distribution_sum(m, a, N, p, q, restricted=True)
    rhs = t_int_b(m, a, N, p, q)
    (dropped,) = removed_indices(a, N, p)
    ratio = (1 + q**N) / (1 + q ** (p * N))
    gap = (1 - ratio * (-1) ** dropped) * euler_factor_correction(m, a, N, p, q)
    return compare(lhs, rhs, p, {"zero-predicted-gap"} if gap == 0 else set())


def _theorem(variant: Variant, params: Params, config: Config) -> Outcome:
    p, q, k, h, m = params["p"], params["q"], params["k"], params["h"], params["m"]
    check_interpolation_index(m, p)
    value = s_pq(m, h, k, p, q, variant, params["skip_policy"])
    bracket_k = q_int(k, q)
    correction = Fraction(0)
    if k > 1:
        c = inverse_residue(p, h, k)
        factor = ((1 - q ** (k * p)) / (1 - q**k)) ** m
        correction = bracket_k ** (m + 1) * factor * dc_sum_q(m, c, k, p * k, q)
    rhs = bracket_k ** (m + 1) * dc_sum_q(m, h, k, k, q) - correction
    conditions = set()
    if value.skipped:
        conditions.add("skipped-indices")
    if correction == 0:
        conditions.add("zero-correction")
    return compare(value.value, rhs, p, conditions, value.skipped)


@claim("eq5-A", _theorem_instances, (RESIDUE_READING, THEOREM_ARGUMENT_READING))
def _theorem_reading_a(params: Params, config: Config) -> Outcome:
    return _theorem(Variant.A, params, config)


@claim("eq5-B", _theorem_instances,
       (RESIDUE_READING, THEOREM_ARGUMENT_READING, SUBTRACTED_EXPONENT_READING,
        SUBTRACTED_MEASURE_READING))
def _theorem_reading_b(params: Params, config: Config) -> Outcome:
    return _theorem(Variant.B, params, config)


@claim("kummer", _kummer_instances)
def _kummer(params: Params, config: Config) -> Outcome:
    p, N, a, m, c, K = (params[name] for name in ("p", "N", "a", "m", "c", "K"))
    if c < 0 or c + 1 > K:
        raise PreconditionError("c", f"need 0 <= c < K = {K}")
    ctx, q = _padic_q(params["q"], p, K)
    lhs = t_series(m, a, N, q, ctx)
    rhs = t_series(m + (p - 1) * p**c, a, N, q, ctx)
    outcome = compare(lhs, rhs, p)
    return Outcome(lhs, rhs, outcome.vp_diff >= c + 1, outcome.exact_equal, outcome.vp_diff)


@claim("oracle", _oracle_instances)
def _oracle(params: Params, config: Config) -> Outcome:
    p, m, family = params["p"], params["m"], params["family"]
    ctx, q = _padic_q(params["q"], p, config.precision)
    families = {"carlitz": Integrand.carlitz, "modified": Integrand.modified}
    if family == "constant":
        integrand = Integrand.constant()
    elif family in families:
        integrand = families[family](m, q)
    else:
        raise PreconditionError("family", f"unknown integrand family '{family}'")
    trace = convergence_trace(integrand, params["maxN"], ctx, q, max_points=config.max_points)
    valuations = trace.limit_valuations()
    monotone = all(b >= a for a, b in zip(valuations, valuations[1:]))
    last = trace.rows[-1]
    holds = monotone and valuations[-1] >= config.oracle_threshold
    return Outcome(integrand.limit, last.value, holds, integrand.limit == last.value,
                   last.vp_to_limit)


@claim("series-specialization", _series_instances)
def _series_specialization(params: Params, config: Config) -> Outcome:
    p, N, a, m = params["p"], params["N"], params["a"], params["m"]
    ctx, q = _padic_q(params["q"], p, params["K"])
    lhs = t_series(m, a, N, q, ctx)
    rhs = to_padic(t_int_a(m, a, N, q, p), ctx)
    return compare(lhs, rhs, p)


CLAIM_IDS: Tuple[str, ...] = tuple(CLAIMS)


def _run_instance(definition: ClaimDefinition, config: Config, rules: Dict[str, Any],
                  params: Params) -> ClaimInstance:
    try:
        outcome = definition.evaluate(params, config)
    except ResourceLimitError:
        raise
    except PreconditionError as e:
        logger.warning(f"Skipping {definition.claim_id} instance {params}: {e}")
        return ClaimInstance(params, rules["default"], "skipped", skipped_reason=str(e))
    except QDedekindException as e:
        logger.error(f"{definition.claim_id} instance {params} failed: {e}")
        return ClaimInstance(params, rules["default"], "error", skipped_reason=str(e))

    expected = expected_verdict(rules, outcome.conditions)
    return ClaimInstance(
        params=params,
        expected=expected,
        verdict=_verdict(outcome.holds, expected),
        lhs=outcome.lhs,
        rhs=outcome.rhs,
        exact_equal=outcome.exact_equal,
        vp_diff=outcome.vp_diff,
        skipped_indices=outcome.skipped_indices,
    )


def verify_claim(claim_id: str, sweep: Optional[Sweep] = None,
                 config: Optional[Config] = None) -> ClaimReport:
    """
    Evaluate a claim over a parameter sweep

    Instances run concurrently when config.parallelism > 1; the report keeps
    the sweep order, so it is identical for every thread count.

    Args:
        claim_id: One of CLAIM_IDS
        sweep: Parameter lists (claim defaults for anything left out)
        config: Precision, caps and parallelism

    Returns:
        ClaimReport with one instance per swept parameter set

    Raises:
        UnknownClaimError: If the claim id is not registered
        ResourceLimitError: If an instance exceeds the desk-scale cap
    """
    definition = get_claim(claim_id)
    config = config or Config()
    sweep = sweep or Sweep()
    rules = load_expected_verdicts()["claims"][claim_id]
    params_list = list(definition.instances(sweep, config))
    logger.info(f"Verifying {claim_id} over {len(params_list)} instances")

    run = partial(_run_instance, definition, config, rules)
    if config.parallelism > 1:
        with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
            instances = list(pool.map(run, params_list))
    else:
        instances = [run(params) for params in params_list]

    report = ClaimReport(claim_id, definition.normalizations, tuple(instances))
    logger.info(f"{claim_id}: {report.summary} -> {report.verdict}")
    return report


def verify_all(sweep: Optional[Sweep] = None,
               config: Optional[Config] = None) -> List[ClaimReport]:
    """Run every registered claim in registration order"""
    return [verify_claim(claim_id, sweep, config) for claim_id in CLAIM_IDS]
