"""
Command-line front end: exact computations, convergence traces and claim sweeps

Exit codes: 0 success, 1 unexpected claim verdicts, 2 bad arguments or
precondition violations, 3 pole or precision failures.
"""

import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Optional, Tuple

import typer

from . import __version__
from .cache import configure_cache
from .claims import (
    CLAIM_IDS,
    ClaimReport,
    Sweep,
    format_value,
    resolve_q,
    verify_all,
    verify_claim,
)
from .config import Config
from .dedekind_sums import dc_sum_classical, dc_sum_q
from .exact_arith import PAdicContext
from .exceptions import PreconditionError, QDedekindException, ResourceLimitError
from .fermionic_oracle import Integrand, convergence_trace
from .interpolation import s_pq, t_int_a, t_int_b, t_series
from .q_numbers import (
    QBracketArg,
    QParam,
    classical_euler_poly,
    euler_carlitz,
    euler_modified,
    q_euler_poly,
)

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="q-dedekind-audit",
    help="q-Euler numbers, fermionic p-adic q-integrals, DC sums and their claims ledger",
    no_args_is_help=True,
)

COMPUTE_KINDS = (
    "euler-modified",
    "euler-carlitz",
    "q-euler-poly",
    "classical-euler-poly",
    "dc-classical",
    "dc-q",
    "t-int-a",
    "t-int-b",
    "t-series",
    "s-pq",
)
FAMILIES = ("constant", "carlitz", "modified", "shifted")


def _exit_code(error: QDedekindException) -> int:
    if isinstance(error, (PreconditionError, ResourceLimitError)):
        return 2
    return 3


def _fail(error: QDedekindException) -> NoReturn:
    typer.echo(f"Error: {error}", err=True)
    raise typer.Exit(code=_exit_code(error))


def parse_int_list(text: Optional[str]) -> List[int]:
    """
    Parse "1,3,5", "0..6" or a mix such as "0..2,5"

    Ranges are inclusive.
    """
    if not text:
        return []
    values: List[int] = []
    for piece in text.split(","):
        piece = piece.strip()
        try:
            if ".." in piece:
                low, high = piece.split("..", 1)
                values.extend(range(int(low), int(high) + 1))
            elif piece:
                values.append(int(piece))
        except ValueError as e:
            raise PreconditionError("list", f"cannot read '{piece}' as an integer or range") from e
    return values


def parse_str_list(text: Optional[str]) -> List[str]:
    if not text:
        return []
    return [piece.strip() for piece in text.split(",") if piece.strip()]


@app.callback()
def main(
    ctx: typer.Context,
    precision: Optional[int] = typer.Option(None, "--precision", help="p-adic digits K"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level"),
    max_points: Optional[int] = typer.Option(None, "--max-points", help="Cap on p^N"),
    no_cache: bool = typer.Option(False, "--no-cache", help="Disable the Euler-number cache"),
):
    """Configure logging, caching and precision shared by all commands"""
    config = Config.from_env()
    if precision is not None:
        config.precision = precision
    if log_level:
        config.log_level = log_level.upper()
    if max_points is not None:
        config.max_points = max_points
    config.cache_enabled = not no_cache
    try:
        config.validate()
    except ValueError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=2) from e

    logging.basicConfig(
        level=config.log_level,
        format=config.log_format,
        stream=sys.stderr,
        force=True,
    )
    configure_cache(config.cache_enabled, config.cache_max_size)
    ctx.obj = config


@app.command()
def version():
    """Print the package version"""
    typer.echo(__version__)


def _parse_rational(name: str, text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise PreconditionError(name, f"cannot read '{text}' as a rational") from e


def _compute_value(kind: str, config: Config, **opts: Any) -> Tuple[Any, Dict[str, Any]]:
    p = opts["p"] or config.default_prime
    K = opts["K"] or config.precision
    q = resolve_q(opts["q"], p)
    n, m, h, k, a, N = (opts[name] for name in ("n", "m", "h", "k", "a", "N"))
    extras: Dict[str, Any] = {}

    if kind == "euler-modified":
        return euler_modified(n, q, N), extras
    if kind == "euler-carlitz":
        return euler_carlitz(m, q), extras
    if kind == "q-euler-poly":
        return q_euler_poly(m, QBracketArg(a, N), q), extras
    if kind == "classical-euler-poly":
        return classical_euler_poly(n, _parse_rational("x", opts["x"])), extras
    if kind == "dc-classical":
        return dc_sum_classical(m, h, k), extras
    if kind == "dc-q":
        return dc_sum_q(m, h, k, opts["l"] or k, q), extras
    if kind == "t-int-a":
        return t_int_a(m, a, N, q, p), extras
    if kind == "t-int-b":
        return t_int_b(m, a, N, p, q), extras

    ctx = PAdicContext(p, K)
    s = m if opts["s"] is None else opts["s"]
    if kind == "t-series":
        return t_series(s, a, N, QParam.padic(q, ctx), ctx), extras
    if kind == "s-pq":
        variant = opts["variant"]
        q_arg = QParam.padic(q, ctx) if variant == "series" else q
        result = s_pq(s, h, k, p, q_arg, variant, opts["skip_policy"], ctx)
        extras["skipped_indices"] = list(result.skipped)
        return result.value, extras
    kinds = ", ".join(COMPUTE_KINDS)
    raise PreconditionError("kind", f"unknown quantity '{kind}'; choose from {kinds}")


@app.command()
def compute(
    ctx: typer.Context,
    kind: str = typer.Argument(..., help=f"One of: {', '.join(COMPUTE_KINDS)}"),
    n: int = typer.Option(0, "-n", help="Index of an Euler number or polynomial"),
    m: int = typer.Option(1, "-m", help="Weight m"),
    h: int = typer.Option(1, "-h", help="DC-sum numerator h"),
    k: int = typer.Option(1, "-k", help="DC-sum modulus k"),
    l: Optional[int] = typer.Option(None, "-l", help="Base exponent l (defaults to k)"),
    a: int = typer.Option(1, "-a", help="Residue a"),
    N: int = typer.Option(1, "-N", help="Modulus or base exponent N"),
    p: Optional[int] = typer.Option(None, "-p", help="Odd prime"),
    q: str = typer.Option("2", "-q", help="q as num/den or 1+p"),
    x: str = typer.Option("0", "-x", help="Rational argument of E_n(x)"),
    s: Optional[int] = typer.Option(None, "-s", help="Series argument s (defaults to m)"),
    K: Optional[int] = typer.Option(None, "-K", help="p-adic digits"),
    variant: str = typer.Option("A", "--variant", help="A, B or series"),
    skip_policy: str = typer.Option("exclude", "--skip-policy", help="include or exclude"),
):
    """Compute one quantity and print it exactly"""
    config: Config = ctx.obj
    try:
        value, extras = _compute_value(
            kind, config, n=n, m=m, h=h, k=k, l=l, a=a, N=N, p=p, q=q, x=x, s=s, K=K,
            variant=variant, skip_policy=skip_policy,
        )
    except QDedekindException as e:
        _fail(e)
    except ValueError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=2) from e

    human = format_value(value)
    typer.echo(human)
    typer.echo(json.dumps({"kind": kind, "value": human, **extras}))


def render_reports(reports: List[ClaimReport], output_format: str) -> str:
    if output_format == "csv":
        return "".join(r.to_csv(header=(i == 0)) for i, r in enumerate(reports))
    if len(reports) == 1:
        return reports[0].to_json() + "\n"
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


@app.command()
def verify(
    ctx: typer.Context,
    claim: str = typer.Option(..., "--claim", help=f"all, or one of: {', '.join(CLAIM_IDS)}"),
    p: Optional[str] = typer.Option(None, "--p", help="Primes, e.g. 3,5"),
    q: Optional[str] = typer.Option(None, "--q", help="q tokens, e.g. 2/1,1+p"),
    m: Optional[str] = typer.Option(None, "--m"),
    h: Optional[str] = typer.Option(None, "--h"),
    k: Optional[str] = typer.Option(None, "--k"),
    N_values: Optional[str] = typer.Option(None, "--N"),
    a: Optional[str] = typer.Option(None, "--a"),
    d: Optional[str] = typer.Option(None, "--d"),
    n_values: Optional[str] = typer.Option(None, "--n"),
    x: Optional[str] = typer.Option(None, "--x"),
    c: Optional[str] = typer.Option(None, "--c"),
    K: Optional[str] = typer.Option(None, "--K"),
    max_level: Optional[int] = typer.Option(None, "--maxN", help="Deepest measure level"),
    family: Optional[str] = typer.Option(None, "--family", help="Oracle integrand families"),
    skip_policy: Optional[str] = typer.Option(None, "--skip-policy", help="include,exclude"),
    parallelism: Optional[int] = typer.Option(None, "--parallelism", help="Worker threads"),
    output_format: Optional[str] = typer.Option(None, "--format", help="json or csv"),
    out: Optional[Path] = typer.Option(None, "--out", help="Report path"),
):
    """Run claim sweeps and write the report"""
    config: Config = ctx.obj
    if parallelism is not None:
        config.parallelism = parallelism
    if output_format is not None:
        config.output_format = output_format
    try:
        config.validate()
    except ValueError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=2) from e

    try:
        sweep = Sweep.of(
            p=parse_int_list(p), q=parse_str_list(q), m=parse_int_list(m),
            h=parse_int_list(h), k=parse_int_list(k), N=parse_int_list(N_values),
            a=parse_int_list(a), d=parse_int_list(d), n=parse_int_list(n_values),
            x=parse_int_list(x), c=parse_int_list(c), K=parse_int_list(K),
            maxN=[max_level] if max_level else [], family=parse_str_list(family),
            skip_policy=parse_str_list(skip_policy),
        )
        if claim == "all":
            reports = verify_all(sweep, config)
        else:
            reports = [verify_claim(claim, sweep, config)]
    except QDedekindException as e:
        _fail(e)
    except ValueError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=2) from e

    target = out or config.output_dir / f"{claim}.{config.output_format}"
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(render_reports(reports, config.output_format), encoding="utf-8")

    for report in reports:
        summary = report.summary
        typer.echo(f"{report.claim}: {report.verdict} "
                   f"(pass={summary['pass']}, fail={summary['fail']}, "
                   f"skipped={summary['skipped']})")
        if report.verdict != "holds":
            for inst in report.discrepancies():
                params = ", ".join(f"{key}={format_value(v)}" for key, v in inst.params.items())
                typer.echo(f"  {params}: {format_value(inst.lhs)} != {format_value(inst.rhs)}"
                           f" [{inst.verdict}]")
    typer.echo(f"Report written to {target}")
    raise typer.Exit(code=0 if all(r.ok for r in reports) else 1)


def _integrand(family: str, m: int, a: int, N: int, q: QParam) -> Integrand:
    if family == "constant":
        return Integrand.constant()
    if family == "carlitz":
        return Integrand.carlitz(m, q)
    if family == "modified":
        return Integrand.modified(m, q)
    if family == "shifted":
        return Integrand.shifted(m, a, q, N)
    raise PreconditionError("family", f"choose from {', '.join(FAMILIES)}")


@app.command()
def oracle(
    ctx: typer.Context,
    family: str = typer.Option("modified", "--family", help=", ".join(FAMILIES)),
    m: int = typer.Option(1, "-m"),
    a: int = typer.Option(1, "-a", help="Shift numerator for the shifted family"),
    N: int = typer.Option(1, "-N", help="Shift denominator for the shifted family"),
    p: Optional[int] = typer.Option(None, "-p"),
    q: str = typer.Option("4", "-q"),
    max_level: int = typer.Option(6, "--maxN", help="Deepest level"),
    parallelism: int = typer.Option(1, "--parallelism"),
    out: Optional[Path] = typer.Option(None, "--out", help="Also write the CSV here"),
):
    """Print the Riemann-sum convergence trace as CSV"""
    config: Config = ctx.obj
    p = p or config.default_prime
    try:
        padic = PAdicContext(p, config.precision)
        qp = QParam.padic(resolve_q(q, p), padic)
        integrand = _integrand(family, m, a, N, qp)
        trace = convergence_trace(integrand, max_level, padic, qp, parallelism, config.max_points)
    except QDedekindException as e:
        _fail(e)

    text = trace.to_csv()
    typer.echo(text, nl=False)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")


def run() -> None:
    """Console-script entry point"""
    app()


if __name__ == "__main__":
    run()
