"""Command line interface."""

from __future__ import annotations

import csv
import sys
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

import click
import pydantic

from .cache import cache_file_name, cached_expand
from .diagrams import i4_approx, i6_approx, percent_error
from .disk import m_gamma2_closed, m_moments
from .error import EngineError, ParseError, PlasmaError, VerificationError
from .expansion import brute_force_expand
from .extrapolation import windowed_fits
from .models import Basis, OutputFormat, PlasmaParams, RunConfig
from .numeric import to_fraction
from .parser import parse_n_list, parse_n_range
from .partitions import DEFAULT_MEMBER_LIMIT
from .perturbation import DEFAULT_PARTICLE_LIMIT, m_tilde
from .report import render, write_records
from .sphere import i_hat_many
from .verify import oracle_applicable, run_suite

logger = logging.getLogger(__name__)

EXIT_USAGE = 64
EXIT_IO = 74
EXIT_SOFTWARE = 70

EXPAND_COLUMNS = ("N", "gamma", "kind", "count", "checksum", "oracle", "cache_file")
MOMENT_COLUMNS = ("N", "gamma", "n", "exact", "decimal", "fit_a", "fit_b", "fit_c", "fit_d")
DIAGRAM_COLUMNS = (
    "N",
    "gamma",
    "I4_exact",
    "I4_approx",
    "I4_error_pct",
    "I6_exact",
    "I6_approx",
    "I6_error_pct",
)
PERTURBATION_COLUMNS = ("N", "n", "m1", "m2", "m3", "slope", "M_gamma2")
FIT_COLUMNS = ("anchor_N", "basis", "a", "b", "c", "d", "residual")


def _parsed(parse: Callable[[str], list[int]]) -> Callable[..., list[int] | None]:
    def callback(ctx: click.Context, param: click.Parameter, value: str | None):
        if value is None:
            return None
        try:
            return parse(value)
        except ParseError as e:
            raise click.BadParameter(e.message) from e

    return callback


def _config(command: str, **kwargs: Any) -> RunConfig:
    values = {k: v for k, v in kwargs.items() if v is not None}
    try:
        return RunConfig(command=command, **values)
    except pydantic.ValidationError as e:
        raise click.UsageError(str(e)) from e


def n_range_option(default: str):
    return click.option(
        "--N",
        "--N-range",
        "n_range",
        default=default,
        show_default=True,
        callback=_parsed(parse_n_range),
        help="Particle numbers, e.g. '2..8' or '3,5,7'.",
    )


def gamma_option(fn):
    return click.option(
        "--gamma",
        type=int,
        default=4,
        show_default=True,
        help="Even coupling Gamma.",
    )(fn)


def n_list_option(default: str):
    return click.option(
        "--n-list",
        default=default,
        show_default=True,
        callback=_parsed(parse_n_list),
        help="Moment orders n, e.g. '2,3'.",
    )


def output_options(fn):
    fn = click.option(
        "--format",
        "output",
        type=click.Choice([f.value for f in OutputFormat]),
        default=OutputFormat.CSV.value,
        show_default=True,
        help="Output format.",
    )(fn)
    fn = click.option(
        "--out",
        type=click.Path(dir_okay=False, path_type=Path),
        default=None,
        help="Write to this file instead of stdout.",
    )(fn)
    return fn


def cache_options(fn):
    fn = click.option(
        "--cache-dir",
        type=click.Path(file_okay=False, path_type=Path),
        default=Path(".ocpm-cache"),
        envvar="PLASMA_CACHE_DIR",
        show_default=True,
        help="Directory of cached coefficient tables.",
    )(fn)
    fn = click.option(
        "--member-limit",
        type=int,
        default=DEFAULT_MEMBER_LIMIT,
        show_default=True,
        help="Largest admissible partition set to expand.",
    )(fn)
    return fn


@click.group()
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default="WARNING",
    show_default=True,
    help="Logging level (messages go to stderr).",
)
def cli(log_level: str):
    """Exact moments of the two-dimensional one-component plasma."""
    logging.basicConfig(
        level=log_level.upper(),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


@cli.command()
@n_range_option("2")
@gamma_option
@click.option(
    "--check-bruteforce",
    is_flag=True,
    help="Compare magnitudes with a brute-force expansion.",
)
@cache_options
@output_options
def expand(n_range, gamma, check_bruteforce, cache_dir, member_limit, output, out):
    """Compute (or load) coefficient tables."""
    config = _config(
        "expand",
        n_range=n_range,
        gamma=[gamma],
        cache_dir=cache_dir,
        member_limit=member_limit,
        output=output,
        out=out,
    )

    records = []
    failed = []
    for params in config.params():
        table, _ = cached_expand(params, config.cache_dir, config.member_limit)
        oracle = ""
        if check_bruteforce:
            if not oracle_applicable(params):
                logger.warning("%s: too large for the brute-force oracle", params.label)
            else:
                same = brute_force_expand(params).magnitudes() == table.magnitudes()
                oracle = "PASS" if same else "FAIL"
                if not same:
                    failed.append(params.label)
        records.append(
            dict(
                N=params.N,
                gamma=params.Gamma,
                kind=str(params.kind),
                count=len(table),
                checksum=table.checksum(),
                oracle=oracle,
                cache_file=str(config.cache_dir / cache_file_name(params)),
            )
        )

    write_records(records, EXPAND_COLUMNS, config.output, config.out)
    if failed:
        raise VerificationError(f"oracle mismatch for {', '.join(failed)}")


def _fit_columns(record: dict, fit) -> None:
    if fit is not None:
        for key, value in zip(("fit_a", "fit_b", "fit_c", "fit_d"), fit.coefficients):
            record[key] = value


def _moment_rows(config: RunConfig, compute, basis: Basis, fit: bool) -> list[dict]:
    by_n: dict[int, list[tuple[int, Fraction]]] = {n: [] for n in config.n_list}
    records = []
    for params in config.params():
        table, _ = cached_expand(params, config.cache_dir, config.member_limit)
        for moment in compute(table, config.n_list):
            by_n[moment.n].append((moment.N, moment.value))
            records.append(
                dict(
                    N=moment.N,
                    gamma=moment.Gamma,
                    n=moment.n,
                    exact=moment.value,
                    decimal=moment.decimal.text,
                )
            )

    if fit:
        fits = {n: windowed_fits(points, basis) for n, points in by_n.items()}
        for record in records:
            _fit_columns(record, fits[record["n"]].get(record["N"]))

    records.sort(key=lambda r: (r["n"], r["N"]))
    return records


@cli.command("sphere-moments")
@n_range_option("2..6")
@gamma_option
@n_list_option("2")
@click.option("--fit", is_flag=True, help="Add four-point 1/N fits.")
@cache_options
@output_options
def sphere_moments(n_range, gamma, n_list, fit, cache_dir, member_limit, output, out):
    """Pair-correlation moments on the sphere."""
    config = _config(
        "sphere-moments",
        n_range=n_range,
        gamma=[gamma],
        n_list=n_list,
        cache_dir=cache_dir,
        member_limit=member_limit,
        output=output,
        out=out,
    )
    records = _moment_rows(config, i_hat_many, Basis.INVERSE_POWERS, fit)
    write_records(records, MOMENT_COLUMNS, config.output, config.out)


@cli.command("disk-moments")
@n_range_option("2..6")
@gamma_option
@n_list_option("2")
@click.option("--fit", is_flag=True, help="Add four-point {N, 1, N^-1/2, 1/N} fits.")
@cache_options
@output_options
def disk_moments(n_range, gamma, n_list, fit, cache_dir, member_limit, output, out):
    """Density moments in the soft disk."""
    config = _config(
        "disk-moments",
        n_range=n_range,
        gamma=[gamma],
        n_list=n_list,
        cache_dir=cache_dir,
        member_limit=member_limit,
        output=output,
        out=out,
    )
    records = _moment_rows(config, m_moments, Basis.DISK_MEAN, fit)
    write_records(records, MOMENT_COLUMNS, config.output, config.out)


@cli.command()
@n_range_option("2..6")
@gamma_option
@click.option("--tol", type=float, default=1e-12, show_default=True, help="Series tolerance.")
@click.option(
    "--exact/--no-exact",
    default=True,
    show_default=True,
    help="Also compute exact moments from coefficient tables.",
)
@cache_options
@output_options
def diagrams(n_range, gamma, tol, exact, cache_dir, member_limit, output, out):
    """Diagrammatic approximations of the fourth and sixth moments."""
    config = _config(
        "diagrams",
        n_range=n_range,
        gamma=[gamma],
        tolerance=tol,
        cache_dir=cache_dir,
        member_limit=member_limit,
        output=output,
        out=out,
    )

    records = []
    for params in config.params():
        N, Gamma = params.N, params.Gamma
        record: dict[str, Any] = dict(
            N=N,
            gamma=Gamma,
            I4_approx=i4_approx(N, Gamma, config.tolerance),
            I6_approx=i6_approx(N, Gamma, config.tolerance),
        )
        if exact:
            table, _ = cached_expand(params, config.cache_dir, config.member_limit)
            i4, i6 = (m.value for m in i_hat_many(table, [2, 3]))
            record.update(
                I4_exact=i4,
                I6_exact=i6,
                I4_error_pct=percent_error(i4, record["I4_approx"]),
                I6_error_pct=percent_error(i6, record["I6_approx"]),
            )
        records.append(record)

    write_records(records, DIAGRAM_COLUMNS, config.output, config.out)


@cli.command()
@n_range_option("1..8")
@n_list_option("1,2,3,4")
@click.option(
    "--particle-limit",
    type=click.IntRange(min=1),
    default=DEFAULT_PARTICLE_LIMIT,
    show_default=True,
    help="Largest N for the first-order sums.",
)
@output_options
def perturbation(n_range, n_list, particle_limit, output, out):
    """First-order correction of the disk moments around Gamma = 2."""
    config = _config(
        "perturbation", n_range=n_range, n_list=n_list, output=output, out=out
    )

    records = []
    for n in config.n_list:
        for N in config.n_range:
            mt = m_tilde(N, n, particle_limit=particle_limit)
            records.append(
                dict(
                    N=N,
                    n=n,
                    m1=mt.m1,
                    m2=mt.m2,
                    m3=mt.m3,
                    slope=-mt.total,
                    M_gamma2=m_gamma2_closed(N, n),
                )
            )
    write_records(records, PERTURBATION_COLUMNS, config.output, config.out)


@cli.command()
@click.option(
    "-i",
    "--input-file",
    required=True,
    type=click.Path(exists=True, file_okay=True, dir_okay=False, path_type=Path),
    help="CSV file with columns N,value.",
)
@click.option(
    "--basis",
    type=click.Choice([b.value for b in Basis]),
    default=Basis.INVERSE_POWERS.value,
    show_default=True,
    help="Expansion basis.",
)
@output_options
def fit(input_file, basis, output, out):
    """Four-point fits over consecutive rows of a data file."""
    config = _config("fit", output=output, out=out)
    with open(input_file, newline="") as fobj:
        try:
            points = [
                (int(row["N"]), to_fraction(row["value"])) for row in csv.DictReader(fobj)
            ]
        except (KeyError, ValueError) as e:
            raise click.BadParameter(f"{input_file}: {e}", param_hint="--input-file") from e

    seen: set[int] = set()
    for N, _ in points:
        if N < 1 or N in seen:
            raise click.BadParameter(
                f"{input_file}: N={N} is repeated or not positive",
                param_hint="--input-file",
            )
        seen.add(N)

    records = []
    for anchor, result in windowed_fits(points, Basis(basis)).items():
        a, b, c, d = result.coefficients
        records.append(
            dict(anchor_N=anchor, basis=basis, a=a, b=b, c=c, d=d, residual=result.residual)
        )
    write_records(records, FIT_COLUMNS, config.output, config.out)


@cli.command("verify")
@n_range_option("2..4")
@click.option(
    "--gamma",
    "gammas",
    type=int,
    multiple=True,
    default=(2, 4, 6, 8),
    show_default=True,
    help="Couplings to check (repeatable).",
)
@cache_options
def verify_command(n_range, gammas, cache_dir, member_limit):
    """Check every exact invariant on small tables."""
    config = _config(
        "verify",
        n_range=n_range,
        gamma=list(gammas),
        cache_dir=cache_dir,
        member_limit=member_limit,
    )
    checks = run_suite(
        config.n_range,
        config.gamma,
        config.cache_dir,
        config.member_limit,
        progress=lambda label: logger.info("checking %s", label),
    )
    click.echo(render("ocpm:verify_report", checks=checks))

    failed = [check.name for check in checks if not check.passed]
    if failed:
        raise VerificationError(f"{len(failed)} checks failed")


def run(args: list[str]) -> int:
    """Run the command line and map failures to exit codes."""
    try:
        ret = cli.main(args=args, prog_name="ocpm", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except click.FileError as e:
        e.show()
        return EXIT_IO
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except PlasmaError as e:
        click.echo(f"ocpm: {e}", err=True)
        return e.exit_code
    except OSError as e:
        click.echo(f"ocpm: {e}", err=True)
        return EXIT_IO
    except EngineError as e:
        logger.exception("internal error")
        click.echo(f"ocpm: internal error: {e}", err=True)
        return EXIT_SOFTWARE

    return ret if isinstance(ret, int) else 0


def main():
    sys.exit(run(sys.argv[1:]))
