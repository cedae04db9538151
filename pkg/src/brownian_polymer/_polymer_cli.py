"""Command-line front end for the polymer, queue and random-matrix experiments and the validation suites."""

import importlib.metadata
import logging
import sys
from collections.abc import Callable
from typing import Any, Optional

import click
import jsonschema

from ._configuration import load_experiment_config
from ._experiments import USAGE_ERROR_EXIT_CODE, build_experiment_config, run_experiment
from ._types import Command
from .utils import parse_range


class RangeParamType(click.ParamType):
    """A scalar, a comma-separated list, or an inclusive 'min:max:step' triple; kept as text until merged."""

    name = "range"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> str:
        try:
            parse_range(str(value))
        except ValueError as exception:
            self.fail(f"{exception} Use a number, 'a,b,c', or 'min:max:step'.", param, ctx)
        return str(value)


RANGE = RangeParamType()


class _ExitCodeGroup(click.Group):
    """Usage and configuration errors exit with status 1; status 2 is reserved for failed validation."""

    def main(self, *args: Any, **kwargs: Any) -> None:
        kwargs["standalone_mode"] = False
        try:
            exit_code = super().main(*args, **kwargs)
        except click.ClickException as exception:
            exception.show()
            sys.exit(USAGE_ERROR_EXIT_CODE)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(USAGE_ERROR_EXIT_CODE)
        sys.exit(exit_code or 0)


_OPTIONS: dict[str, Callable] = dict(
    beta=click.option("--beta", type=RANGE, help="Inverse temperature: a scalar or 'min:max:step'."),
    m=click.option("--m", type=RANGE, help="Service rate m > 0: a scalar or 'min:max:step'."),
    x=click.option("--x", type=RANGE, help="Argument of the rate functions: a scalar or 'min:max:step'."),
    n=click.option("--n", type=RANGE, help="Number of Brownian paths (n >= 1): an integer or 'min:max:step'."),
    dt=click.option("--dt", type=float, help="Grid step (> 0); each command has a documented default."),
    replicas=click.option("--replicas", type=int, help="Independent environments per estimate (>= 2)."),
    horizon=click.option("--horizon", type=float, help="Truncation horizon of the queue integrals (>= 20/m)."),
    mc_samples=click.option("--mc-samples", type=int, help="Monte Carlo samples for the moment identity (>= 2)."),
    quantity=click.option("--quantity", type=str, help="Which quantity to tabulate; see the command help."),
    suite=click.option(
        "--suite",
        type=click.Choice(["all", "specialfn", "freeenergy", "environment", "polymer", "queue", "rmt"]),
        help="Validation suite to run. Defaults to 'all'.",
    ),
    check_config=click.option(
        "--check-config", type=str, help="Name of internal check config ('quick') or path to a custom YAML file."
    ),
    ignore=click.option("--ignore", help="Comma-separated names of checks to skip."),
    select=click.option("--select", help="Comma-separated names of checks to run."),
    threshold=click.option(
        "--threshold",
        type=click.Choice(["EXACT", "STATISTICAL", "TREND"]),
        help="Ignores checks with an assigned importance below this threshold. Defaults to TREND.",
    ),
)
_COMMON_OPTIONS = (
    click.option("--config", type=click.Path(exists=True, dir_okay=False), help="YAML file of option: value pairs."),
    click.option("--seed", type=int, help="Base seed in [0, 2**64). Defaults to 42."),
    click.option("--out", type=click.Path(dir_okay=False, writable=True), help="Output table; stdout if omitted."),
    click.option("--format", type=click.Choice(["csv", "tsv"]), help="Table delimiter. Defaults to csv."),
    click.option(
        "--n-jobs",
        type=int,
        help="Worker processes; 0 uses every CPU. Defaults to POLYMER_THREADS or 1, and POLYMER_THREADS caps it.",
    ),
    click.option("--progress-bar/--no-progress-bar", default=None, help="Display progress over replicas and checks."),
)


def _with_options(*names: str) -> Callable:
    def decorate(function: Callable) -> Callable:
        for option in reversed([_OPTIONS[name] for name in names] + list(_COMMON_OPTIONS)):
            function = option(function)
        return function

    return decorate


def _run(command: Command, options: dict[str, Any]) -> int:
    """Merge the optional config file with the flags (flags win) and run the experiment."""
    config_path = options.pop("config", None)
    try:
        file_options = load_experiment_config(config_path) if config_path is not None else dict()
        file_command = file_options.pop("command", command.value)
        if file_command != command.value:
            raise ValueError(f"The config file '{config_path}' is for '{file_command}', not '{command.value}'.")
        merged = {**file_options, **{key: value for key, value in options.items() if value is not None}}
        return run_experiment(build_experiment_config(command, merged))
    except (ValueError, jsonschema.ValidationError, OSError) as exception:
        message = exception.message if isinstance(exception, jsonschema.ValidationError) else str(exception)
        raise click.UsageError(message) from exception


@click.group(cls=_ExitCodeGroup)
@click.option("-v", "--verbose", count=True, help="Log progress to stderr; repeat for debug output.")
@click.version_option(version=importlib.metadata.version(distribution_name="brownian-polymer"))
def _polymer_cli(verbose: int = 0) -> None:
    """
    Simulate directed polymers, last passage and Brownian queues in a Brownian environment.

    Example Usage
    -------------
    brownian-polymer free-energy --beta 0:5:0.5

    brownian-polymer polymer --beta 1 --n 64 --dt 0.025 --replicas 100 --seed 42 --out polymer.csv

    brownian-polymer validate --suite specialfn
    """
    logging.basicConfig(
        level=logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
        stream=sys.stderr,
    )


@_polymer_cli.command("free-energy")
@_with_options("beta", "m", "x", "quantity")
def _free_energy(**options: Any) -> int:
    """
    Tabulate the free energy f(beta) or a related closed form.

    --quantity f (default) uses --beta; gamma, lambda, lambda-star and f-conjugate use --x; lambda-m uses --m and --x.
    """
    return _run(Command.FREE_ENERGY, options)


@_polymer_cli.command("polymer")
@_with_options("beta", "m", "n", "dt", "replicas", "mc_samples", "quantity")
def _polymer(**options: Any) -> int:
    """
    Estimate (1/n) log Z_n(beta) over replicas and compare with f(beta).

    --quantity moment-identity compares both sides of the order-statistics identity on one lattice; --quantity kac
    reports the replica-averaged grand-canonical diagnostics at each --m along --n.
    """
    return _run(Command.POLYMER, options)


@_polymer_cli.command("lpp")
@_with_options("n", "dt", "replicas")
def _lpp(**options: Any) -> int:
    """Estimate the scaled last-passage time (1/n) L_n(n) over replicas."""
    return _run(Command.LPP, options)


@_polymer_cli.command("queue")
@_with_options("m", "n", "dt", "replicas", "horizon")
def _queue(**options: Any) -> int:
    """Estimate the stage-averaged stationary queue length of an n-stage tandem; the target is -digamma(m)."""
    return _run(Command.QUEUE, options)


@_polymer_cli.command("gue")
@_with_options("n", "dt", "replicas")
def _gue(**options: Any) -> int:
    """Compare the mean largest GUE eigenvalue with the mean grid last-passage time L_n(1)."""
    return _run(Command.GUE, options)


@_polymer_cli.command("validate")
@_with_options("suite", "check_config", "ignore", "select", "threshold")
def _validate(**options: Any) -> int:
    """Run the validation suites; exits with status 2 if any check fails."""
    return _run(Command.VALIDATE, options)
