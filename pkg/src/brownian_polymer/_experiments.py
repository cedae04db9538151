"""Turning an experiment configuration into a delimited results table, one row per evaluation or estimate."""

import csv
import io
import itertools
import logging
import math
import sys
from collections.abc import Iterable, Iterator
from pathlib import Path
from typing import Any, Optional, Union

import click
import numpy as np

from ._configuration import load_config
from ._formatting import format_results, print_to_console, save_report
from ._types import Command, ExperimentConfig, Importance, OutputFormat, Verdict
from ._validation import validate_suite
from .models import (
    conjugate_f_minus_one_point,
    default_dt,
    dufresne_target,
    estimate_free_energy,
    estimate_queue,
    free_energy,
    gamma_shape,
    gue_vs_lpp,
    inv_trigamma,
    kac_concentration,
    lpp_limit_estimate,
    moment_identity_check,
    rate_lambda,
    rate_lambda_m,
    rate_lambda_star,
    resolve_horizon,
    sample_lattice,
)
from .models._queue import DEFAULT_QUEUE_DT
from .models._rmt import DEFAULT_GUE_DT
from .utils import parse_range

logger = logging.getLogger(__name__)

SUCCESS_EXIT_CODE = 0
USAGE_ERROR_EXIT_CODE = 1
VALIDATION_FAILURE_EXIT_CODE = 2

QUANTITIES: dict[Command, tuple[str, ...]] = {
    Command.FREE_ENERGY: ("f", "gamma", "lambda", "lambda-star", "lambda-m", "f-conjugate"),
    Command.POLYMER: ("free-energy", "moment-identity", "kac"),
    Command.LPP: ("lpp",),
    Command.QUEUE: ("queue",),
    Command.GUE: ("gue",),
    Command.VALIDATE: ("validate",),
}

COLUMNS: dict[tuple[Command, str], tuple[str, ...]] = {
    (Command.FREE_ENERGY, "f"): ("beta", "value", "maximizer_a", "branch"),
    (Command.POLYMER, "free-energy"): (
        "beta",
        "n",
        "dt",
        "replicas",
        "seed",
        "mean",
        "stderr",
        "target_f",
        "abs_err",
    ),
    (Command.POLYMER, "moment-identity"): ("beta", "n", "dt", "mc_samples", "seed", "lhs", "rhs", "lhs_stderr"),
    (Command.POLYMER, "kac"): (
        "m",
        "n",
        "dt",
        "replicas",
        "seed",
        "log_xi",
        "log_xi_stderr",
        "argmax_x",
        "argmax_stderr",
        "mass_window",
        "target_log_xi",
        "target_argmax",
    ),
    (Command.LPP, "lpp"): ("n", "dt", "replicas", "seed", "mean", "stderr"),
    (Command.QUEUE, "queue"): ("m", "n", "horizon", "dt", "samples", "seed", "mean_r", "target", "stderr"),
    (Command.GUE, "gue"): ("n", "replicas", "seed", "gue_mean", "gue_stderr", "lpp_mean", "lpp_stderr", "verdict"),
    (Command.VALIDATE, "validate"): ("suite", "check", "verdict", "detail"),
}
RATE_COLUMNS = ("quantity", "m", "arg", "value", "optimizer")


def _as_values(value: Union[None, str, float, int, Iterable], name: str) -> tuple[float, ...]:
    if value is None:
        return ()
    if isinstance(value, (str, int, float)):
        try:
            return parse_range(str(value))
        except ValueError as exception:
            raise ValueError(f"Invalid value for '--{name}': {exception}") from exception
    return tuple(float(item) for item in value)


def _as_integers(value: Union[None, str, int, Iterable], name: str) -> tuple[int, ...]:
    values = _as_values(value, name)
    if any(item != math.floor(item) or item < 1 for item in values):
        raise ValueError(f"Invalid value for '--{name}': expected positive integers, received {values}.")
    return tuple(int(item) for item in values)


def _as_list(value: Union[None, str, list[str]]) -> Optional[list[str]]:
    if value is None or isinstance(value, list):
        return value
    return [item for item in value.split(",") if item]


def _as_check_config(value: Union[None, str, Path, dict]) -> Optional[dict]:
    if value is None or isinstance(value, dict):
        return value
    return load_config(filepath_or_keyword=value)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def build_experiment_config(command: Union[str, Command], options: dict[str, Any]) -> ExperimentConfig:
    """
    Normalize merged file and flag options into an ExperimentConfig, rejecting out-of-range values.

    Ranges may be given as scalars, 'min:max:step' triples, comma-separated lists, or already-expanded sequences.
    Error messages name the offending flag and its valid range.
    """
    command = Command(command)
    unknown = set(options) - set(ExperimentConfig.__dataclass_fields__) - {"command", "config"}
    _require(not unknown, f"Unknown option(s): {', '.join(sorted(unknown))}.")

    quantity = options.get("quantity") or QUANTITIES[command][0]
    _require(
        quantity in QUANTITIES[command],
        f"Invalid value for '--quantity': '{quantity}' is not one of {', '.join(QUANTITIES[command])}.",
    )
    config = ExperimentConfig(
        command=command,
        beta=_as_values(options.get("beta"), "beta"),
        m=_as_values(options.get("m"), "m"),
        x=_as_values(options.get("x"), "x"),
        n=_as_integers(options.get("n"), "n"),
        dt=options.get("dt"),
        replicas=int(options.get("replicas") or 100),
        horizon=options.get("horizon"),
        mc_samples=int(options.get("mc_samples") or 100_000),
        seed=int(options["seed"]) if options.get("seed") is not None else ExperimentConfig.seed,
        out=Path(options["out"]) if options.get("out") else None,
        format=OutputFormat(options.get("format") or "csv"),
        quantity=quantity,
        suite=options.get("suite") or "all",
        check_config=_as_check_config(options.get("check_config")),
        ignore=_as_list(options.get("ignore")),
        select=_as_list(options.get("select")),
        threshold=Importance[options.get("threshold") or "TREND"],
        n_jobs=int(options["n_jobs"]) if options.get("n_jobs") is not None else None,
        progress_bar=bool(options.get("progress_bar", False)),
    )

    _require(
        config.dt is None or config.dt > 0, f"Invalid value for '--dt': must be greater than 0, received {config.dt}."
    )
    _require(config.replicas >= 2, f"Invalid value for '--replicas': must be at least 2, received {config.replicas}.")
    _require(
        config.mc_samples >= 2, f"Invalid value for '--mc-samples': must be at least 2, received {config.mc_samples}."
    )
    _require(
        config.horizon is None or config.horizon > 0,
        f"Invalid value for '--horizon': must be greater than 0, received {config.horizon}.",
    )
    _require(0 <= config.seed < 2**64, f"Invalid value for '--seed': must lie in [0, 2**64), received {config.seed}.")
    _require(
        config.ignore is None or config.select is None, "Options '--ignore' and '--select' cannot both be used."
    )
    _require_parameters(config)
    return config


def _require_parameters(config: ExperimentConfig) -> None:
    if config.command is Command.FREE_ENERGY:
        if config.quantity == "f":
            _require(bool(config.beta), "The 'free-energy' command needs '--beta'.")
        else:
            _require(bool(config.x), f"The '{config.quantity}' quantity needs '--x'.")
        if config.quantity == "lambda-m":
            _require(bool(config.m), "The 'lambda-m' quantity needs '--m' (m > 0).")
    elif config.command is Command.POLYMER:
        _require(bool(config.n), "The 'polymer' command needs '--n' (n >= 1).")
        if config.quantity == "kac":
            _require(bool(config.m), "The 'kac' quantity needs '--m' (m > 0).")
        else:
            _require(bool(config.beta), "The 'polymer' command needs '--beta'.")
    elif config.command in (Command.LPP, Command.GUE):
        _require(bool(config.n), f"The '{config.command.value}' command needs '--n' (n >= 1).")
    elif config.command is Command.QUEUE:
        _require(bool(config.m), "The 'queue' command needs '--m' (m > 0).")
        _require(all(m > 0 for m in config.m), f"Invalid value for '--m': must be greater than 0, received {config.m}.")


def _format_value(value: Any) -> str:
    """Shortest round-trip text for floats, so equal inputs write byte-identical tables."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "PASS" if value else "FAIL"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def _free_energy_rows(config: ExperimentConfig) -> Iterator[tuple]:
    if config.quantity == "f":
        for beta in config.beta:
            point = free_energy(beta)
            yield beta, point.value, point.maximizer_a, point.branch.value
        return
    for x in config.x:
        if config.quantity == "gamma":
            yield "gamma", None, x, gamma_shape(x), inv_trigamma(-x)
        elif config.quantity == "lambda":
            yield "lambda", None, x, rate_lambda(x), None
        elif config.quantity == "lambda-star":
            point = rate_lambda_star(x)
            yield "lambda-star", None, x, point.value, point.optimizer_theta
        elif config.quantity == "f-conjugate":
            point = conjugate_f_minus_one_point(x)
            yield "f-conjugate", None, x, point.value, point.optimizer_theta
        else:
            for m in config.m:
                yield "lambda-m", m, x, rate_lambda_m(m, x), None


def _polymer_rows(config: ExperimentConfig) -> Iterator[tuple]:
    if config.quantity == "kac":
        dt = config.dt or default_dt(max(config.n))
        for m in config.m:
            target_log_xi, target_spread = dufresne_target(m)
            for diagnostic in kac_concentration(
                m,
                config.n,
                dt=dt,
                replicas=config.replicas,
                seed=config.seed,
                n_jobs=config.n_jobs,
                progress_bar=config.progress_bar,
            ):
                yield (
                    m,
                    diagnostic.n,
                    dt,
                    diagnostic.replicas,
                    config.seed,
                    diagnostic.log_xi,
                    diagnostic.log_xi_stderr,
                    diagnostic.argmax_x,
                    diagnostic.argmax_stderr,
                    diagnostic.mass_window,
                    target_log_xi,
                    -target_spread,
                )
        return
    for beta, n in itertools.product(config.beta, config.n):
        if config.quantity == "moment-identity":
            dt = config.dt or default_dt(n)
            lat = sample_lattice(n_paths=n, t_min=0.0, t_max=float(n), dt=dt, seed=config.seed)
            result = moment_identity_check(lat, beta, n, mc_samples=config.mc_samples, seed=config.seed)
            yield beta, n, dt, result.mc_samples, config.seed, result.lhs, result.rhs, result.lhs_stderr
            continue
        record = estimate_free_energy(
            beta,
            n,
            dt=config.dt,
            replicas=config.replicas,
            seed=config.seed,
            n_jobs=config.n_jobs,
            progress_bar=config.progress_bar,
        )
        target = free_energy(beta).value
        error = abs(record.mean - target)
        yield beta, n, record.dt, record.replicas, config.seed, record.mean, record.stderr, target, error


def _lpp_rows(config: ExperimentConfig) -> Iterator[tuple]:
    for n in config.n:
        record = lpp_limit_estimate(
            n,
            dt=config.dt,
            replicas=config.replicas,
            seed=config.seed,
            n_jobs=config.n_jobs,
            progress_bar=config.progress_bar,
        )
        yield n, record.dt, record.replicas, config.seed, record.mean, record.stderr


def _queue_rows(config: ExperimentConfig) -> Iterator[tuple]:
    dt = config.dt or DEFAULT_QUEUE_DT
    for m, n in itertools.product(config.m, config.n or (1,)):
        horizon = resolve_horizon(m, n, config.horizon, dt)
        record = estimate_queue(
            m,
            n,
            horizon=horizon,
            dt=dt,
            samples=config.replicas,
            seed=config.seed,
            n_jobs=config.n_jobs,
            progress_bar=config.progress_bar,
        )
        target, _ = dufresne_target(m)
        yield m, n, horizon, dt, record.replicas, config.seed, record.mean, target, record.stderr


def _gue_rows(config: ExperimentConfig) -> Iterator[tuple]:
    for n in config.n:
        comparison = gue_vs_lpp(
            n,
            replicas=config.replicas,
            dt=config.dt or DEFAULT_GUE_DT,
            seed=config.seed,
            n_jobs=config.n_jobs,
            progress_bar=config.progress_bar,
        )
        yield (
            n,
            comparison.replicas,
            config.seed,
            comparison.gue_mean,
            comparison.gue_stderr,
            comparison.lpp_mean,
            comparison.lpp_stderr,
            comparison.verdict,
        )


ROW_BUILDERS = {
    Command.FREE_ENERGY: _free_energy_rows,
    Command.POLYMER: _polymer_rows,
    Command.LPP: _lpp_rows,
    Command.QUEUE: _queue_rows,
    Command.GUE: _gue_rows,
}


def _summary(columns: tuple[str, ...], row: tuple) -> str:
    return " ".join(f"{column}={_format_value(value)}" for column, value in zip(columns, row) if value is not None)


def _write_table(columns: tuple[str, ...], rows: list[tuple], config: ExperimentConfig) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter=config.format.delimiter, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows([[_format_value(value) for value in row] for row in rows])
    if config.out is None:
        sys.stdout.write(buffer.getvalue())
        return
    config.out.parent.mkdir(parents=True, exist_ok=True)
    with open(file=config.out, mode="w", newline="") as file:
        file.write(buffer.getvalue())
    logger.info("Wrote %d row(s) to %s.", len(rows), config.out)


def _validate(config: ExperimentConfig) -> int:
    results = list(
        validate_suite(
            suite=config.suite,
            config=config.check_config,
            ignore=config.ignore,
            select=config.select,
            importance_threshold=config.threshold,
            seed=config.seed,
            n_jobs=config.n_jobs,
            progress_bar=config.progress_bar,
        )
    )
    formatted_results = format_results(results=results)
    print_to_console(formatted_results=formatted_results)
    if config.out is not None:
        rows = [(result.suite, result.check_function_name, result.verdict.name, result.detail) for result in results]
        _write_table(COLUMNS[(Command.VALIDATE, "validate")], rows, config)
        save_report(config.out.with_suffix(".report.txt"), formatted_results=formatted_results, overwrite=True)

    failed = [
        result for result in results if result.verdict is Verdict.FAIL or result.importance is Importance.ERROR
    ]
    logger.info("%d of %d check(s) failed.", len(failed), len(results))
    return VALIDATION_FAILURE_EXIT_CODE if failed else SUCCESS_EXIT_CODE


def run_experiment(config: ExperimentConfig) -> int:
    """
    Execute one experiment and return the process exit status.

    Non-validate commands write a header-bearing table (to ``config.out`` or standard output) and echo a one-line
    summary per row to standard error; the status is 0. The validate command prints the sectioned report, writes
    suite,check,verdict,detail rows when an output path is given, and returns 2 if any check failed.
    """
    logger.info("Running '%s' (quantity '%s') with seed %d.", config.command.value, config.quantity, config.seed)
    if config.command is Command.VALIDATE:
        return _validate(config)

    columns = COLUMNS.get((config.command, config.quantity), RATE_COLUMNS)
    rows = []
    for row in ROW_BUILDERS[config.command](config):
        click.echo(_summary(columns, row), err=True)
        rows.append(row)
    _write_table(columns, rows, config)
    return SUCCESS_EXIT_CODE
