"""Primary functions for running the validation suites over the numerical models."""

import logging
import traceback
from collections.abc import Iterable
from typing import Optional, Type, Union

from tqdm import tqdm

from ._configuration import configure_checks
from ._registration import SUITES, available_checks
from ._types import DEFAULT_SEED, CheckResult, Importance, ValidationContext, Verdict

logger = logging.getLogger(__name__)


def validate_suite(
    suite: str = "all",
    config: Optional[dict] = None,
    ignore: Optional[list[str]] = None,
    select: Optional[list[str]] = None,
    importance_threshold: Union[str, Importance] = Importance.TREND,
    seed: int = DEFAULT_SEED,
    n_jobs: Optional[int] = None,
    progress_bar: bool = True,
    progress_bar_class: Type[tqdm] = tqdm,
    progress_bar_options: Optional[dict] = None,
) -> Iterable[CheckResult]:
    """
    Run every registered check of a suite and yield one result per check.

    Parameters
    ----------
    suite : str
        One of 'all', 'specialfn', 'freeenergy', 'environment', 'polymer', 'queue', or 'rmt'.
    config : dict, optional
        A check configuration (see ``load_config``): importance overrides per check name, and a SKIP list.
        ``load_config("quick")`` returns the profile that skips the long Monte Carlo checks.
    ignore : list of str, optional
        Check names left out of the run.
    select : list of str, optional
        The only check names to run.
    importance_threshold : str or Importance, optional
        Checks graded below this level are not run. From highest to lowest:

            EXACT
                - closed forms and deterministic oracles
            STATISTICAL
                - standard-error windows over Monte Carlo samples
            TREND
                - convergence behavior

        The default, TREND, runs everything.
    seed : int
        Base seed handed to every check; the same seed reproduces every verdict.
    n_jobs : int, optional
        Worker processes for the replica-parallel checks, resolved by ``utils.get_worker_count``; the
        POLYMER_THREADS environment variable supplies the default and caps any explicit value.
    progress_bar : bool, optional
        Show progress over the checks.
    progress_bar_class : tqdm subclass, optional
        Used to draw the progress bar when ``progress_bar`` is set.
    progress_bar_options : dict, optional
        Keyword arguments for ``progress_bar_class``.
    """
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"Unknown suite '{suite}'; choose 'all' or one of {', '.join(SUITES)}.")
    if isinstance(importance_threshold, str):
        importance_threshold = Importance[importance_threshold]

    checks = configure_checks(
        [check for check in available_checks if suite == "all" or check.suite == suite],
        config=config,
        ignore=ignore,
        select=select,
        importance_threshold=importance_threshold,
    )
    logger.info("Running %d check(s) from suite '%s' with seed %d.", len(checks), suite, seed)

    yield from run_checks(
        checks=checks,
        context=ValidationContext(seed=seed, n_jobs=n_jobs),
        progress_bar_class=progress_bar_class if progress_bar else None,
        progress_bar_options=progress_bar_options or dict(position=0, leave=False, desc=f"Validating {suite}"),
    )


def _error_result(check_function, exception: Exception) -> CheckResult:
    return CheckResult(
        detail=traceback.format_exc(),
        verdict=Verdict.FAIL,
        importance=Importance.ERROR,
        check_function_name=f"{check_function.__name__} raised {type(exception).__name__}: {exception}",
        suite=getattr(check_function, "suite", None),
    )


def run_checks(
    checks: list,
    context: Optional[ValidationContext] = None,
    progress_bar_class: Optional[Type[tqdm]] = None,
    progress_bar_options: Optional[dict] = None,
) -> Iterable[CheckResult]:
    """
    Run check functions one after another against a shared ValidationContext.

    A check that raises yields an ERROR result holding the traceback, and the run continues. Every other result
    takes the importance of the (possibly reconfigured) check that produced it.

    Parameters
    ----------
    checks : list of check functions
        Registered checks, or configured copies of them.
    context : ValidationContext, optional
        Seed and worker count; defaults to the documented seed on one worker.
    progress_bar_class : tqdm subclass, optional
        No progress is shown unless given.
    progress_bar_options : dict, optional
        Keyword arguments for ``progress_bar_class``.
    """
    context = context or ValidationContext()
    if progress_bar_class is not None:
        checks = progress_bar_class(iterable=checks, total=len(checks), **(progress_bar_options or dict()))

    for check in checks:
        logger.debug("Running %s.", check.__name__)
        try:
            result = check(context)
        except Exception as exception:
            logger.warning("Check %s raised %s.", check.__name__, type(exception).__name__)
            result = _error_result(check, exception)
        if result.importance is not Importance.ERROR:
            result.importance = check.importance
        yield result
