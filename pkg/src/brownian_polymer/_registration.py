"""The check registry and the decorator that grades, files and wraps each check."""

from collections.abc import Callable
from functools import wraps
from typing import Optional

from ._types import CheckResult, Importance, ValidationContext, Verdict

available_checks: list[Callable] = list()

SUITES = ("specialfn", "freeenergy", "environment", "polymer", "queue", "rmt")


def register_check(importance: Importance, suite: str) -> Callable:
    """
    Register a check under a suite and an importance.

    The decorated function receives a ValidationContext and returns a CheckResult; the wrapper fills in the
    name, suite and importance of that result.

    Parameters
    ----------
    importance : Importance
        One of:
            EXACT
                - closed forms, functional equations, and deterministic oracles on a fixed lattice
            STATISTICAL
                - Monte Carlo estimates compared within standard-error windows
            TREND
                - convergence behavior along a growing parameter
    suite : str
        The validation suite the check belongs to; one of the numerical modules.
    """

    def _register(check_function: Callable) -> Callable:
        if importance not in [Importance.EXACT, Importance.STATISTICAL, Importance.TREND]:
            raise ValueError(
                f"Indicated importance ({importance}) of custom check ({check_function.__name__}) is not a valid "
                "importance level! Please choose one of Importance.EXACT, Importance.STATISTICAL, "
                "or Importance.TREND."
            )
        if suite not in SUITES:
            raise ValueError(
                f"Indicated suite ({suite}) of custom check ({check_function.__name__}) is not a valid suite! "
                f"Please choose one of {', '.join(SUITES)}."
            )
        check_function.importance = importance  # type: ignore
        check_function.suite = suite  # type: ignore

        @wraps(check_function)
        def checked(context: Optional[ValidationContext] = None) -> CheckResult:
            output = check_function(context or ValidationContext())
            return _stamp_result(check_function=check_function, result=output)

        available_checks.append(checked)

        return checked

    return _register


def _stamp_result(check_function: Callable, result: CheckResult) -> CheckResult:
    if not isinstance(result, CheckResult):
        raise TypeError(
            f"Check function ({check_function.__name__}) returned {type(result).__name__}; expected a CheckResult."
        )
    if not isinstance(result.verdict, Verdict):
        raise ValueError(
            f"Indicated verdict ({result.verdict}) of custom check ({check_function.__name__}) is not a valid "
            "verdict! Please choose one of Verdict.PASS or Verdict.FAIL."
        )
    result.importance = check_function.importance  # type: ignore
    result.check_function_name = check_function.__name__
    result.suite = check_function.suite  # type: ignore

    return result
