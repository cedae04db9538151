"""Types shared by the check registry, the validation runner, and the experiment front end."""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

DEFAULT_SEED = 42


class Importance(Enum):
    """A definition of the valid importance levels for a given check function."""

    ERROR = 3
    EXACT = 2
    STATISTICAL = 1
    TREND = 0


class Verdict(Enum):
    """Outcome of a single check."""

    PASS = "PASS"
    FAIL = "FAIL"


@dataclass
class CheckResult:
    """
    The primary output to be returned by every check function.

    Parameters
    ----------
    detail : str
        Human-readable evidence for the verdict: the measured quantity, its target, and the tolerance used.
    verdict : Verdict
        Whether the invariant held.
    importance : Importance
        The Importance level specified by the decorator of the check function.
        EXACT checks compare against closed forms or deterministic oracles, STATISTICAL checks use
        standard-error windows over Monte Carlo samples, and TREND checks assert convergence behavior.
    check_function_name : str
        The name of the check function the decorator was applied to.
    suite : str
        The validation suite the check belongs to.
    """

    detail: str
    verdict: Verdict = Verdict.PASS
    importance: Importance = Importance.EXACT
    check_function_name: Optional[str] = None
    suite: Optional[str] = None

    def __repr__(self):
        """Representation for CheckResult objects according to black format."""
        return "CheckResult(\n" + ",\n".join([f"    {k}={v.__repr__()}" for k, v in self.__dict__.items()]) + "\n)"


@dataclass(frozen=True)
class ValidationContext:
    """Run-wide settings handed to every check function as its first argument."""

    seed: int = DEFAULT_SEED
    n_jobs: Optional[int] = None


class Command(Enum):
    """Subcommands of the experiment front end."""

    FREE_ENERGY = "free-energy"
    POLYMER = "polymer"
    LPP = "lpp"
    QUEUE = "queue"
    GUE = "gue"
    VALIDATE = "validate"


class OutputFormat(Enum):
    """Delimited text formats for experiment tables."""

    CSV = "csv"
    TSV = "tsv"

    @property
    def delimiter(self) -> str:
        return "," if self is OutputFormat.CSV else "\t"


@dataclass
class ExperimentConfig:
    """
    Declarative description of one experiment.

    Scalar-or-range parameters are stored as tuples of the values they expand to, so a row of output exists per
    element (or per combination for two-parameter commands).
    """

    command: Command
    beta: tuple[float, ...] = ()
    m: tuple[float, ...] = ()
    x: tuple[float, ...] = ()
    n: tuple[int, ...] = ()
    dt: Optional[float] = None
    replicas: int = 100
    horizon: Optional[float] = None
    mc_samples: int = 100_000
    seed: int = DEFAULT_SEED
    out: Optional[Path] = None
    format: OutputFormat = OutputFormat.CSV
    quantity: Optional[str] = None
    suite: str = "all"
    check_config: Optional[dict] = None
    ignore: Optional[list[str]] = None
    select: Optional[list[str]] = None
    threshold: Importance = Importance.TREND
    n_jobs: Optional[int] = None
    progress_bar: bool = False
