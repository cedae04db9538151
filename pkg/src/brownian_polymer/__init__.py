import importlib.metadata

from ._registration import available_checks, register_check
from ._types import CheckResult, Command, ExperimentConfig, Importance, ValidationContext, Verdict
from ._errors import ConvergenceError, DomainError, GridError, HorizonWarning, InsufficientPathsError, WindowMissError
from ._configuration import load_config, validate_config, configure_checks, load_experiment_config
from ._validation import validate_suite, run_checks
from ._formatting import (
    format_results,
    print_to_console,
    save_report,
    ResultFormatter,
    FormatterOptions,
    ValidationOutputJSONEncoder,
)
from ._organization import organize_results
from ._experiments import build_experiment_config, run_experiment
from .checks import *  # These need to be imported to trigger registration with 'available_checks', but are not exposed

default_check_registry = {check.__name__: check for check in available_checks}

__version__ = importlib.metadata.version(distribution_name="brownian-polymer")

# Note: this is not exposed at this outer level, but is used here to trigger the automatic submodule import
# (otherwise someone would have to import brownian_polymer.testing explicitly)
from .testing import check_slow_tests_enabled  # noqa: F401

__all__ = [
    "available_checks",
    "default_check_registry",
    "register_check",
    "CheckResult",
    "Command",
    "ExperimentConfig",
    "Importance",
    "ValidationContext",
    "Verdict",
    "ConvergenceError",
    "DomainError",
    "GridError",
    "HorizonWarning",
    "InsufficientPathsError",
    "WindowMissError",
    "validate_config",
    "load_config",
    "configure_checks",
    "load_experiment_config",
    "validate_suite",
    "run_checks",
    "format_results",
    "print_to_console",
    "save_report",
    "ResultFormatter",
    "FormatterOptions",
    "ValidationOutputJSONEncoder",
    "organize_results",
    "build_experiment_config",
    "run_experiment",
    "__version__",
    # Public submodules
    "checks",
    "models",
    "testing",
    "utils",
]
