"""Check configurations (importance overrides and skips) and experiment configuration files."""

import json
from collections.abc import Callable
from functools import lru_cache
from pathlib import Path
from types import FunctionType
from typing import Any, Optional, Union

import jsonschema
import yaml

from ._registration import Importance, available_checks

CONFIG_DIRECTORY = Path(__file__).parent / "_internal_configs"
INTERNAL_CONFIGS: dict[str, Path] = dict(quick=CONFIG_DIRECTORY / "quick.validation_config.yaml")
CHECK_CONFIG_SCHEMA = CONFIG_DIRECTORY / "validation_config.schema.json"
EXPERIMENT_CONFIG_SCHEMA = CONFIG_DIRECTORY / "experiment_config.schema.json"


@lru_cache(maxsize=None)
def _load_schema(file_path: Path) -> dict:
    return json.loads(file_path.read_text())


def validate_config(config: dict) -> None:
    """Raise jsonschema.ValidationError unless ``config`` maps importance names (or SKIP) to lists of check names."""
    jsonschema.validate(instance=config, schema=_load_schema(CHECK_CONFIG_SCHEMA))


def _copy_function(function: Callable) -> Callable:
    """A new function object sharing the code, globals, defaults and closure of ``function``, plus its attributes."""
    copied_function = FunctionType(
        function.__code__, function.__globals__, function.__name__, function.__defaults__, function.__closure__
    )
    copied_function.__dict__.update(function.__dict__)  # shallow
    return copied_function


def copy_check(check: Callable) -> Callable:
    """
    Copy a registered check so its importance can be reassigned without touching the registry.

    The wrapped function is copied as well, so the copy still parses its own output.
    """
    copied_check = _copy_function(function=check)
    copied_check.__wrapped__ = _copy_function(function=check.__wrapped__)  # type: ignore
    return copied_check


def load_config(filepath_or_keyword: Union[str, Path]) -> dict:
    """
    Read a check configuration from a YAML file, or from an internal profile named by keyword.

    Internal profiles:
        - 'quick'
            Skips the long-running Monte Carlo checks; every exact check still runs.
    """
    file_path = INTERNAL_CONFIGS.get(str(filepath_or_keyword), Path(filepath_or_keyword))
    with open(file=file_path, mode="r") as stream:
        return yaml.safe_load(stream=stream)


def _apply_config(checks: list, config: dict) -> tuple[list, set[str]]:
    """Copy every check with the importance the config assigns it; also return the names listed under SKIP."""
    validate_config(config=config)
    reassigned = {name: Importance[level] for level, names in config.items() if level != "SKIP" for name in names}
    configured_checks = []
    for check in checks:
        configured_check = copy_check(check=check)
        if check.__name__ in reassigned:
            configured_check.importance = reassigned[check.__name__]  # type: ignore
        configured_checks.append(configured_check)
    return configured_checks, set(config.get("SKIP", []))


def configure_checks(
    checks: Optional[list] = None,
    config: Optional[dict] = None,
    ignore: Optional[list[str]] = None,
    select: Optional[list[str]] = None,
    importance_threshold: Importance = Importance.TREND,
) -> list:
    """
    Narrow a list of checks (the whole registry by default) by configuration, name, and importance.

    Parameters
    ----------
    checks : list of check functions, optional
        Defaults to every registered check.
    config : dict, optional
        Valid against the check configuration schema: importance names mapped to the checks to move to that level,
        and SKIP mapped to checks to drop. The registry itself is never modified.
    ignore : list of str, optional
        Names of checks to drop.
    select : list of str, optional
        Names of the only checks to keep. Cannot be combined with ``ignore``.
    importance_threshold : Importance, optional
        Drop checks whose importance, after configuration, is below this level. The levels from highest to lowest
        are EXACT, STATISTICAL and TREND; the default keeps everything.
    """
    if ignore is not None and select is not None:
        raise ValueError("Options 'ignore' and 'select' cannot both be used.")
    if not isinstance(importance_threshold, Importance) or importance_threshold is Importance.ERROR:
        raise ValueError(
            f"Indicated importance_threshold ({importance_threshold}) is not a valid importance level! Please choose "
            "from [EXACT, STATISTICAL, TREND]."
        )

    configured_checks = list(checks or available_checks)
    skipped: set[str] = set()
    if config is not None:
        configured_checks, skipped = _apply_config(configured_checks, config)
    skipped.update(ignore or [])

    return [
        check
        for check in configured_checks
        if check.__name__ not in skipped
        and (select is None or check.__name__ in select)
        and check.importance.value >= importance_threshold.value  # type: ignore
    ]


def load_experiment_config(file_path: Union[str, Path]) -> dict[str, Any]:
    """
    Load a flat YAML mapping of experiment options whose keys mirror the command-line flags.

    Dashes in keys are normalized to underscores before validation, so ``mc-samples`` and ``mc_samples`` are
    equivalent. Unknown keys are rejected by the schema.
    """
    with open(file=file_path, mode="r") as stream:
        raw_config = yaml.safe_load(stream=stream) or dict()
    if not isinstance(raw_config, dict):
        raise jsonschema.ValidationError(f"The experiment config '{file_path}' must be a mapping of option: value.")

    config = {str(key).replace("-", "_"): value for key, value in raw_config.items()}
    jsonschema.validate(instance=config, schema=_load_schema(EXPERIMENT_CONFIG_SCHEMA))
    return config
