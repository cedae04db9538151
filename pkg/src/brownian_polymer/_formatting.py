"""Rendering collected check results as a numbered, sectioned plain-text report."""

import json
import sys
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from pathlib import Path
from platform import platform
from typing import Any, Optional, Union

from packaging.version import Version

from ._organization import organize_results
from ._types import CheckResult, Importance, Verdict
from .utils import get_package_version

DEFAULT_LEVELS = ("suite", "importance")
BANNER_WIDTH = 50


class ValidationOutputJSONEncoder(json.JSONEncoder):
    """Serialize CheckResults field by field, enums by member name, and versions as text."""

    def default(self, o: object) -> Any:  # noqa D102
        if isinstance(o, CheckResult):
            return vars(o)
        if isinstance(o, Enum):
            return o.name
        if isinstance(o, Version):
            return str(o)
        return super().default(o)


def _report_header() -> list[str]:
    return [
        f"Timestamp: {datetime.now().astimezone()}",
        f"Platform: {platform()}",
        f"brownian-polymer version: {get_package_version('brownian-polymer')}",
    ]


def _label(key: Union[Enum, str, None]) -> str:
    return key.name if isinstance(key, Enum) else str(key)


@dataclass
class FormatterOptions:
    """
    Layout of a sectioned report.

    Parameters
    ----------
    indent : str
        Text placed between a section or result number and its label.
    section_headers : tuple of str
        Underline character for each nesting level; the last one repeats for deeper levels.
    """

    indent: str = "  "
    section_headers: tuple[str, ...] = ("=", "-", "~")

    def underline(self, depth: int) -> str:
        return self.section_headers[min(depth, len(self.section_headers) - 1)]


class ResultFormatter:
    """Nest results by CheckResult attributes and number every section and result; use it to change the layout."""

    def __init__(
        self,
        results: list[CheckResult],
        levels: list[str],
        reverse: Optional[list[bool]] = None,
        formatter_options: Optional[FormatterOptions] = None,
    ) -> None:
        if formatter_options is not None and not isinstance(formatter_options, FormatterOptions):
            raise TypeError(f"'formatter_options' must be a FormatterOptions, received {type(formatter_options)}.")
        self.results = list(results)
        self.levels = list(levels)
        self.options = formatter_options or FormatterOptions()
        self.organized_results = organize_results(results=self.results, levels=self.levels, reverse=reverse)
        self.result_counter = 0
        self.formatted_results: list[str] = []

    def _summary(self) -> list[str]:
        failures = sum(result.verdict is Verdict.FAIL for result in self.results)
        lines = ["*" * BANNER_WIDTH, "brownian-polymer Validation Summary", "", *_report_header(), ""]
        lines.append(f"Ran {len(self.results)} checks, {failures} failed:")
        for importance in Importance:
            count = sum(result.importance is importance for result in self.results)
            if count:
                lines.append(f"{count:>8} - {importance.name}")
        return lines + ["*" * BANNER_WIDTH, "", ""]

    def _add_section(self, organized_results: dict, depth: int, numbering: tuple[int, ...]) -> None:
        if depth < len(self.levels) - 1:
            for index, (key, nested_results) in enumerate(organized_results.items()):
                section_numbering = numbering + (index,)
                title = f"{'.'.join(map(str, section_numbering))}{self.options.indent}{_label(key)}"
                self.formatted_results.extend([title, self.options.underline(depth) * len(title), ""])
                self._add_section(nested_results, depth + 1, section_numbering)
            return

        for key, results in organized_results.items():
            for result in results:
                head = f"{'.'.join(map(str, numbering + (self.result_counter,)))}{self.options.indent}"
                self.formatted_results.append(
                    f"{head}{_label(key)}: {result.check_function_name} - {result.verdict.name}"
                )
                self.formatted_results.extend([f"{' ' * len(head)}  Detail: {result.detail}", ""])
                self.result_counter += 1

    def format_results(self) -> list[str]:
        self.formatted_results = self._summary()
        self.result_counter = 0
        self._add_section(self.organized_results, depth=0, numbering=())
        return self.formatted_results


def format_results(
    results: list[CheckResult],
    levels: Optional[list[str]] = None,
    reverse: Optional[list[bool]] = None,
) -> list[str]:
    """Render CheckResults grouped by suite and then importance unless other ``levels`` are given."""
    return ResultFormatter(results=results, levels=levels or list(DEFAULT_LEVELS), reverse=reverse).format_results()


def print_to_console(formatted_results: list[str]) -> None:
    sys.stdout.write("\n\n" + "".join(f"{line}\n" for line in formatted_results))


def save_report(report_file_path: Union[str, Path], formatted_results: list[str], overwrite: bool = False) -> None:
    """Write a formatted report to a text file, refusing to replace an existing one unless ``overwrite`` is set."""
    report_file_path = Path(report_file_path)
    if report_file_path.exists() and not overwrite:
        raise FileExistsError(f"The report '{report_file_path}' already exists; pass overwrite=True to replace it.")
    report_file_path.write_text("".join(f"{line}\n" for line in formatted_results))
