"""Nesting check results by their attributes for the sectioned report."""

from enum import Enum
from typing import Optional

from natsort import natsorted

from ._types import CheckResult, Verdict


def _level_sort_key(value: object) -> object:
    # integer-valued enums (importance) sort highest first, others by member name
    if isinstance(value, Enum):
        return -value.value if isinstance(value.value, int) else value.name
    return value


def _sorted_keys(values: set, reverse: bool = False) -> list:
    if any(isinstance(value, Enum) for value in values):
        return natsorted(values, key=_level_sort_key, reverse=reverse)
    return natsorted(values, key=str, reverse=reverse)


def organize_results(results: list[CheckResult], levels: list[str], reverse: Optional[list[bool]] = None) -> dict:
    """
    Nest a list of CheckResults into dictionaries keyed by the values of the given attributes, outermost first.

    Leaves are lists of results with failures ahead of passes, then ordered by check name.

    Parameters
    ----------
    results : list of CheckResults
    levels : list of strings
        Attribute names of CheckResult, such as 'suite', 'importance' or 'verdict'; the free-text 'detail' is not
        allowed.
    reverse : list of bool, optional
        One flag per level; True sorts that level in descending order.
    """
    if "detail" in levels:
        raise ValueError("The free-text 'detail' of a CheckResult cannot be used to organize results.")
    reverse = reverse or [False] * len(levels)
    attribute, *inner_levels = levels
    keys = _sorted_keys({getattr(result, attribute) for result in results}, reverse=reverse[0])

    organized = dict()
    for key in keys:
        members = [result for result in results if getattr(result, attribute) == key]
        if inner_levels:
            organized[key] = organize_results(results=members, levels=inner_levels, reverse=reverse[1:])
        else:
            organized[key] = sorted(
                members, key=lambda result: (result.verdict is not Verdict.FAIL, str(result.check_function_name))
            )
    return organized
