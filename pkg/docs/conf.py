import sys
from collections import defaultdict
from pathlib import Path

sys.path.append(str(Path(__file__).parent))
from conf_extlinks import extlinks, intersphinx_mapping

from brownian_polymer import Importance, available_checks

project = "brownian-polymer"
copyright = "2024, the brownian-polymer developers"
author = "the brownian-polymer developers"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.intersphinx",
    "sphinx.ext.extlinks",
    "sphinx.ext.mathjax",
    "sphinx_copybutton",
]
master_doc = "index"
exclude_patterns = ["_build"]
html_theme = "sphinx_rtd_theme"
html_theme_options = {"collapse_navigation": False}

# numpy-style docstrings throughout
napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_use_param = False

autoclass_content = "both"
autodoc_member_order = "bysource"
autodoc_default_options = {"members": True, "member-order": "bysource"}
add_module_names = False


def add_suite_to_docstrings(app, what, name, obj, options, lines):
    if what == "function" and obj.__name__.startswith("check_") and hasattr(obj, "suite"):
        lines.append(f"Suite: ``{obj.suite}``; importance: ``{obj.importance.name}``.")


def setup(app):
    app.connect("autodoc-process-docstring", add_suite_to_docstrings)


def _write_checks_by_importance():
    """Generate the checks_by_importance page: one section per importance, one line per check with its suite."""
    checks_by_importance = defaultdict(list)
    for check in available_checks:
        checks_by_importance[check.importance].append(check)

    title = "Checks by Importance"
    lines = [title, "=" * len(title), "", "The registered checks, grouped by importance and then by suite.", ""]
    for importance in Importance:
        if importance not in checks_by_importance:
            continue
        lines.extend([importance.name, "-" * len(importance.name), ""])
        for check in sorted(checks_by_importance[importance], key=lambda check: (check.suite, check.__name__)):
            lines.append(f"*  ``{check.suite}``: :py:func:`~{check.__module__}.{check.__name__}`")
        lines.append("")
    (Path(__file__).parent / "checks_by_importance.rst").write_text("\n".join(lines))


_write_checks_by_importance()
