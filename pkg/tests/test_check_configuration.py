from pathlib import Path
from unittest import TestCase

import pytest
from jsonschema import ValidationError

from brownian_polymer import (
    Importance,
    available_checks,
    configure_checks,
    default_check_registry,
    load_config,
    load_experiment_config,
    validate_config,
)
from brownian_polymer._configuration import _copy_function
from brownian_polymer.checks import (
    check_functional_equations,
    check_polygamma_closed_values,
    check_polygamma_monotonicity,
    check_series_agreement,
)


class TestCheckConfiguration(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.checks = [
            check_polygamma_closed_values,
            check_polygamma_monotonicity,
            check_functional_equations,
            check_series_agreement,
        ]

    def test_safe_check_copy(self):
        initial_importance = available_checks[0].importance
        changed_check = _copy_function(function=available_checks[0])
        if initial_importance is Importance.EXACT:
            changed_importance = Importance.TREND
        else:
            changed_importance = Importance.EXACT
        changed_check.importance = changed_importance
        assert available_checks[0].importance is initial_importance
        assert changed_check.importance is changed_importance

    def test_configure_checks_change_importance(self):
        config = dict(
            STATISTICAL=["check_polygamma_closed_values"],
            TREND=["check_polygamma_monotonicity"],
        )
        checks_out = configure_checks(checks=self.checks, config=config)
        assert checks_out[0].__name__ == "check_polygamma_closed_values"
        assert checks_out[0].importance is Importance.STATISTICAL
        assert checks_out[1].__name__ == "check_polygamma_monotonicity" and checks_out[1].importance is Importance.TREND
        assert check_polygamma_closed_values.importance is Importance.EXACT

    def test_configured_copy_still_runs(self):
        (copied_check,) = configure_checks(checks=self.checks[:1], config=dict(TREND=["check_polygamma_closed_values"]))
        result = copied_check()
        assert result.check_function_name == "check_polygamma_closed_values"
        assert result.suite == "specialfn"

    def test_configure_checks_with_exact_threshold_against_entire_registry(self):
        checks_out = configure_checks(checks=available_checks, importance_threshold=Importance.EXACT)
        assert checks_out
        for check in checks_out:
            assert (
                check.importance is Importance.EXACT
            ), f"Check function {check.__name__} with importance {check.importance} is below the set threshold!"

    def test_configure_checks_skip(self):
        config = dict(SKIP=["check_series_agreement"])
        validate_config(config=config)
        checks_out = configure_checks(checks=self.checks, config=config)
        self.assertListEqual(list1=[x.__name__ for x in checks_out], list2=[x.__name__ for x in self.checks[:3]])

    def test_configure_checks_select(self):
        checks_out = configure_checks(checks=self.checks, select=["check_functional_equations"])
        self.assertListEqual(list1=[x.__name__ for x in checks_out], list2=["check_functional_equations"])

    def test_configure_checks_ignore(self):
        checks_out = configure_checks(checks=self.checks, ignore=["check_functional_equations"])
        assert "check_functional_equations" not in [x.__name__ for x in checks_out]
        assert len(checks_out) == 3

    def test_ignore_and_select_conflict(self):
        with self.assertRaisesRegex(expected_exception=ValueError, expected_regex="cannot both be used"):
            configure_checks(checks=self.checks, ignore=["a"], select=["b"])

    def test_bad_schema(self):
        config = dict(WRONG="test")
        with self.assertRaises(expected_exception=ValidationError):
            validate_config(config=config)

    def test_bad_importance_name_in_config(self):
        with self.assertRaises(expected_exception=ValidationError):
            validate_config(config=dict(ERROR=["check_series_agreement"]))

    def test_load_quick_config(self):
        config = load_config(filepath_or_keyword="quick")
        assert list(config) == ["SKIP"]
        assert "check_moment_identity" in config["SKIP"]
        assert "check_polygamma_closed_values" not in config["SKIP"]
        validate_config(config=config)

    def test_all_config_check_names_are_in_default_registry(self):
        config = load_config(filepath_or_keyword="quick")
        for importance_level, check_names in config.items():
            for check_name in check_names:
                assert (
                    check_name in default_check_registry
                ), f"Check name {check_name} was not found in the default registry!"


def test_load_experiment_config(tmp_path: Path):
    file_path = tmp_path / "experiment.yaml"
    file_path.write_text("command: polymer\nbeta: '0.5:1:0.5'\nn: 8\nmc-samples: 100\nseed: 3\n")
    config = load_experiment_config(file_path)
    assert config == dict(command="polymer", beta="0.5:1:0.5", n=8, mc_samples=100, seed=3)


def test_load_experiment_config_rejects_unknown_keys(tmp_path: Path):
    file_path = tmp_path / "experiment.yaml"
    file_path.write_text("command: polymer\ntemperature: 3\n")
    with pytest.raises(ValidationError):
        load_experiment_config(file_path)


def test_load_experiment_config_rejects_non_mapping(tmp_path: Path):
    file_path = tmp_path / "experiment.yaml"
    file_path.write_text("- 1\n- 2\n")
    with pytest.raises(ValidationError):
        load_experiment_config(file_path)
