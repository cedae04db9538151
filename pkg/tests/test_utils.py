import os
from unittest import TestCase

import numpy as np
import pytest
from packaging import version

from brownian_polymer.utils import (
    calculate_number_of_cpu,
    combined_stderr,
    get_package_version,
    get_worker_count,
    is_ascending_series,
    mean_and_stderr,
    parse_range,
    strtobool,
    within_stderr,
)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("1", (1.0,)),
        (" 2.5 ", (2.5,)),
        ("0:1:0.5", (0.0, 0.5, 1.0)),
        ("0:0:1", (0.0,)),
        ("0:1:0.1", tuple(round(0.1 * index, 12) for index in range(11))),
        ("0.5,1,2", (0.5, 1.0, 2.0)),
        ("8:32:8", (8.0, 16.0, 24.0, 32.0)),
    ],
)
def test_parse_range(text, expected):
    assert parse_range(text) == expected


@pytest.mark.parametrize("text", ["1:2", "0:1:0", "1:0:0.5", "a", "0:1:-1"])
def test_parse_range_errors(text):
    with pytest.raises(ValueError):
        parse_range(text)


def test_mean_and_stderr():
    mean, stderr = mean_and_stderr([1.0, 2.0, 3.0, 4.0])
    assert mean == 2.5
    assert stderr == pytest.approx(np.std([1.0, 2.0, 3.0, 4.0], ddof=1) / 2.0)
    assert mean_and_stderr([3.0, 3.0]) == (3.0, 0.0)
    assert mean_and_stderr([5.0]) == (5.0, 0.0)


def test_combined_stderr():
    assert combined_stderr(3.0, 4.0) == 5.0


def test_within_stderr():
    assert within_stderr(1.05, 1.0, stderr=0.02)
    assert not within_stderr(1.1, 1.0, stderr=0.02)
    assert within_stderr(1.1, 1.0, stderr=0.02, slack=0.05)


def test_get_package_version_type():
    assert isinstance(get_package_version("numpy"), version.Version)


def test_get_package_version_value():
    assert get_package_version("numpy") >= version.parse("1.22")


class TestCalculateNumberOfCPU(TestCase):
    total_cpu = os.cpu_count()

    def test_request_more_than_available_assert(self):
        requested_cpu = 2500
        with self.assertRaisesRegex(
            expected_exception=ValueError, expected_regex=r"Requested more CPUs \(2500\) than are available"
        ):
            calculate_number_of_cpu(requested_cpu=requested_cpu)

    def test_request_fewer_than_available_assert(self):
        requested_cpu = -2500
        with self.assertRaisesRegex(
            expected_exception=ValueError, expected_regex=r"Requested fewer CPUs \(-2500\) than are available"
        ):
            calculate_number_of_cpu(requested_cpu=requested_cpu)

    def test_calculate_number_of_cpu_all(self):
        assert calculate_number_of_cpu(requested_cpu=0) == self.total_cpu

    def test_calculate_number_of_cpu_negative_value(self):
        if self.total_cpu < 2:
            self.skipTest("Needs at least two CPUs.")
        requested_cpu = -1
        assert calculate_number_of_cpu(requested_cpu=requested_cpu) == requested_cpu % self.total_cpu


def test_get_worker_count(monkeypatch):
    monkeypatch.delenv("POLYMER_THREADS", raising=False)
    assert get_worker_count() == 1
    assert get_worker_count(1) == 1
    assert get_worker_count(10_000) == os.cpu_count()

    monkeypatch.setenv("POLYMER_THREADS", "0")
    assert get_worker_count() == os.cpu_count()
    assert get_worker_count(10_000) == os.cpu_count()


def test_get_worker_count_is_capped_by_environment(monkeypatch):
    monkeypatch.setenv("POLYMER_THREADS", "1")
    assert get_worker_count() == 1
    assert get_worker_count(0) == 1
    assert get_worker_count(10_000) == 1

    monkeypatch.setenv("POLYMER_THREADS", " ")
    assert get_worker_count(0) == os.cpu_count()


def test_is_ascending_series():
    assert is_ascending_series(series=[1, 1, 1])
    assert is_ascending_series(series=[1, 2, 3])
    assert is_ascending_series(series=[1, np.nan, 3])
    assert not is_ascending_series(series=[1, 2, 1])
    assert not is_ascending_series(series=[1, 1, 2], strict=True)


@pytest.mark.parametrize("flag", ["y", "Yes", "TRUE", "on", "1"])
def test_strtobool_true(flag):
    assert strtobool(flag) is True


@pytest.mark.parametrize("flag", ["n", "No", "FALSE", "off", "0"])
def test_strtobool_false(flag):
    assert strtobool(flag) is False


@pytest.mark.parametrize("flag", ["", "2", "yess", "offf"])
def test_strtobool_unrecognized(flag):
    with pytest.raises(ValueError, match="not a recognized truth value"):
        strtobool(flag)


def test_strtobool_rejects_non_strings():
    with pytest.raises(TypeError, match="expects a str"):
        strtobool(True)
