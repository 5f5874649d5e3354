"""Shared fixtures: session wall clock and acceptance-line reporting."""

import random
import time

import pytest

ACCEPTANCE_LINES: list[str] = []


def pytest_configure(config):
    config._suite_start = time.perf_counter()


@pytest.fixture(scope="session")
def suite_start(request):
    return request.config._suite_start


@pytest.fixture()
def rng():
    return random.Random(0xC0B0D)


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
