"""Shared fixtures: packaged inputs and a subprocess harness for the CLI."""

import subprocess
import sys

import pytest
from hypothesis import settings

from riskbench.datafiles import data_path, data_text
from riskbench.riskml import load_model
from riskbench.sim import load_scenario

settings.register_profile("suite", max_examples=50, deadline=None)
settings.load_profile("suite")

# Invoke the CLI through the same interpreter so the tests exercise the
# real argument parsing and exit codes without depending on PATH.
_CLI = [sys.executable, "-c", "from riskbench.cli import main; main()"]


def run_cli(*args, cwd=None):
    return subprocess.run([*_CLI, *map(str, args)], cwd=cwd,
                          capture_output=True, text=True, timeout=300)


@pytest.fixture(scope="session")
def default_model():
    return load_model(data_text("default.riskml"))


@pytest.fixture(scope="session")
def default_scenario():
    return load_scenario(data_text("default_cell.scenario"))


@pytest.fixture(scope="session")
def corner_model():
    return load_model(data_text("corner.riskml"))


@pytest.fixture(scope="session")
def corner_scenario():
    return load_scenario(data_text("corner_cell.scenario"))


@pytest.fixture(scope="session")
def data_dir():
    return data_path("default.riskml").parent
