"""Access to the packaged example model, scenario, and config files."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .errors import ConfigError


def data_path(name: str) -> Path:
    """Filesystem path of a packaged data file.

    Assumes the package is installed unzipped, which every supported
    install method here guarantees.
    """
    path = Path(str(resources.files("riskbench").joinpath("data", name)))
    if not path.exists():
        raise ConfigError(f"no packaged data file named {name!r}")
    return path


def data_text(name: str) -> str:
    return data_path(name).read_text(encoding="utf-8")
