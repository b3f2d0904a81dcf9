"""Archive persistence: one CSV of evaluations plus one JSON header.

The CSV is the hand-off to the explanation stage; the header records how
it was produced (search config, seeds, input digests) so stale or
mismatched inputs are detectable instead of silently wrong.
"""

from __future__ import annotations

from ..errors import ArchiveMismatchError, ConfigError
from ..riskml.model import CATEGORICAL, INTEGER
from .algorithms import Archive, EvaluatedPoint, SearchConfig
from .space import FeatureSpace

ARCHIVE_FORMAT = "riskbench-archive-v1"


def _cell(dim, value) -> str:
    if dim.kind == CATEGORICAL:
        return str(value)
    if dim.kind == INTEGER:
        return str(int(value))
    return repr(float(value))


def archive_to_csv(archive: Archive, space: FeatureSpace,
                   target_event: str) -> str:
    """index, feature columns, robustness, label, triggered events."""
    header = ["index", *space.names(), "robustness", "label", "triggered"]
    lines = [",".join(header)]
    for point in archive.points:
        triggered = ";".join(
            name for name in point.verdict.per_event
            if point.verdict.per_event[name].triggered)
        row = [str(point.index)]
        row.extend(_cell(dim, point.assignment[dim.name])
                   for dim in space.dims)
        row.append(repr(point.robustness))
        row.append(point.verdict.label)
        row.append(triggered)
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def archive_header(space: FeatureSpace, config: SearchConfig,
                   sim_seeds: tuple, situation: str, event: str,
                   model_digest: str, scenario_digest: str,
                   evaluations: int) -> dict:
    dims = []
    for dim in space.dims:
        entry = {"name": dim.name, "kind": dim.kind}
        if dim.kind == CATEGORICAL:
            entry["values"] = list(dim.values)
        else:
            entry["lo"] = dim.lo
            entry["hi"] = dim.hi
        dims.append(entry)
    return {
        "format": ARCHIVE_FORMAT,
        "situation": situation,
        "event": event,
        "space": dims,
        "config": {
            "algorithm": config.algorithm,
            "budget": config.budget,
            "seed": config.seed,
            "sigma": config.sigma,
            "t0": config.t0,
            "alpha": config.alpha,
            "population": config.population,
            "crossover": config.crossover,
            "tournament": config.tournament,
            "stop_on_violation": config.stop_on_violation,
        },
        "sim_seeds": list(sim_seeds),
        "model_digest": model_digest,
        "scenario_digest": scenario_digest,
        "evaluations": evaluations,
    }


def parse_archive_csv(text: str, space: FeatureSpace):
    """Rows back out of the CSV as (index, assignment, robustness, label,
    triggered tuple). The feature columns must match the space exactly."""
    lines = [line for line in text.splitlines() if line]
    if not lines:
        raise ConfigError("archive CSV is empty")
    expected = ["index", *space.names(), "robustness", "label", "triggered"]
    header = lines[0].split(",")
    if header != expected:
        raise ArchiveMismatchError(
            f"archive columns {header!r} do not match the feature space "
            f"{expected!r}")
    rows = []
    for line in lines[1:]:
        cells = line.split(",")
        if len(cells) != len(expected):
            raise ConfigError(f"malformed archive row: {line!r}")
        index = int(cells[0])
        assignment = {}
        for dim, cell in zip(space.dims, cells[1:1 + len(space.dims)]):
            if dim.kind == CATEGORICAL:
                assignment[dim.name] = cell
            elif dim.kind == INTEGER:
                assignment[dim.name] = int(cell)
            else:
                assignment[dim.name] = float(cell)
        robustness = float(cells[1 + len(space.dims)])
        label = cells[2 + len(space.dims)]
        triggered = tuple(t for t in cells[3 + len(space.dims)].split(";") if t)
        rows.append((index, assignment, robustness, label, triggered))
    return rows
