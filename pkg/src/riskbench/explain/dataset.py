"""Labeled datasets distilled from campaign archives."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DomainError
from ..search.algorithms import Archive
from ..search.space import FeatureSpace
from ..sim.events import LABEL_NON_COMPLIANCE


@dataclass(frozen=True)
class LabeledDataset:
    columns: tuple            # DomainFeature per column, archive order
    rows: tuple               # (value tuple, label) pairs

    def __len__(self) -> int:
        return len(self.rows)


def build_dataset(archive: Archive, space: FeatureSpace) -> LabeledDataset:
    """One row per evaluated point, labeled by its verdict."""
    if not archive.points:
        raise DomainError("cannot build a dataset from an empty archive")
    rows = tuple(
        (tuple(point.assignment[dim.name] for dim in space.dims),
         point.verdict.label)
        for point in archive.points)
    return LabeledDataset(columns=space.dims, rows=rows)


def dataset_from_rows(space: FeatureSpace, rows) -> LabeledDataset:
    """Dataset straight from parsed archive CSV rows."""
    if not rows:
        raise DomainError("cannot build a dataset from an empty archive")
    packed = tuple(
        (tuple(assignment[dim.name] for dim in space.dims), label)
        for (_, assignment, _, label, _) in rows)
    return LabeledDataset(columns=space.dims, rows=packed)


def estimate_event_likelihood(dataset: LabeledDataset) -> tuple:
    """(non-compliant fraction, sample count) for annotating the model."""
    if not dataset.rows:
        raise DomainError("cannot estimate likelihood from an empty dataset")
    bad = sum(1 for _, label in dataset.rows if label == LABEL_NON_COMPLIANCE)
    return bad / len(dataset.rows), len(dataset.rows)
