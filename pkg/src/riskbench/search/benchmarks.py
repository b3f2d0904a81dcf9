"""Synthetic objectives for exercising the search algorithms quickly."""

from __future__ import annotations

from ..riskml.model import CONTINUOUS, DomainFeature
from .space import FeatureSpace


def unit_box_space(n_dims: int) -> FeatureSpace:
    dims = tuple(
        DomainFeature(name=f"x{i}", kind=CONTINUOUS, lo=0.0, hi=1.0,
                      units="unit", binding=f"x{i}")
        for i in range(n_dims))
    return FeatureSpace(dims=dims)


def sphere_evaluator(center: float = 0.5):
    """Robustness ||x - center||^2; minimum 0 at the center, no verdict."""
    def evaluate(assignment: dict):
        rob = sum((v - center) ** 2 for v in assignment.values())
        return rob, None
    return evaluate
