"""Risk modelling language: types, parser, validator, serializer, cases."""

from ..errors import ModelInvalidError
from .assurance import AssuranceCase, EvidenceSlot, cases_to_json, derive_assurance_cases
from .model import (CATEGORICAL, CONTINUOUS, INTEGER, NEGATIVE, POSITIVE,
                    Actor, Condition, Diagnostic, DomainFeature, Event, Goal,
                    Indicator, Likelihood, RiskModel, Situation,
                    annotate_likelihoods, validate)
from .parser import parse_risk_model
from .writer import serialize_model


def load_model(text: str) -> RiskModel:
    """Parse and validate in one step; raises on any diagnostic."""
    model = parse_risk_model(text)
    diagnostics = validate(model)
    if diagnostics:
        raise ModelInvalidError(diagnostics)
    return model


__all__ = [
    "Actor", "AssuranceCase", "CATEGORICAL", "CONTINUOUS", "Condition",
    "Diagnostic", "DomainFeature", "Event", "EvidenceSlot", "Goal", "INTEGER",
    "Indicator", "Likelihood", "NEGATIVE", "POSITIVE", "RiskModel",
    "Situation", "annotate_likelihoods", "cases_to_json",
    "derive_assurance_cases", "load_model", "parse_risk_model",
    "serialize_model", "validate",
]
