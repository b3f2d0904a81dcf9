"""Map trace metrics to event verdicts and signed robustness values.

Robustness is negative exactly when the event condition holds, and its
magnitude says how far the metric sits from the threshold:

    metric < threshold  ->  robustness = metric - threshold
    metric > threshold  ->  robustness = threshold - metric
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UnknownNameError
from ..riskml.model import NEGATIVE, Condition, RiskModel, Situation
from .engine import Trace, TraceMetrics

LABEL_COMPLIANCE = "compliance"
LABEL_NON_COMPLIANCE = "non_compliance"


@dataclass(frozen=True)
class EventOutcome:
    triggered: bool
    robustness: float


@dataclass(frozen=True)
class Verdict:
    per_event: dict
    label: str

    def outcome(self, event_name: str) -> EventOutcome:
        try:
            return self.per_event[event_name]
        except KeyError:
            raise UnknownNameError(
                f"event {event_name!r} was not evaluated") from None


def condition_robustness(condition: Condition, metrics: dict) -> float:
    try:
        value = metrics[condition.metric]
    except KeyError:
        raise UnknownNameError(
            f"unknown trace metric {condition.metric!r}") from None
    if condition.op == "<":
        return value - condition.threshold
    return condition.threshold - value


def evaluate_events(trace, model: RiskModel, situation: Situation) -> Verdict:
    """Judge every event the situation exposes against one trace.

    Accepts a Trace or bare TraceMetrics. The episode label is
    non-compliant exactly when some exposed negative event triggered.
    """
    if isinstance(trace, Trace):
        metrics = trace.metrics.as_dict()
    elif isinstance(trace, TraceMetrics):
        metrics = trace.as_dict()
    else:
        metrics = dict(trace)
    per_event = {}
    any_negative = False
    for name in situation.exposes:
        event = model.event(name)
        rob = condition_robustness(event.condition, metrics)
        triggered = rob < 0.0
        per_event[name] = EventOutcome(triggered=triggered, robustness=rob)
        if triggered and event.polarity == NEGATIVE:
            any_negative = True
    label = LABEL_NON_COMPLIANCE if any_negative else LABEL_COMPLIANCE
    return Verdict(per_event=per_event, label=label)
