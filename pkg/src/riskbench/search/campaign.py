"""Closed-loop falsification campaign: bind, simulate, judge, archive."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DomainError, UnknownNameError
from ..riskml.model import RiskModel
from ..sim.engine import simulate
from ..sim.events import (LABEL_COMPLIANCE, LABEL_NON_COMPLIANCE, EventOutcome,
                          Verdict, evaluate_events)
from ..sim.scenario import Scenario, bind_assignment
from .algorithms import Archive, SearchConfig, run_search
from .space import FeatureSpace, make_feature_space

MINIMIZE = "minimize"
MAXIMIZE = "maximize"


@dataclass(frozen=True)
class ObjectiveSpec:
    event: str
    metric: str
    direction: str


def objective_from_event(model: RiskModel, event_name: str) -> ObjectiveSpec:
    """Which metric the search effectively pushes, and which way.

    Robustness is what gets minimized either way; the direction is the
    human-readable consequence: `metric < t` events drive the metric down,
    `metric > t` events drive it up.
    """
    event = model.event(event_name)
    direction = MINIMIZE if event.condition.op == "<" else MAXIMIZE
    return ObjectiveSpec(event=event_name, metric=event.condition.metric,
                         direction=direction)


def campaign_evaluator(model: RiskModel, scenario: Scenario,
                       situation_name: str, event_name: str,
                       sim_seeds: tuple = (11,)):
    """Evaluator closure for run_search over full simulations.

    With several simulator seeds, per-event robustness is averaged across
    the replicates and the verdict is re-derived from the means.
    """
    situation = model.situation(situation_name)
    if event_name not in situation.exposes:
        raise UnknownNameError(
            f"event {event_name!r} is not exposed by situation "
            f"{situation_name!r}")
    if not sim_seeds:
        raise DomainError("at least one simulator seed is required")

    def evaluate(assignment: dict):
        bound = bind_assignment(scenario, model, assignment)
        if len(sim_seeds) == 1:
            verdict = evaluate_events(simulate(bound, sim_seeds[0]),
                                      model, situation)
        else:
            totals = {name: 0.0 for name in situation.exposes}
            for seed in sim_seeds:
                one = evaluate_events(simulate(bound, seed), model, situation)
                for name, outcome in one.per_event.items():
                    totals[name] += outcome.robustness
            per_event = {}
            any_negative = False
            for name in situation.exposes:
                mean = totals[name] / len(sim_seeds)
                triggered = mean < 0.0
                per_event[name] = EventOutcome(triggered=triggered,
                                               robustness=mean)
                if triggered and model.event(name).polarity == "negative":
                    any_negative = True
            verdict = Verdict(per_event=per_event,
                              label=LABEL_NON_COMPLIANCE if any_negative
                              else LABEL_COMPLIANCE)
        return verdict.per_event[event_name].robustness, verdict

    return evaluate


def run_campaign(model: RiskModel, scenario: Scenario, situation_name: str,
                 event_name: str, config: SearchConfig,
                 sim_seeds: tuple = (11,)) -> Archive:
    """Search the situation's feature space for violations of one event."""
    space = make_feature_space(model, situation_name)
    evaluator = campaign_evaluator(model, scenario, situation_name,
                                   event_name, sim_seeds)
    return run_search(space, evaluator, config)
