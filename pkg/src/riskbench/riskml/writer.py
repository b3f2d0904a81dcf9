"""Serializer emitting canonical .riskml source.

parse(serialize(m)) reproduces m structurally: numbers are written with
repr so floats survive the round trip bit-exactly, and declaration order
is preserved.
"""

from __future__ import annotations

from .model import CATEGORICAL, INTEGER, RiskModel


def _num(value) -> str:
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def serialize_model(model: RiskModel) -> str:
    lines: list[str] = []

    for actor in model.actors:
        lines.append(f"actor {actor.name}")
    if model.actors:
        lines.append("")

    for goal in model.goals:
        lines.append(f'goal {goal.name} owner {goal.owner} "{goal.description}"')
    if model.goals:
        lines.append("")

    for f in model.features:
        if f.kind == CATEGORICAL:
            cats = ", ".join(f.values)
            lines.append(f"feature {f.name} categorical {{{cats}}} binds {f.binding}")
        else:
            kind = "integer" if f.kind == INTEGER else "continuous"
            lines.append(
                f"feature {f.name} {kind} [{_num(f.lo)}, {_num(f.hi)}] "
                f"{f.units} binds {f.binding}"
            )
    if model.features:
        lines.append("")

    for e in model.events:
        impacts = ", ".join(f"{sign}{goal}" for sign, goal in e.impacts)
        head = (
            f"event {e.name} {e.polarity} when "
            f"{e.condition.metric} {e.condition.op} {_num(e.condition.threshold)} "
            f"impacts {impacts}"
        )
        if e.likelihood is not None:
            head += f" likelihood {_num(e.likelihood.fraction)} of {e.likelihood.samples}"
        lines.append(head)
    if model.events:
        lines.append("")

    indicators_by_situation: dict[str, list] = {}
    for ind in model.indicators:
        indicators_by_situation.setdefault(ind.situation, []).append(ind)

    for s in model.situations:
        head = (
            f'situation {s.name} "{s.description}" scenario "{s.scenario_ref}" '
            f"exposes {', '.join(s.exposes)} features {', '.join(s.features)}"
        )
        inds = [i for i in indicators_by_situation.get(s.name, ()) if i.name in s.indicators]
        if inds:
            head += " indicators " + ", ".join(f"{i.name}:{i.metric}" for i in inds)
        lines.append(head)

    return "\n".join(lines).strip() + "\n"
