"""Rules read off high-likelihood leaves, and counterexamples inside them.

A rule is the conjunction of the tests along one root-to-leaf path,
collapsed to a single interval or category subset per feature and clipped
to the feature domains. Lower bounds coming from a `value <= t` test taken
on the right branch are strict (value > t); that distinction is kept both
for membership checks and for the report text.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, EmptyRegionError
from ..riskml.model import CATEGORICAL, INTEGER
from ..search.space import FeatureSpace
from .tree import DecisionTree, TreeNode


@dataclass(frozen=True)
class Constraint:
    feature: str
    kind: str
    lo: float = 0.0
    hi: float = 0.0
    lo_strict: bool = False
    values: tuple | None = None     # categorical subset

    def admits(self, value) -> bool:
        if self.kind == CATEGORICAL:
            return value in (self.values or ())
        if self.lo_strict:
            if not (value > self.lo):
                return False
        elif value < self.lo:
            return False
        return value <= self.hi


@dataclass(frozen=True)
class Rule:
    id: int
    constraints: tuple
    likelihood: float
    support: int

    def constraint_for(self, feature: str) -> Constraint | None:
        for constraint in self.constraints:
            if constraint.feature == feature:
                return constraint
        return None

    def satisfied_by(self, assignment: dict) -> bool:
        return all(c.admits(assignment[c.feature]) for c in self.constraints)


@dataclass(frozen=True)
class AugmentationSet:
    assignments: tuple
    rule_id: int


def _path_constraints(columns, path) -> tuple:
    """Intersect the tests of one path into per-feature constraints."""
    by_index: dict = {}
    for node, went_left in path:
        split = node.split
        state = by_index.setdefault(
            split.feature_index,
            {"lo": None, "lo_strict": False, "hi": None, "excluded": set(),
             "only": None})
        if split.kind == CATEGORICAL:
            if went_left:
                state["only"] = split.threshold
            else:
                state["excluded"].add(split.threshold)
        elif went_left:
            if state["hi"] is None or split.threshold < state["hi"]:
                state["hi"] = split.threshold
        else:
            if state["lo"] is None or split.threshold > state["lo"]:
                state["lo"] = split.threshold
                state["lo_strict"] = True

    constraints = []
    for idx in sorted(by_index):
        column = columns[idx]
        state = by_index[idx]
        if column.kind == CATEGORICAL:
            if state["only"] is not None:
                allowed = (state["only"],)
            else:
                allowed = tuple(v for v in column.values
                                if v not in state["excluded"])
            constraints.append(Constraint(feature=column.name,
                                          kind=column.kind, values=allowed))
        else:
            lo = column.lo if state["lo"] is None else max(column.lo, state["lo"])
            hi = column.hi if state["hi"] is None else min(column.hi, state["hi"])
            strict = state["lo"] is not None and state["lo"] >= column.lo
            constraints.append(Constraint(feature=column.name,
                                          kind=column.kind, lo=lo, hi=hi,
                                          lo_strict=strict))
    return tuple(constraints)


def extract_rules(tree: DecisionTree, threshold: float) -> list:
    """One rule per leaf whose non-compliance likelihood clears threshold,
    ordered by descending likelihood, then descending support."""
    if not (0.0 <= threshold <= 1.0):
        raise DomainError(f"rule threshold must be in [0, 1], got {threshold}")

    found = []

    def walk(node: TreeNode, path):
        if node.is_leaf:
            support = node.count_compliance + node.count_non_compliance
            if support and node.likelihood >= threshold:
                found.append((node.likelihood, support,
                              _path_constraints(tree.columns, path)))
            return
        walk(node.left, path + [(node, True)])
        walk(node.right, path + [(node, False)])

    walk(tree.root, [])
    found.sort(key=lambda item: (-item[0], -item[1]))
    return [Rule(id=i + 1, constraints=constraints, likelihood=likelihood,
                 support=support)
            for i, (likelihood, support, constraints) in enumerate(found)]


def generate_counterexamples(rule: Rule, space: FeatureSpace, n: int,
                             seed: int) -> AugmentationSet:
    """n assignments drawn uniformly from rule region ∩ feature domains."""
    if n < 0:
        raise DomainError(f"sample count must be non-negative, got {n}")
    rng = np.random.default_rng(seed)

    samplers = []
    for dim in space.dims:
        constraint = rule.constraint_for(dim.name)
        if dim.kind == CATEGORICAL:
            allowed = dim.values
            if constraint is not None:
                allowed = tuple(v for v in (constraint.values or ())
                                if v in dim.values)
            if not allowed:
                raise EmptyRegionError(
                    f"empty region: no admissible category for {dim.name!r}")
            samplers.append((dim.name, "cat", allowed))
        else:
            lo, hi, strict = dim.lo, dim.hi, False
            if constraint is not None:
                lo = max(lo, constraint.lo)
                hi = min(hi, constraint.hi)
                strict = constraint.lo_strict
            if dim.kind == INTEGER:
                lo_i = int(np.floor(lo)) + 1 if (strict and lo == int(lo)) \
                    else int(np.ceil(lo))
                hi_i = int(np.floor(hi))
                if lo_i > hi_i:
                    raise EmptyRegionError(
                        f"empty region: no integer in [{lo}, {hi}] "
                        f"for {dim.name!r}")
                samplers.append((dim.name, "int", (lo_i, hi_i)))
            else:
                if lo > hi or (strict and lo >= hi):
                    raise EmptyRegionError(
                        f"empty region: interval [{lo}, {hi}] for "
                        f"{dim.name!r} has no volume")
                samplers.append((dim.name, "float", (lo, hi)))

    assignments = []
    for _ in range(n):
        a = {}
        for name, kind, spec in samplers:
            if kind == "cat":
                a[name] = spec[int(rng.integers(0, len(spec)))]
            elif kind == "int":
                a[name] = int(rng.integers(spec[0], spec[1] + 1))
            else:
                a[name] = float(rng.uniform(spec[0], spec[1]))
        assignments.append(a)
    return AugmentationSet(assignments=tuple(assignments), rule_id=rule.id)


def _fmt(x) -> str:
    return format(float(x), ".6g")


def constraint_text(constraint: Constraint) -> str:
    if constraint.kind == CATEGORICAL:
        return (f"{constraint.feature} in "
                f"{{{', '.join(constraint.values or ())}}}")
    left = "(" if constraint.lo_strict else "["
    return (f"{constraint.feature} in {left}{_fmt(constraint.lo)}, "
            f"{_fmt(constraint.hi)}]")


def rules_report(rules, algorithm: str | None = None) -> str:
    """Plain-text listing, one line per rule."""
    lines = []
    if algorithm:
        lines.append(f"# archive produced by {algorithm} search; "
                     "likelihoods are raw leaf fractions")
    if not rules:
        lines.append("no rules met the likelihood threshold")
    for rule in rules:
        conj = " and ".join(constraint_text(c) for c in rule.constraints) \
            or "always"
        lines.append(f"rule #{rule.id}: {conj} -> non-compliance, "
                     f"likelihood {rule.likelihood:.3f}, "
                     f"support {rule.support}")
    return "\n".join(lines) + "\n"


def rules_to_json(rules) -> dict:
    out = []
    for rule in rules:
        constraints = []
        for c in rule.constraints:
            if c.kind == CATEGORICAL:
                constraints.append({"feature": c.feature, "kind": c.kind,
                                    "values": list(c.values or ())})
            else:
                constraints.append({"feature": c.feature, "kind": c.kind,
                                    "lo": c.lo, "hi": c.hi,
                                    "lo_strict": c.lo_strict})
        out.append({"id": rule.id, "constraints": constraints,
                    "likelihood": rule.likelihood, "support": rule.support})
    return {"rules": out}
