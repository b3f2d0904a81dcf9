"""CART-style decision tree over labeled feature assignments.

Binary splits chosen by Gini impurity decrease. Numeric tests are
`value <= threshold` with thresholds at midpoints between consecutive
distinct values; categorical tests are one-vs-rest (`value == category`).
Ties break toward the lower feature index, then the lower threshold (for
categoricals: the earlier declared category). No pruning; growth stops on
depth, node size, purity, or a gain floor.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DomainError, UnknownNameError
from ..riskml.model import CATEGORICAL
from ..sim.events import LABEL_NON_COMPLIANCE
from .dataset import LabeledDataset

DEFAULT_MAX_DEPTH = 6
DEFAULT_MIN_LEAF = 5
DEFAULT_MIN_GAIN = 1e-6


@dataclass(frozen=True)
class Split:
    feature_index: int
    feature_name: str
    kind: str
    threshold: object         # number for numeric, category for categorical
    gain: float

    def goes_left(self, value) -> bool:
        if self.kind == CATEGORICAL:
            return value == self.threshold
        return value <= self.threshold


@dataclass(frozen=True)
class TreeNode:
    split: Split | None       # None marks a leaf
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    count_compliance: int = 0
    count_non_compliance: int = 0

    @property
    def is_leaf(self) -> bool:
        return self.split is None

    @property
    def likelihood(self) -> float:
        total = self.count_compliance + self.count_non_compliance
        return self.count_non_compliance / total if total else 0.0


@dataclass(frozen=True)
class DecisionTree:
    root: TreeNode
    columns: tuple
    n_rows: int
    max_depth: int
    min_leaf: int
    min_gain: float


def _gini(n_compliance: int, n_non_compliance: int) -> float:
    total = n_compliance + n_non_compliance
    if total == 0:
        return 0.0
    p_c = n_compliance / total
    p_nc = n_non_compliance / total
    return 1.0 - p_c * p_c - p_nc * p_nc


def _counts(rows) -> tuple:
    nc = sum(1 for _, label in rows if label == LABEL_NON_COMPLIANCE)
    return len(rows) - nc, nc


def best_split(rows, columns) -> Split | None:
    """Highest-Gini-gain test over every column, or None if nothing splits.

    Scanning order (feature index ascending, candidates ascending) plus
    strictly-greater comparison yields the documented tie-breaking.
    """
    if len(rows) < 2:
        return None
    parent_c, parent_nc = _counts(rows)
    if parent_c == 0 or parent_nc == 0:
        return None
    parent_gini = _gini(parent_c, parent_nc)
    total = len(rows)

    best: Split | None = None
    for idx, column in enumerate(columns):
        if column.kind == CATEGORICAL:
            candidates = column.values
        else:
            values = sorted({values[idx] for values, _ in rows})
            candidates = [(a + b) / 2.0 for a, b in zip(values, values[1:])]
        for candidate in candidates:
            left_c = left_nc = right_c = right_nc = 0
            for values, label in rows:
                if column.kind == CATEGORICAL:
                    goes_left = values[idx] == candidate
                else:
                    goes_left = values[idx] <= candidate
                if goes_left:
                    if label == LABEL_NON_COMPLIANCE:
                        left_nc += 1
                    else:
                        left_c += 1
                else:
                    if label == LABEL_NON_COMPLIANCE:
                        right_nc += 1
                    else:
                        right_c += 1
            n_left = left_c + left_nc
            n_right = right_c + right_nc
            if n_left == 0 or n_right == 0:
                continue
            gain = parent_gini \
                - (n_left / total) * _gini(left_c, left_nc) \
                - (n_right / total) * _gini(right_c, right_nc)
            if best is None or gain > best.gain:
                best = Split(feature_index=idx, feature_name=column.name,
                             kind=column.kind, threshold=candidate, gain=gain)
    return best


def _grow(rows, columns, depth, max_depth, min_leaf, min_gain) -> TreeNode:
    n_c, n_nc = _counts(rows)
    leaf = TreeNode(split=None, count_compliance=n_c, count_non_compliance=n_nc)
    if depth >= max_depth or len(rows) < min_leaf or n_c == 0 or n_nc == 0:
        return leaf
    split = best_split(rows, columns)
    if split is None or split.gain < min_gain:
        return leaf
    left_rows = [row for row in rows if split.goes_left(row[0][split.feature_index])]
    right_rows = [row for row in rows if not split.goes_left(row[0][split.feature_index])]
    return TreeNode(
        split=split,
        left=_grow(left_rows, columns, depth + 1, max_depth, min_leaf, min_gain),
        right=_grow(right_rows, columns, depth + 1, max_depth, min_leaf, min_gain),
        count_compliance=n_c,
        count_non_compliance=n_nc,
    )


def induce_tree(dataset: LabeledDataset, max_depth: int = DEFAULT_MAX_DEPTH,
                min_leaf: int = DEFAULT_MIN_LEAF,
                min_gain: float = DEFAULT_MIN_GAIN) -> DecisionTree:
    if not dataset.rows:
        raise DomainError("cannot induce a tree from an empty dataset")
    root = _grow(list(dataset.rows), dataset.columns, 0,
                 max_depth, min_leaf, min_gain)
    return DecisionTree(root=root, columns=dataset.columns,
                        n_rows=len(dataset.rows), max_depth=max_depth,
                        min_leaf=min_leaf, min_gain=min_gain)


def predict(tree: DecisionTree, assignment: dict) -> float:
    """Non-compliance likelihood of the leaf the assignment falls into."""
    node = tree.root
    while not node.is_leaf:
        name = node.split.feature_name
        try:
            value = assignment[name]
        except KeyError:
            raise UnknownNameError(
                f"assignment missing feature {name!r}") from None
        node = node.left if node.split.goes_left(value) else node.right
    return node.likelihood


def tree_to_json(tree: DecisionTree) -> dict:
    def walk(node: TreeNode) -> dict:
        if node.is_leaf:
            return {
                "leaf": True,
                "count_compliance": node.count_compliance,
                "count_non_compliance": node.count_non_compliance,
                "likelihood": node.likelihood,
            }
        test = ("==" if node.split.kind == CATEGORICAL else "<=")
        return {
            "leaf": False,
            "feature": node.split.feature_name,
            "test": test,
            "threshold": node.split.threshold,
            "gain": node.split.gain,
            "left": walk(node.left),
            "right": walk(node.right),
        }

    return {
        "n_rows": tree.n_rows,
        "max_depth": tree.max_depth,
        "min_leaf": tree.min_leaf,
        "min_gain": tree.min_gain,
        "root": walk(tree.root),
    }
