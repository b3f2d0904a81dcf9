"""Explain campaign archives: trees, rules, counterexamples, likelihoods."""

from .dataset import (LabeledDataset, build_dataset, dataset_from_rows,
                      estimate_event_likelihood)
from .rules import (AugmentationSet, Constraint, Rule, constraint_text,
                    extract_rules, generate_counterexamples, rules_report,
                    rules_to_json)
from .tree import (DEFAULT_MAX_DEPTH, DEFAULT_MIN_GAIN, DEFAULT_MIN_LEAF,
                   DecisionTree, Split, TreeNode, best_split, induce_tree,
                   predict, tree_to_json)

__all__ = [
    "LabeledDataset", "build_dataset", "dataset_from_rows",
    "estimate_event_likelihood",
    "AugmentationSet", "Constraint", "Rule", "constraint_text",
    "extract_rules", "generate_counterexamples", "rules_report",
    "rules_to_json",
    "DEFAULT_MAX_DEPTH", "DEFAULT_MIN_GAIN", "DEFAULT_MIN_LEAF",
    "DecisionTree", "Split", "TreeNode", "best_split", "induce_tree",
    "predict", "tree_to_json",
]
