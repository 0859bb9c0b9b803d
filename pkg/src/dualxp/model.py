"""Domain types: categorical feature spaces, literals, instances and tree classifiers.

All types are frozen dataclasses and safe to share across workers once validated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

MAX_SPACE_SIZE = 2 ** 62


class ModelError(Exception):
    """Base class for model construction / validation failures."""


class InconsistentAssignment(ModelError):
    """Two literals on the same feature with different values."""


class ValidationError(ModelError):
    """A classifier failed structural validation; carries the full report."""

    def __init__(self, problems: Sequence[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


@dataclass(frozen=True)
class FeatureSpace:
    """Ordered categorical features, each with a finite non-empty domain."""

    names: tuple[str, ...]
    domains: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if len(self.names) != len(self.domains):
            raise ModelError("feature names and domains differ in length")
        if len(set(self.names)) != len(self.names):
            raise ModelError("duplicate feature names")
        size = 1
        for name, dom in zip(self.names, self.domains):
            if not dom:
                raise ModelError(f"feature '{name}' has an empty domain")
            if len(set(dom)) != len(dom):
                raise ModelError(f"feature '{name}' has duplicate category names")
            size *= len(dom)
            if size > MAX_SPACE_SIZE:
                raise ModelError(f"instance space larger than 2^62")

    @property
    def n_features(self) -> int:
        return len(self.names)

    def domain_size(self, feature: int) -> int:
        return len(self.domains[feature])

    def space_size(self) -> int:
        return math.prod(len(d) for d in self.domains)

    def feature_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ModelError(f"unknown feature '{name}'") from None

    def value_index(self, feature: int, category: str) -> int:
        try:
            return self.domains[feature].index(category)
        except ValueError:
            raise ModelError(
                f"unknown category '{category}' for feature '{self.names[feature]}'"
            ) from None


@dataclass(frozen=True, order=True)
class Literal:
    """A single (feature = value) pair, both stored as indices."""

    feature: int
    value: int


@dataclass(frozen=True)
class PartialAssignment:
    """A consistent set of literals: at most one per feature (a cube)."""

    literals: frozenset[Literal]

    def __post_init__(self) -> None:
        feats = [l.feature for l in self.literals]
        if len(set(feats)) != len(feats):
            raise InconsistentAssignment("two literals on the same feature")

    @staticmethod
    def empty() -> "PartialAssignment":
        return PartialAssignment(frozenset())

    @staticmethod
    def of(pairs: Iterable[tuple[int, int]]) -> "PartialAssignment":
        return PartialAssignment(frozenset(Literal(f, v) for f, v in pairs))

    def value_of(self, feature: int) -> Optional[int]:
        for l in self.literals:
            if l.feature == feature:
                return l.value
        return None

    @property
    def features(self) -> frozenset[int]:
        return frozenset(l.feature for l in self.literals)

    def with_literal(self, literal: Literal) -> "PartialAssignment":
        return PartialAssignment(self.literals | {literal})

    def union(self, other: "PartialAssignment") -> "PartialAssignment":
        return PartialAssignment(self.literals | other.literals)

    def restrict(self, keep: Iterable[int]) -> "PartialAssignment":
        keep = set(keep)
        return PartialAssignment(
            frozenset(l for l in self.literals if l.feature in keep)
        )

    def issubset(self, other: "PartialAssignment") -> bool:
        return self.literals <= other.literals

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(sorted(self.literals))

    def __contains__(self, literal: Literal) -> bool:
        return literal in self.literals


@dataclass(frozen=True)
class Instance:
    """A full assignment: one value index per feature, in feature order."""

    values: tuple[int, ...]

    def literal(self, feature: int) -> Literal:
        return Literal(feature, self.values[feature])

    def assignment(self) -> PartialAssignment:
        return PartialAssignment.of(enumerate(self.values))

    def restrict(self, keep: Iterable[int]) -> PartialAssignment:
        keep = set(keep)
        return PartialAssignment.of((f, v) for f, v in enumerate(self.values) if f in keep)

    def agrees(self, literal: Literal) -> bool:
        return self.values[literal.feature] == literal.value

    @property
    def n_features(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Leaf:
    """Terminal node; `value` is a class index for decision trees and an
    integer fixed-point score for ensemble regressors."""

    value: int


@dataclass(frozen=True)
class Split:
    """Internal node: one child id per category of `feature` (total map)."""

    feature: int
    children: tuple[int, ...]


Node = Union[Leaf, Split]


@dataclass(frozen=True)
class TreeStructure:
    """A node array plus root id; shared by classifiers and regressors."""

    nodes: tuple[Node, ...]
    root: int


@dataclass(frozen=True)
class DecisionTree:
    space: FeatureSpace
    classes: tuple[str, ...]
    tree: TreeStructure

    @property
    def n_classes(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class AdditiveEnsemble:
    """Per-class regressor trees with integer leaf scores.

    Prediction is the argmax over classes of the summed scores, ties broken
    by the lowest class index.  `scale` records the fixed-point factor the
    scores were multiplied by; the arithmetic itself stays exact.
    """

    space: FeatureSpace
    classes: tuple[str, ...]
    trees: tuple[tuple[TreeStructure, ...], ...]
    scale: int

    @property
    def n_classes(self) -> int:
        return len(self.classes)


Classifier = Union[DecisionTree, AdditiveEnsemble]


def _check_tree(space: FeatureSpace, tree: TreeStructure, where: str,
                leaf_check, problems: list[str]) -> None:
    n = len(tree.nodes)
    if not (0 <= tree.root < n):
        problems.append(f"{where}: root id {tree.root} out of range")
        return
    # DFS from root; detect cycles, repeated path features, non-total children
    visited: set[int] = set()

    def walk(node_id: int, path_feats: set[int], on_path: set[int]) -> None:
        if node_id in on_path:
            problems.append(f"{where}: cycle through node {node_id}")
            return
        visited.add(node_id)
        node = tree.nodes[node_id]
        if isinstance(node, Leaf):
            leaf_check(node_id, node)
            return
        if not (0 <= node.feature < space.n_features):
            problems.append(f"{where}: node {node_id} feature index out of range")
            return
        if node.feature in path_feats:
            problems.append(
                f"{where}: feature '{space.names[node.feature]}' repeats on the "
                f"path to node {node_id}"
            )
        if len(node.children) != space.domain_size(node.feature):
            problems.append(
                f"{where}: node {node_id} non-total children map for feature "
                f"'{space.names[node.feature]}' "
                f"({len(node.children)} of {space.domain_size(node.feature)})"
            )
            return
        for child in node.children:
            if not (0 <= child < n):
                problems.append(f"{where}: node {node_id} child id {child} out of range")
                continue
            walk(child, path_feats | {node.feature}, on_path | {node_id})

    walk(tree.root, set(), set())
    unreachable = set(range(n)) - visited
    if unreachable:
        problems.append(
            f"{where}: nodes unreachable from root: {sorted(unreachable)}"
        )


def validate(classifier: Classifier) -> list[str]:
    """Structural validation; returns the list of problems (empty means ok)."""
    problems: list[str] = []
    space = classifier.space
    if isinstance(classifier, DecisionTree):
        if len(classifier.classes) < 2:
            problems.append("fewer than two classes")

        def leaf_check(node_id: int, leaf: Leaf) -> None:
            if not (0 <= leaf.value < len(classifier.classes)):
                problems.append(f"tree: leaf {node_id} class index {leaf.value} out of range")

        _check_tree(space, classifier.tree, "tree", leaf_check, problems)
    else:
        if len(classifier.classes) < 2:
            problems.append("fewer than two classes")
        if len(classifier.trees) != len(classifier.classes):
            problems.append(
                f"ensemble: {len(classifier.trees)} tree groups for "
                f"{len(classifier.classes)} classes"
            )
        if classifier.scale < 1:
            problems.append("ensemble: scale must be a positive integer")
        for ci, group in enumerate(classifier.trees):
            for ti, tree in enumerate(group):
                def leaf_check(node_id: int, leaf: Leaf, _w=f"class {ci} tree {ti}") -> None:
                    if not isinstance(leaf.value, int) or isinstance(leaf.value, bool):
                        problems.append(f"{_w}: leaf {node_id} score is not an integer")

                _check_tree(space, tree, f"class {ci} tree {ti}", leaf_check, problems)
    return problems


def validated(classifier: Classifier) -> Classifier:
    """Raise ValidationError unless `classifier` is structurally sound."""
    problems = validate(classifier)
    if problems:
        raise ValidationError(problems)
    return classifier
