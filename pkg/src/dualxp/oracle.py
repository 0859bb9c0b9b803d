"""Exact entailment and counterexample queries against a tree classifier.

Decision trees are answered by feasible-path traversal; additive ensembles by
exhaustive enumeration of the free-feature product, guarded by a completion
cap.  Every public query bumps the per-session OracleStats exactly once.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Optional

from .model import (
    AdditiveEnsemble,
    Classifier,
    DecisionTree,
    Instance,
    Leaf,
    ModelError,
    PartialAssignment,
    TreeStructure,
)

DEFAULT_COMPLETION_CAP = 2 ** 20


class SearchSpaceExceeded(ModelError):
    """The free-feature product of an ensemble query exceeds the cap."""


@dataclass
class OracleStats:
    """Query counters and wall-time accumulators for one explanation session."""

    predict_calls: int = 0
    entailment_calls: int = 0
    witness_calls: int = 0
    entailment_time: float = 0.0
    witness_time: float = 0.0

    @property
    def total_calls(self) -> int:
        return self.predict_calls + self.entailment_calls + self.witness_calls


def raw_predict(classifier: Classifier, values: tuple[int, ...]) -> int:
    """Class index for a full assignment, bypassing any oracle bookkeeping."""
    if isinstance(classifier, DecisionTree):
        return _walk(classifier.tree, values)
    scores = [
        sum(_walk(tree, values) for tree in group) for group in classifier.trees
    ]
    return max(range(len(scores)), key=lambda c: (scores[c], -c))


def _walk(tree: TreeStructure, values: tuple[int, ...]) -> int:
    node = tree.nodes[tree.root]
    while not isinstance(node, Leaf):
        node = tree.nodes[node.children[values[node.feature]]]
    return node.value


def _tree_can_reach(tree: TreeStructure, sigma_values: list[Optional[int]],
                    targets: frozenset[int]) -> bool:
    """True iff some leaf with class in `targets` is feasible under sigma."""

    def walk(node_id: int) -> bool:
        node = tree.nodes[node_id]
        if isinstance(node, Leaf):
            return node.value in targets
        fixed = sigma_values[node.feature]
        if fixed is not None:
            return walk(node.children[fixed])
        return any(walk(child) for child in node.children)

    return walk(tree.root)


class Oracle:
    """Stateful query interface over an immutable classifier.

    One Oracle per explanation session: the stats object is the only mutable
    state.  The prediction cache is keyed on full value tuples and is exact,
    so sharing it within a session is safe.
    """

    def __init__(self, classifier: Classifier, stats: Optional[OracleStats] = None,
                 completion_cap: int = DEFAULT_COMPLETION_CAP):
        self.classifier = classifier
        self.stats = stats if stats is not None else OracleStats()
        self.completion_cap = completion_cap
        self._cache: dict[tuple[int, ...], int] = {}

    @property
    def space(self):
        return self.classifier.space

    @property
    def n_classes(self) -> int:
        return self.classifier.n_classes

    def predict(self, instance: Instance) -> int:
        self.stats.predict_calls += 1
        return self._predict(instance.values)

    def entails(self, sigma: PartialAssignment, target_class: int) -> bool:
        """True iff every completion of sigma predicts `target_class`."""
        self.stats.entailment_calls += 1
        t0 = time.perf_counter()
        others = frozenset(range(self.n_classes)) - {target_class}
        try:
            return self._find_completion(sigma, others) is None
        finally:
            self.stats.entailment_time += time.perf_counter() - t0

    def find_counterexample(self, sigma: PartialAssignment,
                            targets: frozenset[int]) -> Optional[Instance]:
        """Lexicographically first completion of sigma predicting into `targets`."""
        if not targets:
            raise ValueError("targets must be non-empty")
        self.stats.witness_calls += 1
        t0 = time.perf_counter()
        try:
            return self._find_completion(sigma, frozenset(targets))
        finally:
            self.stats.witness_time += time.perf_counter() - t0

    # internal machinery (not counted in stats)

    def _predict(self, values: tuple[int, ...]) -> int:
        cached = self._cache.get(values)
        if cached is None:
            cached = raw_predict(self.classifier, values)
            self._cache[values] = cached
        return cached

    def _find_completion(self, sigma: PartialAssignment,
                         targets: frozenset[int]) -> Optional[Instance]:
        sigma_values: list[Optional[int]] = [None] * self.space.n_features
        for lit in sigma.literals:
            sigma_values[lit.feature] = lit.value
        if isinstance(self.classifier, DecisionTree):
            return self._tree_completion(sigma_values, targets)
        return self._ensemble_completion(sigma_values, targets)

    def _tree_completion(self, sigma_values: list[Optional[int]],
                         targets: frozenset[int]) -> Optional[Instance]:
        tree = self.classifier.tree
        if not _tree_can_reach(tree, sigma_values, targets):
            return None
        # greedy per-feature fixing keeps the result lexicographically first
        values = list(sigma_values)
        for f in range(self.space.n_features):
            if values[f] is not None:
                continue
            for v in range(self.space.domain_size(f)):
                values[f] = v
                if _tree_can_reach(tree, values, targets):
                    break
                values[f] = None
            assert values[f] is not None
        return Instance(tuple(values))

    def _ensemble_completion(self, sigma_values: list[Optional[int]],
                             targets: frozenset[int]) -> Optional[Instance]:
        free = [f for f, v in enumerate(sigma_values) if v is None]
        count = 1
        for f in free:
            count *= self.space.domain_size(f)
            if count > self.completion_cap:
                raise SearchSpaceExceeded(
                    f"free-feature product exceeds the completion cap "
                    f"({self.completion_cap}); fix more features or use a "
                    f"smaller model"
                )
        for combo in itertools.product(
            *(range(self.space.domain_size(f)) for f in free)
        ):
            values = list(sigma_values)
            for f, v in zip(free, combo):
                values[f] = v
            full = tuple(values)
            if self._predict(full) in targets:
                return Instance(full)
        return None
