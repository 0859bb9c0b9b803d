"""Single-explanation extraction: sufficient-reason sets (AXps), correction
sets (CXps), targeted CXps, and CXp witnesses.

AXps come from a deletion loop (linear in the number of features); CXps from
a grow-to-maximal loop over the literals kept fixed, reusing the last witness
to skip queries that cannot fail.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .hitting import HittingSetInstance, iterate_minimal_hitting_sets
from .model import Instance, ModelError, PartialAssignment
from .oracle import Oracle


class SeedNotSufficient(ModelError):
    """extract_axp was given a seed that does not entail the prediction."""


class TargetUnreachable(ModelError):
    """No instance at all predicts into the requested target classes."""


@dataclass(frozen=True, eq=False)
class ExplanationProblem:
    """One classifier / instance / prediction triple, with the contrast
    classes the explanation question is about (all other classes for the
    basic question, a chosen subset for targeted ones)."""

    oracle: Oracle
    instance: Instance
    predicted: int
    targets: frozenset[int]

    @property
    def n_features(self) -> int:
        return self.instance.n_features


def make_problem(oracle: Oracle, instance: Instance,
                 targets: Optional[Iterable[int]] = None,
                 expected: Optional[int] = None) -> ExplanationProblem:
    predicted = oracle.predict(instance)
    if expected is not None and expected != predicted:
        raise ModelError(
            f"instance predicts class {predicted}, not the stated class {expected}"
        )
    if targets is None:
        target_set = frozenset(range(oracle.n_classes)) - {predicted}
    else:
        target_set = frozenset(targets)
        if predicted in target_set:
            raise ModelError("target classes must exclude the predicted class")
        if not target_set:
            raise ModelError("target class set is empty")
    return ExplanationProblem(oracle, instance, predicted, target_set)


@dataclass(frozen=True)
class AXp:
    """Subset-minimal set of instance features sufficient for the prediction."""

    features: frozenset[int]

    def assignment(self, instance: Instance) -> PartialAssignment:
        return instance.restrict(self.features)


@dataclass(frozen=True)
class CXp:
    """Subset-minimal set of instance features whose release lets the
    prediction move into `targets`."""

    features: frozenset[int]
    targets: frozenset[int]

    def assignment(self, instance: Instance) -> PartialAssignment:
        return instance.restrict(self.features)


@dataclass(frozen=True)
class CxpWitness:
    """A CXp together with replacement values realizing the changed class."""

    cxp: CXp
    replacement: PartialAssignment
    witness_class: int


def _order(problem: ExplanationProblem, order: Optional[Sequence[int]]) -> list[int]:
    if order is None:
        return list(range(problem.n_features))
    if sorted(order) != list(range(problem.n_features)):
        raise ModelError("order must be a permutation of all feature indices")
    return list(order)


def extract_axp(problem: ExplanationProblem,
                seed: Optional[Iterable[int]] = None,
                order: Optional[Sequence[int]] = None) -> AXp:
    """Deletion-based extraction: exactly one entailment call per seed
    feature beyond the seed sufficiency check."""
    tau = problem.instance
    oracle = problem.oracle
    pi = problem.predicted
    seed_set = set(range(problem.n_features)) if seed is None else set(seed)
    if not oracle.entails(tau.restrict(seed_set), pi):
        raise SeedNotSufficient("the seed assignment does not entail the prediction")
    current = set(seed_set)
    for f in _order(problem, order):
        if f not in seed_set:
            continue
        if oracle.entails(tau.restrict(current - {f}), pi):
            current.discard(f)
    return AXp(frozenset(current))


def _grow_correction(problem: ExplanationProblem, kept: set[int],
                     order: Sequence[int],
                     witness: Optional[Instance]) -> Optional[CXp]:
    """Grow `kept` to a maximal set of fixed features that still admits a
    completion predicting into the targets; the complement is a CXp.

    `witness` must be a known target-class completion of the kept features
    (pass None to have it established with one query).  Features the current
    witness agrees with join for free; only disagreements cost a query.
    """
    tau = problem.instance
    oracle = problem.oracle
    if witness is None:
        witness = oracle.find_counterexample(tau.restrict(kept), problem.targets)
        if witness is None:
            return None
    for f in order:
        if f in kept:
            continue
        if witness.values[f] == tau.values[f]:
            kept.add(f)
            continue
        w = oracle.find_counterexample(tau.restrict(kept | {f}), problem.targets)
        if w is not None:
            kept.add(f)
            witness = w
    rho = frozenset(range(problem.n_features)) - frozenset(kept)
    return CXp(rho, problem.targets)


def extract_cxp(problem: ExplanationProblem,
                blocked: Iterable[frozenset[int]] = (),
                order: Optional[Sequence[int]] = None) -> Optional[CXp]:
    """One basic CXp not covering any blocked (previously reported) CXp, or
    None when every remaining correction is blocked.

    A returned CXp must keep at least one feature of each blocked set fixed,
    so the kept set is seeded with a minimal hitting set of the blocked
    collection; candidate seeds are tried in deterministic order.
    """
    ord_ = _order(problem, order)
    blocked = tuple(frozenset(b) for b in blocked)
    if not blocked:
        seeds: Iterable[frozenset[int]] = (frozenset(),)
    else:
        seeds = iterate_minimal_hitting_sets(
            HittingSetInstance(tuple(ord_), blocked)
        )
    for seed in seeds:
        cxp = _grow_correction(problem, set(seed), ord_, witness=None)
        if cxp is not None:
            return cxp
    return None


def targeted_cxp(problem: ExplanationProblem,
                 order: Optional[Sequence[int]] = None) -> CXp:
    """Fix features to their instance values while the target classes stay
    reachable; the features left unfixed form the targeted CXp."""
    ord_ = _order(problem, order)
    cxp = _grow_correction(problem, set(), ord_, witness=None)
    if cxp is None:
        raise TargetUnreachable(
            "no instance predicts into the requested target classes"
        )
    return cxp


def cxp_witness(problem: ExplanationProblem, cxp: CXp) -> CxpWitness:
    """Deterministic replacement values for the CXp's features."""
    tau = problem.instance
    fixed = frozenset(range(problem.n_features)) - cxp.features
    w = problem.oracle.find_counterexample(tau.restrict(fixed), problem.targets)
    if w is None:
        raise ModelError("internal defect: no witness exists for a valid CXp")
    replacement = w.restrict(cxp.features)
    return CxpWitness(cxp, replacement, problem.oracle.predict(w))


def check_axp(problem: ExplanationProblem, axp: AXp) -> list[str]:
    """Sufficiency plus per-feature necessity, checked by direct oracle calls."""
    tau = problem.instance
    oracle = problem.oracle
    problems = []
    if not oracle.entails(tau.restrict(axp.features), problem.predicted):
        problems.append("not sufficient for the prediction")
    for f in sorted(axp.features):
        if oracle.entails(tau.restrict(axp.features - {f}), problem.predicted):
            problems.append(f"feature {f} is redundant")
    return problems


def check_cxp(problem: ExplanationProblem, cxp: CXp) -> list[str]:
    """Target reachability after release plus per-feature necessity."""
    tau = problem.instance
    oracle = problem.oracle
    everything = frozenset(range(problem.n_features))
    problems = []
    if not cxp.features:
        problems.append("empty correction set")
        return problems
    if oracle.find_counterexample(
        tau.restrict(everything - cxp.features), cxp.targets
    ) is None:
        problems.append("releasing the set does not reach the target classes")
    for f in sorted(cxp.features):
        smaller = cxp.features - {f}
        if oracle.find_counterexample(
            tau.restrict(everything - smaller), cxp.targets
        ) is not None:
            problems.append(f"feature {f} is redundant")
    return problems
