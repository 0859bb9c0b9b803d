import pytest

from conftest import A, L, READS, SKIPS, T, W, e3_fixture
from dualxp.dual import brute_force_corrections, brute_force_explanations
from dualxp.explain import (
    SeedNotSufficient,
    TargetUnreachable,
    check_axp,
    check_cxp,
    cxp_witness,
    extract_axp,
    extract_cxp,
    make_problem,
    targeted_cxp,
)
from dualxp.model import Instance, ModelError, PartialAssignment
from dualxp.oracle import Oracle, OracleStats


def problem_for(classifier, instance, targets=None):
    return make_problem(Oracle(classifier), instance, targets=targets)


def test_make_problem_checks(poole, e2):
    with pytest.raises(ModelError):
        make_problem(Oracle(poole), e2, expected=SKIPS)
    with pytest.raises(ModelError):
        make_problem(Oracle(poole), e2, targets={READS})
    problem = make_problem(Oracle(poole), e2, expected=READS)
    assert problem.targets == frozenset({SKIPS})


def test_axp_goldens(poole, e1, e2):
    assert extract_axp(problem_for(poole, e2)).features == frozenset({L, T})
    assert extract_axp(problem_for(poole, e1)).features == frozenset({L})


def test_axp_constant(constant_tree):
    problem = problem_for(constant_tree, Instance((0, 0)))
    assert extract_axp(problem).features == frozenset()


def test_axp_order_sensitivity(poole, e2):
    # dropping T before A lands on the other minimal sufficient set
    axp = extract_axp(problem_for(poole, e2), order=[T, A, L, W])
    assert axp.features == frozenset({L, A})
    # both outcomes are exactly the brute-force family
    axps, _ = brute_force_explanations(poole, e2)
    assert set(axps) == {frozenset({L, T}), frozenset({L, A})}


def test_axp_seed(poole, e2):
    axp = extract_axp(problem_for(poole, e2), seed={L, T, A})
    assert axp.features == frozenset({L, T})
    with pytest.raises(SeedNotSufficient):
        extract_axp(problem_for(poole, e2), seed={A, W})


def test_axp_call_count(poole, e2):
    stats = OracleStats()
    problem = make_problem(Oracle(poole, stats), e2)
    before = stats.entailment_calls
    extract_axp(problem)
    # one seed sufficiency check plus exactly one deletion probe per feature
    assert stats.entailment_calls - before == e2.n_features + 1


def test_cxp_goldens(poole, e1, e2):
    assert extract_cxp(problem_for(poole, e1)).features == frozenset({L})
    assert extract_cxp(problem_for(poole, e2)).features == frozenset({L})


def test_cxp_blocking(poole, e2):
    problem = problem_for(poole, e2)
    assert extract_cxp(problem, blocked=[frozenset({L})]).features == frozenset({T, A})
    assert extract_cxp(
        problem, blocked=[frozenset({L}), frozenset({T, A})]
    ) is None


def test_cxp_constant(constant_tree):
    problem = problem_for(constant_tree, Instance((0, 0)))
    assert extract_cxp(problem) is None


def test_cxp_call_count(poole, e2):
    stats = OracleStats()
    problem = make_problem(Oracle(poole, stats), e2)
    before = stats.witness_calls
    extract_cxp(problem)
    # one seed feasibility check plus at most one grow probe per feature
    assert stats.witness_calls - before <= e2.n_features + 1


def test_checkers(poole, e2):
    problem = problem_for(poole, e2)
    assert check_axp(problem, extract_axp(problem)) == []
    assert check_cxp(problem, extract_cxp(problem)) == []
    from dualxp.explain import AXp, CXp
    assert check_axp(problem, AXp(frozenset({A}))) != []
    assert check_axp(problem, AXp(frozenset({L, T, A}))) != []
    assert check_cxp(problem, CXp(frozenset({W}), problem.targets)) != []
    assert check_cxp(problem, CXp(frozenset({L, W}), problem.targets)) != []


def test_targeted_three_class(three_class_tree):
    tau = Instance((0, 0))
    for targets in [{2}, {1}, {1, 2}]:
        problem = problem_for(three_class_tree, tau, targets=targets)
        cxp = targeted_cxp(problem)
        assert cxp.features == frozenset({0})
        family = brute_force_corrections(three_class_tree, tau,
                                         frozenset(targets))
        assert cxp.features in family
        witness = cxp_witness(problem, cxp)
        assert witness.witness_class in targets


def test_targeted_unreachable(three_class_tree):
    # a class list can mention classes no leaf carries
    from dualxp.model import (DecisionTree, FeatureSpace, Leaf, Split,
                              TreeStructure, validated)
    space = FeatureSpace(("X",), (("a", "b"),))
    tree = validated(DecisionTree(
        space, ("k1", "k2", "k3"),
        TreeStructure((Split(0, (1, 2)), Leaf(0), Leaf(1)), 0),
    ))
    problem = problem_for(tree, Instance((0,)), targets={2})
    with pytest.raises(TargetUnreachable):
        targeted_cxp(problem)


def test_targeted_binary_equals_basic(small_corpus):
    for tree, instance in small_corpus:
        if tree.n_classes != 2:
            continue
        basic = extract_cxp(problem_for(tree, instance))
        oracle = Oracle(tree)
        pi = oracle.predict(instance)
        other = 1 - pi
        problem = make_problem(oracle, instance, targets={other})
        try:
            targeted = targeted_cxp(problem)
        except TargetUnreachable:
            assert basic is None
            continue
        assert basic is not None
        assert check_cxp(problem, targeted) == []
        assert targeted.features == basic.features


def test_cxp_witness_goldens(poole, e2):
    problem = problem_for(poole, e2)
    space = poole.space

    cxp = extract_cxp(problem)
    witness = cxp_witness(problem, cxp)
    assert witness.replacement == PartialAssignment.of(
        [(L, space.value_index(L, "long"))]
    )
    assert witness.witness_class == SKIPS

    cxp2 = extract_cxp(problem, blocked=[frozenset({L})])
    witness2 = cxp_witness(problem, cxp2)
    assert witness2.replacement == PartialAssignment.of([
        (T, space.value_index(T, "followUp")),
        (A, space.value_index(A, "unknown")),
    ])


def test_extracted_explanations_pass_checkers(small_corpus):
    for tree, instance in small_corpus[:80]:
        problem = problem_for(tree, instance)
        assert check_axp(problem, extract_axp(problem)) == []
        cxp = extract_cxp(problem)
        if cxp is not None:
            assert check_cxp(problem, cxp) == []
