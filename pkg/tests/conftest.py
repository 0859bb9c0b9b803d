import random

import pytest

from dualxp.bundled import poole_instance, poole_model
from dualxp.model import (
    DecisionTree,
    FeatureSpace,
    Instance,
    Leaf,
    Split,
    TreeStructure,
    validated,
)
from dualxp.synth import random_instance, random_space, random_tree

# feature indices of the book-recommendation tree
A, T, L, W = 0, 1, 2, 3
READS, SKIPS = 0, 1


@pytest.fixture(scope="session")
def poole():
    return poole_model()


@pytest.fixture(scope="session")
def e1(poole):
    return poole_instance(poole.space, A="known", T="new", L="long", W="home")


@pytest.fixture(scope="session")
def e2(poole):
    return poole_instance(poole.space, A="known", T="new", L="short", W="work")


# the worked instance with prediction skips; identical point to e1
e3_fixture = e1


@pytest.fixture(scope="session")
def constant_tree():
    space = FeatureSpace(("X", "Y"), (("a", "b"), ("0", "1")))
    return validated(DecisionTree(
        space, ("c0", "c1"), TreeStructure((Leaf(0),), 0)
    ))


@pytest.fixture(scope="session")
def three_class_tree():
    """class k1/k2/k3 determined entirely by X in {a, b, c}; Y vacuous."""
    space = FeatureSpace(("X", "Y"), (("a", "b", "c"), ("0", "1")))
    return validated(DecisionTree(
        space, ("k1", "k2", "k3"),
        TreeStructure((Split(0, (1, 2, 3)), Leaf(0), Leaf(1), Leaf(2)), 0),
    ))


def make_corpus(n_models: int, instances_per_model: int = 5, seed: int = 7,
                max_features: int = 6):
    """Random (tree, instance) pairs for cross-checking against brute force."""
    rng = random.Random(seed)
    corpus = []
    for _ in range(n_models):
        space = random_space(rng, rng.randint(2, max_features))
        tree = random_tree(rng, space, rng.randint(2, 3))
        for _ in range(instances_per_model):
            corpus.append((tree, random_instance(rng, space)))
    return corpus


@pytest.fixture(scope="session")
def small_corpus():
    return make_corpus(40)
