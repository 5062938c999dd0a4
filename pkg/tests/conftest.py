"""Shared fixtures: the worked six-element instance, a twelve-cycle
instance, and seeded random generators."""

from __future__ import annotations

import random

import pytest

from hproduct import (
    Digraph,
    Family,
    Graph,
    HAssignment,
    Permutation,
    RootedTree,
    UnicyclicForm,
    to_one_regular,
)

# The m=4, n=6 instance whose two assignments share an image multiset yet
# produce non-isomorphic products ({16,8} vs {4,20}). Factor permutations
# in host arc order.
EX_CYCLES = {
    "F1": "(1 2 3 4 5 6)",
    "F2": "(1 3 5 4 2 6)",
    "F1r": "(1 6 5 4 3 2)",
    "F3": "(1 5 4 6 3 2)",
}
EX_H_NAMES = ["F1", "F2", "F1r", "F3"]
EX_HPRIME_NAMES = ["F1", "F3", "F1r", "F2"]


@pytest.fixture(scope="session")
def ex_perms() -> dict[str, Permutation]:
    return {k: Permutation.from_cycle_string(v, 6) for k, v in EX_CYCLES.items()}


@pytest.fixture(scope="session")
def ex_family(ex_perms) -> Family:
    return Family(6, [(name, to_one_regular(p)) for name, p in ex_perms.items()])


def cycle_assignment(names: list[str]) -> HAssignment:
    m = len(names)
    return HAssignment(m, (((i, (i + 1) % m), names[i]) for i in range(m)))


@pytest.fixture(scope="session")
def ex_h() -> HAssignment:
    return cycle_assignment(EX_H_NAMES)


@pytest.fixture(scope="session")
def ex_hprime() -> HAssignment:
    return cycle_assignment(EX_HPRIME_NAMES)


# A three-color instance on four vertices whose product is one strongly
# oriented 12-cycle: members distinct, union multidigraph eulerian, one
# rainbow circuit.
TWELVE_CYCLES = ["(1 2 3 4)", "(1 2)(3 4)", "(1 4)(2 3)"]


@pytest.fixture(scope="session")
def twelve_family() -> Family:
    members = [
        (f"h{i + 1}", to_one_regular(Permutation.from_cycle_string(s, 4)))
        for i, s in enumerate(TWELVE_CYCLES)
    ]
    return Family(4, members)


@pytest.fixture(scope="session")
def twelve_h() -> HAssignment:
    return cycle_assignment(["h1", "h2", "h3"])


def random_permutation(rng: random.Random, n: int) -> Permutation:
    image = list(range(n))
    rng.shuffle(image)
    return Permutation(image)


def random_one_regular(rng: random.Random, n: int) -> Digraph:
    return to_one_regular(random_permutation(rng, n))


def path_tree(order: int, root: int = 0) -> RootedTree:
    """The path on ``order`` vertices rooted at position ``root``."""
    return RootedTree(Graph(order, [(i, i + 1) for i in range(order - 1)]), root)


def random_tree(rng: random.Random, max_order: int) -> RootedTree:
    order = rng.randint(1, max_order)
    edges = [(rng.randrange(i), i) for i in range(1, order)]
    return RootedTree(Graph(order, edges), rng.randrange(order))


def random_form(rng: random.Random, max_cycle: int = 5, max_tree: int = 4) -> UnicyclicForm:
    m = rng.randint(3, max_cycle)
    return UnicyclicForm([random_tree(rng, max_tree) for _ in range(m)])
