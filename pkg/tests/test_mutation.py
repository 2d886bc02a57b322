import random

import pytest

from clusterhall.algebra import LaurentPolynomial as LP
from clusterhall.ccmap import cc_indecomposable
from clusterhall.mutation import (
    ExplorationBudgetError,
    Seed,
    cluster_count,
    explore,
    initial_seed,
    mutate,
    mutate_matrix,
    mutate_sequence,
)
from clusterhall.quiver import Quiver, type_a, type_d, type_e


def test_a2_first_mutation():
    s = mutate(initial_seed(type_a(2)), 1)
    u1, u2 = LP.variables(2)
    assert s.variables[0] == (u2 + 1).div_exact(u1)
    assert s.matrix == ((0, -1), (1, 0))


def test_mutation_is_involutive():
    q = type_d(4)
    s0 = initial_seed(q)
    for k in range(1, 5):
        s = mutate_sequence(s0, [k, k])
        assert s.variables == s0.variables and s.matrix == s0.matrix


def test_matrix_mutation_examples():
    sink = ((0, 1, 0), (-1, 0, -1), (0, 1, 0))  # 1 -> 2 <- 3
    assert mutate_matrix(sink, 2) == ((0, -1, 0), (1, 0, 1), (0, -1, 0))
    path = ((0, 1, 0), (-1, 0, 1), (0, -1, 0))  # 1 -> 2 -> 3 gains 1 -> 3
    assert mutate_matrix(path, 2) == ((0, -1, 1), (1, 0, -1), (-1, 1, 0))


def test_seed_validation():
    with pytest.raises(ValueError):
        Seed(LP.variables(2), ((0, 1), (1, 0)))


@pytest.mark.parametrize("q,variables,clusters", [
    (type_a(1), 2, 2),
    (type_a(2), 5, 5),
    (type_a(3), 9, 14),
    (type_a(4, "alt"), 14, 42),
    (type_a(5), 20, 132),
    (type_d(4), 16, 50),
    (type_d(5), 25, 182),
])
def test_counts(q, variables, clusters):
    r = explore(q)
    assert len(r.variables) == variables
    assert len(r.clusters) == clusters


def test_counts_independent_of_direction_order():
    q = type_a(4, "alt")
    base = explore(q)
    for seed in range(3):
        r = explore(q, rng=random.Random(seed))
        assert r.variables == base.variables and r.clusters == base.clusters


def test_a1_matches_simple_module():
    u1 = LP.variable(1, 1)
    r = explore(type_a(1))
    assert r.variables == {u1, cc_indecomposable(type_a(1), (1,))}
    assert cc_indecomposable(type_a(1), (1,)) == 2 * u1 ** -1


def test_budget_on_infinite_type():
    with pytest.raises(ExplorationBudgetError):
        explore(((0, 2), (-2, 0)), budget=30)


def test_exchange_pairs_contain_initial_exchanges():
    q = type_a(3)
    r = explore(q)
    s0 = initial_seed(q)
    for k in range(1, 4):
        assert frozenset((s0.variables[k - 1], mutate(s0, k).variables[k - 1])) in r.exchange_pairs


def test_cluster_count_helper():
    assert cluster_count(Quiver(2, [(2, 1)])) == 5


@pytest.mark.slow
def test_e6_counts():
    r = explore(type_e(6))
    assert (len(r.variables), len(r.clusters)) == (42, 833)
