"""Seed mutation and breadth-first exploration of finite-type cluster algebras."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .algebra import LaurentPolynomial, NonExactDivisionError
from .quiver import Quiver, exchange_matrix

__all__ = [
    "Seed",
    "ExplorationResult",
    "ExplorationBudgetError",
    "initial_seed",
    "mutate",
    "mutate_matrix",
    "mutate_sequence",
    "explore",
    "cluster_count",
    "DEFAULT_SEED_BUDGET",
]

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_SEED_BUDGET = 10**6


class ExplorationBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class Seed:
    variables: tuple[LaurentPolynomial, ...]
    matrix: Matrix

    def __post_init__(self):
        n = len(self.variables)
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise ValueError("exchange matrix must be n x n")
        for i in range(n):
            for j in range(n):
                if self.matrix[i][j] != -self.matrix[j][i]:
                    raise ValueError("exchange matrix must be skew-symmetric")

    @property
    def rank(self) -> int:
        return len(self.variables)

    def cluster(self) -> frozenset[LaurentPolynomial]:
        return frozenset(self.variables)


def initial_seed(source: Quiver | Sequence[Sequence[int]]) -> Seed:
    B = exchange_matrix(source) if isinstance(source, Quiver) else tuple(tuple(r) for r in source)
    n = len(B)
    return Seed(LaurentPolynomial.variables(n), B)


def mutate_matrix(B: Matrix, k: int) -> Matrix:
    """Matrix mutation in direction ``k`` (1-based)."""
    n = len(B)
    w = k - 1
    out = []
    for y in range(n):
        row = []
        for z in range(n):
            if y == w or z == w:
                row.append(-B[y][z])
            else:
                row.append(B[y][z] + (abs(B[y][w]) * B[w][z] + B[y][w] * abs(B[w][z])) // 2)
        out.append(tuple(row))
    return tuple(out)


def mutate(seed: Seed, k: int) -> Seed:
    """Exchange the ``k``-th variable (1-based); raises NonExactDivisionError
    if the exchange binomial is not divisible by it."""
    n = seed.rank
    if not 1 <= k <= n:
        raise ValueError(f"direction {k} out of range 1..{n}")
    w = k - 1
    one = LaurentPolynomial.one(seed.variables[0].nvars)
    pos, neg = one, one
    for y in range(n):
        b = seed.matrix[y][w]
        if b > 0:
            pos = pos * seed.variables[y] ** b
        elif b < 0:
            neg = neg * seed.variables[y] ** (-b)
    try:
        new_var = (pos + neg).div_exact(seed.variables[w])
    except NonExactDivisionError as exc:
        raise NonExactDivisionError(f"exchange at direction {k} is not Laurent: {exc}") from exc
    variables = list(seed.variables)
    variables[w] = new_var
    return Seed(tuple(variables), mutate_matrix(seed.matrix, k))


def mutate_sequence(seed: Seed, directions: Sequence[int]) -> Seed:
    for k in directions:
        seed = mutate(seed, k)
    return seed


@dataclass(frozen=True)
class ExplorationResult:
    variables: frozenset[LaurentPolynomial]
    clusters: frozenset[frozenset[LaurentPolynomial]]
    seeds_visited: int
    exchange_pairs: frozenset[frozenset[LaurentPolynomial]] = frozenset()


def explore(
    source: Quiver | Sequence[Sequence[int]],
    budget: int = DEFAULT_SEED_BUDGET,
    rng: random.Random | None = None,
) -> ExplorationResult:
    """Close the initial seed under mutation.

    Seeds are deduplicated by their unordered cluster.  ``rng`` shuffles the
    order in which directions are tried, which must not change the result.
    """
    start = initial_seed(source)
    n = start.rank
    seen = {start.cluster()}
    queue = deque([start])
    variables = set(start.variables)
    pairs = set()
    visited = 0
    while queue:
        seed = queue.popleft()
        visited += 1
        directions = list(range(1, n + 1))
        if rng is not None:
            rng.shuffle(directions)
        for k in directions:
            nxt = mutate(seed, k)
            pairs.add(frozenset((seed.variables[k - 1], nxt.variables[k - 1])))
            key = nxt.cluster()
            if key in seen:
                continue
            if len(seen) >= budget:
                raise ExplorationBudgetError(
                    f"more than {budget} seeds; exchange matrix is probably not of finite type"
                )
            seen.add(key)
            variables.update(nxt.variables)
            queue.append(nxt)
    return ExplorationResult(frozenset(variables), frozenset(seen), visited, frozenset(pairs))


def cluster_count(source: Quiver | Sequence[Sequence[int]]) -> int:
    return len(explore(source).clusters)
