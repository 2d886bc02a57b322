import random

import pytest

from clusterhall.algebra import LaurentPolynomial as LP
from clusterhall.ccmap import (
    cc_all,
    cc_denominator_check,
    cc_direct_sum,
    cc_exponent,
    cc_indecomposable,
    cc_module,
)
from clusterhall.quiver import Quiver, QuiverError, positive_roots, type_a, type_d

A3 = Quiver(3, [(1, 2), (3, 2)])
u1, u2, u3 = LP.variables(3)


def frac(num: str, den: tuple[int, ...]) -> LP:
    return LP.parse(num, len(den)) * LP.monomial(tuple(-x for x in den))


A3_VALUES = {
    (0, 1, 0): frac("u1*u3 + 1", (0, 1, 0)),
    (0, 1, 1): frac("1 + u2 + u1*u3", (0, 1, 1)),
    (1, 1, 0): frac("1 + u2 + u1*u3", (1, 1, 0)),
    (1, 1, 1): frac("1 + 2*u2 + u2^2 + u1*u3", (1, 1, 1)),
    (1, 0, 0): frac("1 + u2", (1, 0, 0)),
    (0, 0, 1): frac("1 + u2", (0, 0, 1)),
}


@pytest.mark.parametrize("d", list(A3_VALUES))
def test_a3_values(d):
    assert cc_indecomposable(A3, d) == A3_VALUES[d]


def test_i2_from_listed_monomials():
    # the five listed terms of X_{I_2}, summed
    terms = [u2 ** -1, (u1 * u3) ** -1, (u1 * u3) ** -1, (u1 * u2 * u3) ** -1, u2 * (u1 * u3) ** -1]
    assert sum(terms, LP.zero(3)) == cc_indecomposable(A3, (1, 1, 1))


def test_d4_top_value():
    q = Quiver(4, [(1, 2), (3, 2), (4, 2)])
    U = LP.variables(4)
    num = (1 + U[1]) ** 3 + 2 * U[0] * U[2] * U[3] + 3 * U[0] * U[1] * U[2] * U[3] + (U[0] * U[2] * U[3]) ** 2
    expected = num * LP.monomial((-1, -2, -1, -1))
    assert cc_indecomposable(q, (1, 2, 1, 1)) == expected


def test_exponent_of_zero_submodule():
    # e = 0 gives prod u_i^{-<a_i, m>}
    assert cc_exponent(A3, (0, 1, 0), (0, 0, 0)) == (1, -1, 1)
    assert cc_exponent(A3, (0, 1, 0), (0, 1, 0)) == (0, -1, 0)


def test_equioriented_term_count():
    q = type_a(5, "equi")
    for d in positive_roots(q):
        assert len(cc_indecomposable(q, d)) == sum(d) + 1


def test_not_a_root():
    with pytest.raises(QuiverError):
        cc_indecomposable(A3, (1, 0, 1))


@pytest.mark.parametrize("q", [A3, type_a(4, "equi"), type_d(4), type_d(5)])
def test_denominators(q):
    assert all(cc_denominator_check(q, d) for d in positive_roots(q))


def test_direct_sums():
    q = type_d(4)
    rng = random.Random(3)
    roots = positive_roots(q)
    for _ in range(15):
        a, b = rng.choice(roots), rng.choice(roots)
        spec = [(a, 2)] if a == b else [(a, 1), (b, 1)]
        assert cc_direct_sum(q, spec) == cc_module(q, spec)
    assert cc_direct_sum(q, []) == 1


def test_cc_all_parallel_matches_serial():
    q = type_d(5)
    assert cc_all(q, jobs=2) == cc_all(q, jobs=1)
