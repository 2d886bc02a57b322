import itertools
import random
from fractions import Fraction

import pytest

from clusterhall import repmod
from clusterhall.quiver import Quiver, orientations, positive_roots, projective_vectors, type_a, type_d, type_e
from clusterhall.repmod import (
    EnumerationBudgetError,
    NonPolynomialCountError,
    UnsupportedQuiverError,
    build_indecomposable,
    build_module,
    chi_type_A,
    count_polynomial,
    count_submodules,
    count_submodules_naive,
    direct_sum,
    ext1_dim,
    grassmannian_chi,
    grassmannian_chis,
    hom_dim,
    interpolate,
    set_prime_pool,
)

D4 = Quiver(4, [(1, 2), (3, 2), (4, 2)])
TOP = (1, 2, 1, 1)


@pytest.mark.parametrize("q", [Quiver(3, [(1, 2), (3, 2)]), type_a(4, "equi"), D4, type_d(5), type_e(6)])
@pytest.mark.parametrize("p", [2, 3])
def test_indecomposables_are_bricks(q, p):
    for d in positive_roots(q):
        M = build_indecomposable(q, d, p)
        assert M.dims == d
        assert hom_dim(M, M) == 1
        assert ext1_dim(M, M) == 0


def test_hom_from_projective_reads_dimension():
    q = type_d(5)
    for d in positive_roots(q):
        M = build_indecomposable(q, d, 3)
        for i, pv in enumerate(projective_vectors(q)):
            assert hom_dim(build_indecomposable(q, pv, 3), M) == d[i]


def test_d4_top_root_line_of_submodules():
    M2 = build_indecomposable(D4, TOP, 2)
    M3 = build_indecomposable(D4, TOP, 3)
    e = (0, 1, 0, 0)
    assert count_submodules(M2, e) == 3
    assert count_submodules(M3, e) == 4
    assert grassmannian_chi(D4, TOP, e) == 2


def test_d4_top_root_submodule_classes():
    chis = grassmannian_chis(D4, TOP)
    assert len(chis) == 13
    assert sum(chis.values()) == 14
    assert chis[(0, 2, 0, 0)] == 1 and chis[(0, 1, 0, 0)] == 2


def test_tree_counter_matches_naive_on_direct_sums():
    rng = random.Random(5)
    for q in [D4, type_a(4, "alt"), type_d(5)]:
        roots = positive_roots(q)
        for _ in range(5):
            a, b = rng.choice(roots), rng.choice(roots)
            for p in (2, 3):
                M = build_module(q, [(a, 1), (b, 1)] if a != b else [(a, 2)], p)
                for e in itertools.product(*(range(x + 1) for x in M.dims)):
                    assert count_submodules(M, e, None) == count_submodules_naive(M, e, None)


def test_direct_sum_dims_and_endomorphisms():
    S1 = build_indecomposable(D4, (1, 0, 0, 0), 2)
    S2 = build_indecomposable(D4, (0, 1, 0, 0), 2)
    M = direct_sum(S1, S2, S2)
    assert M.dims == (1, 2, 0, 0)
    assert hom_dim(M, M) == 1 + 4  # End(S1) + End(S2 + S2); distinct simples have no maps between them


def test_count_polynomial_shape():
    poly = count_polynomial(D4, TOP, (0, 1, 0, 0))
    assert poly.coefficients == (1, 1)
    assert poly(7) == 8
    assert poly.held_out[0] not in [p for p, _ in poly.samples]
    assert poly.euler_characteristic == 2


def test_interpolation_is_exact():
    pts = [(x, 3 * x * x - x + 4) for x in (2, 3, 5)]
    assert interpolate(pts) == [Fraction(4), Fraction(-1), Fraction(3)]


def test_non_polynomial_counts_are_detected(monkeypatch):
    monkeypatch.setattr(repmod, "count_submodules", lambda M, e, budget=None: M.p % 3)
    with pytest.raises(NonPolynomialCountError):
        count_polynomial(D4, TOP, (0, 1, 0, 0))


def test_budget_is_reported():
    M = build_module(type_d(5), [((1, 2, 1, 2, 1), 2)], 7)
    with pytest.raises(EnumerationBudgetError) as err:
        count_submodules(M, (1, 2, 1, 2, 1), budget=10)
    assert err.value.required > 10


def test_e7_e8_refused():
    for n in (7, 8):
        with pytest.raises(UnsupportedQuiverError):
            grassmannian_chi(type_e(n), positive_roots(type_e(n))[-1], (0,) * n)


def test_prime_pool():
    try:
        set_prime_pool([7, 11, 13, 17, 19])
        assert count_polynomial(D4, TOP, (0, 1, 0, 0)).samples[0][0] == 7
        with pytest.raises(ValueError):
            set_prime_pool([4, 5])
    finally:
        set_prime_pool(None)
    assert count_polynomial(D4, TOP, (0, 1, 0, 0)).samples[0][0] == 2


@pytest.mark.parametrize("q", list(orientations(type_a(4))) + [type_a(5, "alt")])
def test_chi_type_a_closed_form(q):
    for d in positive_roots(q):
        for e in itertools.product(*(range(x + 1) for x in d)):
            assert chi_type_A(q, d, e) == grassmannian_chi(q, d, e)
