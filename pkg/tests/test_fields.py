import itertools

import pytest
from hypothesis import given, settings, strategies as st

from clusterhall.fields import (
    PrimeField,
    first_primes,
    gaussian_binomial,
    in_row_space,
    is_prime,
    left_kernel_integral,
    null_space,
    rank_mod_p,
    rref,
    subspaces,
)


def brute_subspace_count(m: int, k: int, p: int) -> int:
    """Distinct row spaces of all k-tuples of vectors of rank k."""
    seen = set()
    vecs = list(itertools.product(range(p), repeat=m))
    for rows in itertools.product(vecs, repeat=k):
        R, piv = rref([list(r) for r in rows], p)
        if len(piv) == k:
            seen.add(tuple(map(tuple, R)))
    return len(seen)


def test_primes():
    assert first_primes(6) == [2, 3, 5, 7, 11, 13]
    assert is_prime(97) and not is_prime(91) and not is_prime(1)
    with pytest.raises(ValueError):
        PrimeField(4)


@pytest.mark.parametrize("m,k,p", [(2, 1, 2), (3, 1, 2), (3, 2, 3), (4, 2, 2), (2, 1, 5)])
def test_gaussian_binomial_matches_brute_force(m, k, p):
    assert gaussian_binomial(m, k, p) == brute_subspace_count(m, k, p)


@pytest.mark.parametrize("m,k,p", [(3, 1, 2), (4, 2, 3), (3, 0, 5), (3, 3, 2), (4, 1, 5)])
def test_subspace_stream_is_complete_and_distinct(m, k, p):
    subs = [tuple(map(tuple, rows)) for rows, _ in subspaces(m, k, p)]
    assert len(subs) == len(set(subs)) == gaussian_binomial(m, k, p)
    for rows, piv in subspaces(m, k, p):
        assert rref(rows, p) == (rows, piv)


def test_gaussian_edges():
    assert gaussian_binomial(4, 0, 7) == 1
    assert gaussian_binomial(4, 5, 7) == 0
    assert gaussian_binomial(2, 1, 7) == 8


matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=1, max_size=4)
)


@settings(max_examples=80, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5, 7]))
def test_null_space_and_row_space(M, p):
    ncols = len(M[0])
    basis = null_space(M, ncols, p)
    assert len(basis) == ncols - rank_mod_p(M, p)
    for x in basis:
        assert all(sum(a * b for a, b in zip(row, x)) % p == 0 for row in M)
    R, piv = rref(M, p)
    for row in M:
        assert in_row_space(row, R, piv, p)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_left_kernel_integral(H):
    K = left_kernel_integral(H, len(H))
    for y in K:
        assert all(sum(y[r] * H[r][c] for r in range(len(H))) == 0 for c in range(len(H[0])))
        assert all(isinstance(v, int) for v in y)
