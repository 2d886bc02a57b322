"""Prime fields, mod-p linear algebra and subspace enumeration.

Matrices are lists of rows of ints in ``0..p-1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

Matrix = list[list[int]]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def first_primes(count: int) -> list[int]:
    """Consecutive primes starting at 2."""
    out = []
    c = 2
    while len(out) < count:
        if is_prime(c):
            out.append(c)
        c += 1
    return out


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def reduce(self, M: Sequence[Sequence[int]]) -> Matrix:
        return [[x % self.p for x in row] for row in M]


def rref(M: Sequence[Sequence[int]], p: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    A = [[x % p for x in row] for row in M]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(A)) if A[k][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [(x * inv) % p for x in A[r]]
        for k in range(len(A)):
            if k != r and A[k][c]:
                f = A[k][c]
                A[k] = [(x - f * y) % p for x, y in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank_mod_p(M: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(M, p)[1])


def nullity_mod_p(rows: Sequence[Sequence[int]], nvars: int, p: int) -> int:
    """Dimension of the solution space of ``rows * x = 0`` in ``nvars`` unknowns."""
    if not rows:
        return nvars
    return nvars - rank_mod_p(rows, p)


def null_space(rows: Sequence[Sequence[int]], nvars: int, p: int) -> Matrix:
    """Basis of ``{x : rows * x = 0}`` over F_p."""
    R, pivots = rref(rows, p) if rows else ([], [])
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * nvars
        x[f] = 1
        for row, c in zip(R, pivots):
            x[c] = (-row[f]) % p
        basis.append(x)
    return basis


def in_row_space(v: Sequence[int], basis: Matrix, pivots: list[int], p: int) -> bool:
    """Membership test against a basis already in RREF."""
    w = [x % p for x in v]
    for row, c in zip(basis, pivots):
        f = w[c]
        if f:
            w = [(x - f * y) % p for x, y in zip(w, row)]
    return not any(w)


def gaussian_binomial(m: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of ``F_q^m``."""
    if k < 0 or k > m:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspaces(m: int, k: int, p: int) -> Iterator[tuple[Matrix, list[int]]]:
    """Stream every ``k``-dim subspace of ``F_p^m`` as (RREF basis, pivots).

    Each subspace has exactly one RREF representative: choose pivot columns,
    then fill the free entries right of each pivot in non-pivot columns.
    """
    if k == 0:
        yield [], []
        return
    for piv in itertools.combinations(range(m), k):
        pivset = set(piv)
        free = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, m) if c not in pivset]
        for values in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * m for _ in range(k)]
            for r, pc in enumerate(piv):
                rows[r][pc] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield rows, list(piv)


# -- exact rational helpers used by the integral reflection functors -----

def left_kernel_integral(H: Sequence[Sequence[int]], nrows: int) -> list[list[int]]:
    """Integer basis (primitive rows) of ``{y : y H = 0}`` with ``len(y) == nrows``.

    Rows come from the RREF nullspace of ``H^T`` over Q, scaled to clear
    denominators.
    """
    ncols = len(H[0]) if H else 0
    # solve H^T y = 0: equations indexed by columns of H
    A = [[Fraction(H[r][c]) for r in range(nrows)] for c in range(ncols)]
    pivots: list[int] = []
    row = 0
    for col in range(nrows):
        piv = next((k for k in range(row, len(A)) if A[k][col] != 0), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        lead = A[row][col]
        A[row] = [x / lead for x in A[row]]
        for k in range(len(A)):
            if k != row and A[k][col] != 0:
                f = A[k][col]
                A[k] = [x - f * y for x, y in zip(A[k], A[row])]
        pivots.append(col)
        row += 1
        if row == len(A):
            break
    free = [c for c in range(nrows) if c not in pivots]
    basis = []
    for fc in free:
        y = [Fraction(0)] * nrows
        y[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            y[pc] = -A[r][fc]
        den = 1
        for x in y:
            den = den * x.denominator // _gcd(den, x.denominator)
        ints = [int(x * den) for x in y]
        g = 0
        for x in ints:
            g = _gcd(g, abs(x))
        basis.append([x // g for x in ints] if g > 1 else ints)
    return basis


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def primes_cached(count: int) -> tuple[int, ...]:
    return tuple(first_primes(count))
