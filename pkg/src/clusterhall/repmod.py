"""Quiver representations over prime fields and submodule Grassmannians.

Indecomposables of a Dynkin quiver are built once over the integers with
BGP reflection functors and reduced modulo each prime.  Euler
characteristics of quiver Grassmannians are obtained by counting
``F_p``-points at several primes, interpolating the counting polynomial
exactly, and evaluating it at ``q = 1``.
"""
from __future__ import annotations

import itertools
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .fields import (
    PrimeField,
    gaussian_binomial,
    in_row_space,
    is_prime,
    left_kernel_integral,
    null_space,
    nullity_mod_p,
    primes_cached,
    rref,
    subspaces,
)
from .quiver import (
    DimVector,
    Quiver,
    QuiverError,
    _symmetric_form,
    euler_form,
    is_root,
)

__all__ = [
    "Representation",
    "CountPolynomial",
    "EnumerationBudgetError",
    "NonPolynomialCountError",
    "UnsupportedQuiverError",
    "build_indecomposable",
    "direct_sum",
    "hom_dim",
    "ext1_dim",
    "count_submodules",
    "count_submodules_naive",
    "count_polynomial",
    "grassmannian_chi",
    "grassmannian_chis",
    "chi_type_A",
    "set_prime_pool",
    "clear_caches",
    "DEFAULT_BUDGET",
]

Matrix = list[list[int]]
ModuleSpec = Union[Sequence[int], Sequence[tuple[Sequence[int], int]]]

DEFAULT_BUDGET = 10**7


class EnumerationBudgetError(RuntimeError):
    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"subspace enumeration needs {required} candidates, budget is {budget}"
        )


class NonPolynomialCountError(ArithmeticError):
    """Point counts are not explained by an integer polynomial of the expected degree."""


class UnsupportedQuiverError(QuiverError):
    pass


@dataclass(frozen=True)
class Representation:
    """Vector spaces ``F_p^{dims[i]}`` with one matrix per arrow.

    ``maps[k]`` belongs to ``quiver.arrows[k] = (s, t)`` and has shape
    ``dims[t] x dims[s]`` (it acts on column vectors).
    """

    quiver: Quiver
    p: int
    dims: DimVector
    maps: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        PrimeField(self.p)
        if len(self.dims) != self.quiver.n:
            raise ValueError("dimension vector does not match the quiver")
        if len(self.maps) != len(self.quiver.arrows):
            raise ValueError("need one matrix per arrow")
        for (s, t), m in zip(self.quiver.arrows, self.maps):
            if len(m) != self.dims[t - 1] or any(len(r) != self.dims[s - 1] for r in m):
                raise ValueError(f"matrix for arrow {s}->{t} has the wrong shape")

    def matrix(self, k: int) -> Matrix:
        return [list(r) for r in self.maps[k]]


def _freeze(M: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(r) for r in M)


# -- integral construction -----------------------------------------------

@dataclass(frozen=True)
class _IntegralRep:
    quiver: Quiver
    dims: DimVector
    maps: tuple[tuple[tuple[int, ...], ...], ...]


def _simple(q: Quiver, i: int) -> _IntegralRep:
    dims = tuple(int(j == i) for j in q.vertices)
    maps = tuple(_freeze([[0] * dims[s - 1] for _ in range(dims[t - 1])]) for s, t in q.arrows)
    return _IntegralRep(q, dims, maps)


def _reflect_at_source(N: _IntegralRep, i: int) -> _IntegralRep:
    """BGP functor at a source ``i``: replace ``N_i`` by ``coker(N_i -> sum N_j)``."""
    q = N.quiver
    out_arrows = [k for k, (s, _) in enumerate(q.arrows) if s == i]
    blocks = []
    H: Matrix = []
    for k in out_arrows:
        start = len(H)
        H.extend([list(r) for r in N.maps[k]])
        blocks.append((k, start, len(H)))
    C = left_kernel_integral(H, len(H))
    new_dim = len(C)
    rq = q.reflect(i)
    maps = list(N.maps)
    for k, a, b in blocks:
        maps[k] = _freeze([row[a:b] for row in C])
    dims = list(N.dims)
    dims[i - 1] = new_dim
    return _IntegralRep(rq, tuple(dims), tuple(maps))


_INTEGRAL_CACHE: dict[tuple[Quiver, DimVector], _IntegralRep] = {}
_LOCK = threading.Lock()


def _integral_indecomposable(q: Quiver, d: DimVector) -> _IntegralRep:
    key = (q, d)
    with _LOCK:
        if key in _INTEGRAL_CACHE:
            return _INTEGRAL_CACHE[key]
    n = q.n
    sinks = list(reversed(q.topological_order()))  # admissible sink sequence
    cur_q, cur_d = q, d
    reflected: list[int] = []
    limit = 4 * n * (n + 1)
    t = 0
    while True:
        i = sinks[t % n]
        if cur_d == tuple(int(j == i) for j in q.vertices):
            break
        new = list(cur_d)
        new[i - 1] = cur_d[i - 1] - _symmetric_form(cur_q, cur_d, i)
        if min(new) < 0:
            raise QuiverError(f"{d} is not a positive root")
        reflected.append(i)
        cur_q = cur_q.reflect(i)
        cur_d = tuple(new)
        t += 1
        if t > limit:
            raise QuiverError(f"reflection sequence for {d} did not terminate")
    M = _simple(cur_q, i)
    for j in reversed(reflected):
        M = _reflect_at_source(M, j)
    M = _IntegralRep(q, M.dims, M.maps)
    if M.dims != d:
        raise QuiverError(f"reflection functors produced {M.dims}, expected {d}")
    with _LOCK:
        _INTEGRAL_CACHE[key] = M
    return M


def _random_indecomposable(q: Quiver, d: DimVector, p: int, retries: int) -> Representation:
    rng = random.Random(hash((d, p, q.arrows)))
    for _ in range(retries):
        maps = tuple(
            _freeze([[rng.randrange(p) for _ in range(d[s - 1])] for _ in range(d[t - 1])])
            for s, t in q.arrows
        )
        M = Representation(q, p, d, maps)
        if hom_dim(M, M) == 1:
            return M
    raise RuntimeError(f"no indecomposable of class {d} found over F_{p} after {retries} tries")


_REP_CACHE: dict[tuple[Quiver, DimVector, int], Representation] = {}


def build_indecomposable(q: Quiver, d: Sequence[int], p: int, retries: int = 500) -> Representation:
    """The indecomposable of class ``d`` over ``F_p``.

    Uses the integral BGP construction reduced mod ``p``; if that reduction
    fails to have a one-dimensional endomorphism ring, falls back to random
    matrices (the isoclass, hence every count, is unaffected).
    """
    d = tuple(int(x) for x in d)
    q.require_dynkin()
    if not is_root(q, d):
        raise QuiverError(f"{d} is not a positive root of {q.dynkin_type}")
    key = (q, d, p)
    with _LOCK:
        if key in _REP_CACHE:
            return _REP_CACHE[key]
    field = PrimeField(p)
    integral = _integral_indecomposable(q, d)
    M = Representation(q, p, d, tuple(_freeze(field.reduce(m)) for m in integral.maps))
    if hom_dim(M, M) != 1:
        M = _random_indecomposable(q, d, p, retries)
    with _LOCK:
        _REP_CACHE[key] = M
    return M


def direct_sum(*modules: Representation) -> Representation:
    if not modules:
        raise ValueError("need at least one summand")
    q, p = modules[0].quiver, modules[0].p
    for M in modules:
        if M.quiver != q or M.p != p:
            raise ValueError("summands must share quiver and field")
    dims = tuple(sum(M.dims[i] for M in modules) for i in range(q.n))
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        block = [[0] * dims[s - 1] for _ in range(dims[t - 1])]
        r0 = c0 = 0
        for M in modules:
            for r, row in enumerate(M.maps[k]):
                for c, x in enumerate(row):
                    block[r0 + r][c0 + c] = x
            r0 += M.dims[t - 1]
            c0 += M.dims[s - 1]
        maps.append(_freeze(block))
    return Representation(q, p, dims, tuple(maps))


def zero_module(q: Quiver, p: int) -> Representation:
    return Representation(q, p, (0,) * q.n, tuple(() for _ in q.arrows))


# -- homological dimensions ----------------------------------------------

def hom_dim(M: Representation, N: Representation) -> int:
    """Dimension of the space of intertwiners ``phi`` with ``N_a phi_s = phi_t M_a``."""
    if M.quiver != N.quiver or M.p != N.p:
        raise ValueError("modules must share quiver and field")
    q, p = M.quiver, M.p
    offsets = {}
    nvars = 0
    for i in q.vertices:
        offsets[i] = nvars
        nvars += N.dims[i - 1] * M.dims[i - 1]

    def var(i: int, r: int, c: int) -> int:  # phi_i[r][c]
        return offsets[i] + r * M.dims[i - 1] + c

    rows = []
    for k, (s, t) in enumerate(q.arrows):
        Ma, Na = M.maps[k], N.maps[k]
        for r in range(N.dims[t - 1]):
            for c in range(M.dims[s - 1]):
                eq = [0] * nvars
                for x in range(N.dims[s - 1]):  # (N_a phi_s)[r][c]
                    if Na[r][x]:
                        eq[var(s, x, c)] += Na[r][x]
                for x in range(M.dims[t - 1]):  # (phi_t M_a)[r][c]
                    if Ma[x][c]:
                        eq[var(t, r, x)] -= Ma[x][c]
                if any(v % p for v in eq):
                    rows.append(eq)
    return nullity_mod_p(rows, nvars, p)


def ext1_dim(M: Representation, N: Representation) -> int:
    """``hom_dim(M, N) - <dim M, dim N>`` (valid since kQ is hereditary)."""
    value = hom_dim(M, N) - euler_form(M.quiver, M.dims, N.dims)
    if value < 0:
        raise ArithmeticError("negative Ext dimension: Euler form convention is inconsistent")
    return value


# -- submodule counting ----------------------------------------------------

def enumeration_size(dims: Sequence[int], e: Sequence[int], p: int) -> int:
    size = 1
    for m, k in zip(dims, e):
        size *= gaussian_binomial(m, k, p)
    return size


def _is_tree(q: Quiver) -> bool:
    return len(q.arrows) == q.n - 1 and len(_dfs_order(q)) == q.n and _connected(q)


def _connected(q: Quiver) -> bool:
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in q.neighbours(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == q.n


def _apply(A: Matrix, v: Sequence[int], p: int) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) % p for row in A]


def tree_work(M: Representation, e: Sequence[int], p: int) -> int:
    """Upper bound on the subspaces the tree counter enumerates; leaves are
    counted in closed form, so only non-leaf vertices contribute."""
    size = 1
    for v in M.quiver.vertices:
        if len(M.quiver.neighbours(v)) > 1:
            size *= gaussian_binomial(M.dims[v - 1], e[v - 1], p)
    return size


def count_submodules(M: Representation, e: Sequence[int], budget: int | None = DEFAULT_BUDGET) -> int:
    """Number of subrepresentations of ``M`` with dimension vector ``e``.

    On a tree quiver the vertices are visited outwards from a leaf.  A
    child whose parent subspace is fixed must contain ``W`` (the image of an
    incoming arrow) or lie in ``K`` (the preimage along an outgoing arrow),
    so only subspaces of ``K / W`` are enumerated and leaves contribute a
    Gaussian binomial.  Other quivers use :func:`count_submodules_naive`.
    """
    q, p = M.quiver, M.p
    e = tuple(int(x) for x in e)
    if len(e) != q.n or any(not 0 <= a <= b for a, b in zip(e, M.dims)):
        raise ValueError(f"{e} is not between 0 and {M.dims}")
    if not _is_tree(q):
        return count_submodules_naive(M, e, budget)
    work = [0]

    leaves = [v for v in q.vertices if len(q.neighbours(v)) <= 1]
    root = min(leaves, key=lambda v: (gaussian_binomial(M.dims[v - 1], e[v - 1], p), v))
    children: dict[int, list[tuple[int, int, bool]]] = {v: [] for v in q.vertices}
    seen = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for k, (s, t) in enumerate(q.arrows):
            if v in (s, t):
                w = t if s == v else s
                if w not in seen:
                    seen.add(w)
                    children[v].append((w, k, s == v))  # True: arrow v -> w
                    stack.append(w)

    def bounds(v: int, k: int, outgoing: bool, U: Matrix) -> tuple[Matrix, Matrix]:
        """(W, K) for child ``w`` of ``v`` given the basis ``U`` of ``M_v``'s subspace."""
        A = M.maps[k]
        m_w = M.dims[q.arrows[k][1] - 1] if outgoing else M.dims[q.arrows[k][0] - 1]
        if outgoing:  # v -> w: U_w must contain A(U)
            W = rref([_apply(A, u, p) for u in U], p)[0] if U else []
            return W, [[int(r == c) for c in range(m_w)] for r in range(m_w)]
        # w -> v: A(U_w) inside U, i.e. U_w inside the preimage of U
        ann = null_space(U, M.dims[v - 1], p) if U else [[int(r == c) for c in range(M.dims[v - 1])] for r in range(M.dims[v - 1])]
        constraints = [[sum(y[r] * A[r][c] for r in range(len(A))) % p for c in range(m_w)] for y in ann]
        return [], null_space(constraints, m_w, p) if constraints else [[int(r == c) for c in range(m_w)] for r in range(m_w)]

    def between(W: Matrix, K: Matrix, k: int):
        """Subspaces ``W <= U <= K`` of dimension ``k`` (``W`` inside ``K`` assumed)."""
        Wr, Wp = rref(W, p) if W else ([], [])
        quotient = []
        basis, piv = list(Wr), list(Wp)
        for v in K:
            if not in_row_space(v, basis, piv, p):
                quotient.append(v)
                basis, piv = rref(basis + [v], p)
        for S, _ in subspaces(len(quotient), k - len(Wr), p):
            lifted = [[sum(c * qv[j] for c, qv in zip(row, quotient)) % p for j in range(len(K[0]))] for row in S]
            yield list(Wr) + lifted

    def rank(B: Matrix) -> int:
        return len(rref(B, p)[1]) if B else 0

    memo: dict[tuple, int] = {}

    def subtree(w: int, W: Matrix, K: Matrix) -> int:
        dw, dk, target = rank(W), len(K), e[w - 1]
        if not dw <= target <= dk:
            return 0
        if not children[w]:
            return gaussian_binomial(dk - dw, target - dw, p)
        key = (w, _key(W), _key(K))
        if key not in memo:
            memo[key] = sum(count_below(w, Uw) for Uw in between(W, K, target))
        return memo[key]

    def count_below(v: int, U: Matrix) -> int:
        work[0] += 1
        if budget is not None and work[0] > budget:
            raise EnumerationBudgetError(max(tree_work(M, e, p), work[0]), budget)
        total = 1
        for w, k, outgoing in children[v]:
            total *= subtree(w, *bounds(v, k, outgoing, U))
            if not total:
                return 0
        return total

    def _key(B: Matrix) -> tuple:
        return tuple(map(tuple, rref(B, p)[0])) if B else ()

    return sum(count_below(root, U) for U, _ in subspaces(M.dims[root - 1], e[root - 1], p))


def count_submodules_naive(M: Representation, e: Sequence[int], budget: int | None = DEFAULT_BUDGET) -> int:
    """Count by streaming per-vertex subspaces and pruning on failed arrows."""
    q, p = M.quiver, M.p
    e = tuple(int(x) for x in e)
    if len(e) != q.n or any(not 0 <= a <= b for a, b in zip(e, M.dims)):
        raise ValueError(f"{e} is not between 0 and {M.dims}")
    required = enumeration_size(M.dims, e, p)
    if budget is not None and required > budget:
        raise EnumerationBudgetError(required, budget)

    order = _dfs_order(q)
    # arrows to check once vertex order[level] is chosen
    checks: list[list[int]] = []
    placed: set[int] = set()
    for v in order:
        placed.add(v)
        checks.append(
            [k for k, (s, t) in enumerate(q.arrows) if v in (s, t) and s in placed and t in placed]
        )
    chosen: dict[int, tuple[Matrix, list[int]]] = {}

    def stable(k: int) -> bool:
        s, t = q.arrows[k]
        basis, _ = chosen[s]
        tb, tp = chosen[t]
        A = M.maps[k]
        for b in basis:
            w = [sum(A[r][c] * b[c] for c in range(len(b))) for r in range(len(A))]
            if not in_row_space(w, tb, tp, p):
                return False
        return True

    def search(level: int) -> int:
        if level == len(order):
            return 1
        v = order[level]
        total = 0
        for sub in subspaces(M.dims[v - 1], e[v - 1], p):
            chosen[v] = sub
            if all(stable(k) for k in checks[level]):
                total += search(level + 1)
        del chosen[v]
        return total

    return search(0)


def _dfs_order(q: Quiver) -> list[int]:
    seen: list[int] = []
    for root in q.vertices:
        if root in seen:
            continue
        stack = [root]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.append(v)
            stack.extend(sorted(set(q.neighbours(v)) - set(seen), reverse=True))
    return seen


# -- counting polynomials ----------------------------------------------------

@dataclass(frozen=True)
class CountPolynomial:
    """``P(q) = sum coefficients[k] q^k`` together with the samples it was fitted on."""

    coefficients: tuple[int, ...]
    samples: tuple[tuple[int, int], ...]
    held_out: tuple[int, int]

    def __call__(self, x: int) -> int:
        return sum(c * x**k for k, c in enumerate(self.coefficients))

    @property
    def euler_characteristic(self) -> int:
        return self(1)


def interpolate(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (low degree first) of the Lagrange polynomial through ``points``."""
    deg = len(points) - 1
    coeffs = [Fraction(0)] * (deg + 1)
    for j, (xj, yj) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, (xm, _) in enumerate(points):
            if m == j:
                continue
            basis = [Fraction(0)] + basis  # multiply by x
            for k in range(len(basis) - 1):
                basis[k] -= xm * basis[k + 1]
            denom *= xj - xm
        for k, b in enumerate(basis):
            coeffs[k] += yj * b / denom
    return coeffs


def _summands(q: Quiver, module: ModuleSpec) -> tuple[tuple[DimVector, int], ...]:
    items = list(module)
    if items and all(isinstance(x, int) for x in items):
        return ((tuple(items), 1),)
    out = []
    for root, mult in items:
        if mult < 0:
            raise ValueError("multiplicities must be non-negative")
        if mult:
            out.append((tuple(int(x) for x in root), int(mult)))
    return tuple(out)


def module_dims(q: Quiver, module: ModuleSpec) -> DimVector:
    total = [0] * q.n
    for root, mult in _summands(q, module):
        total = [a + mult * b for a, b in zip(total, root)]
    return tuple(total)


def degree_bound(dims: Sequence[int], e: Sequence[int] | None = None) -> int:
    """Upper bound for ``dim Gr_e``: ``sum e_i (d_i - e_i)``, the dimension
    of the ambient product of ordinary Grassmannians.  Without ``e`` the
    bound ``sum floor(d_i^2 / 4)`` valid for every ``e`` is returned."""
    if e is None:
        return sum(x * x // 4 for x in dims)
    return sum(k * (x - k) for x, k in zip(dims, e))


def build_module(q: Quiver, module: ModuleSpec, p: int) -> Representation:
    parts = []
    for root, mult in _summands(q, module):
        parts.extend([build_indecomposable(q, root, p)] * mult)
    if not parts:
        return zero_module(q, p)
    return parts[0] if len(parts) == 1 else direct_sum(*parts)


def _check_scope(q: Quiver) -> None:
    t = q.require_dynkin()
    if t in ("E7", "E8"):
        raise UnsupportedQuiverError(
            f"Grassmannian counting for {t} is beyond the supported scale (A_n, D_n, E6)"
        )


_PRIME_POOL: tuple[int, ...] | None = None


def set_prime_pool(primes: Sequence[int] | None) -> None:
    """Use ``primes`` (in order) as the sample set instead of 2, 3, 5, ...

    ``None`` restores the default.  Any pool must contain distinct primes.
    """
    global _PRIME_POOL
    if primes is None:
        _PRIME_POOL = None
        return
    pool = tuple(int(p) for p in primes)
    if len(set(pool)) != len(pool) or not all(is_prime(p) for p in pool):
        raise ValueError(f"prime pool must be distinct primes, got {pool}")
    _PRIME_POOL = pool


def count_polynomial(
    q: Quiver,
    module: ModuleSpec,
    e: Sequence[int],
    budget: int | None = DEFAULT_BUDGET,
    primes: Sequence[int] | None = None,
) -> CountPolynomial:
    """Fit the point-counting polynomial of ``Gr_e(M)``.

    Counts at the first ``D + 2`` primes (``D`` from :func:`degree_bound`),
    interpolates through ``D + 1`` of them and checks the last one.
    """
    _check_scope(q)
    dims = module_dims(q, module)
    D = degree_bound(dims, e)
    if primes is not None:
        ps = list(primes)
    elif _PRIME_POOL is not None:
        ps = list(_PRIME_POOL[: D + 2])
    else:
        ps = list(primes_cached(D + 2))
    if len(ps) < D + 2:
        raise ValueError(f"need at least {D + 2} primes")
    counts = [(p, count_submodules(build_module(q, module, p), e, budget)) for p in ps]
    fit, held = counts[: D + 1], counts[D + 1 :]
    coeffs = interpolate(fit)
    if any(c.denominator != 1 for c in coeffs):
        raise NonPolynomialCountError(f"non-integral interpolation for e={tuple(e)}: {coeffs}")
    ints = [int(c) for c in coeffs]
    while len(ints) > 1 and ints[-1] == 0:
        ints.pop()
    poly = CountPolynomial(tuple(ints), tuple(fit), held[0])
    for p, c in held:
        if poly(p) != c:
            raise NonPolynomialCountError(
                f"held-out prime {p}: polynomial gives {poly(p)}, count is {c}"
            )
    return poly


_CHI_CACHE: dict[tuple, int] = {}


def clear_caches() -> None:
    """Forget memoized modules and Euler characteristics (for cold timings)."""
    with _LOCK:
        _INTEGRAL_CACHE.clear()
        _REP_CACHE.clear()
        _CHI_CACHE.clear()


def grassmannian_chi(
    q: Quiver, module: ModuleSpec, e: Sequence[int], budget: int | None = DEFAULT_BUDGET
) -> int:
    """Euler characteristic of ``Gr_e(M)`` as ``P(1)``."""
    key = (q, _summands(q, module), tuple(e))
    with _LOCK:
        if key in _CHI_CACHE:
            return _CHI_CACHE[key]
    value = count_polynomial(q, module, e, budget).euler_characteristic
    with _LOCK:
        _CHI_CACHE[key] = value
    return value


def grassmannian_chis(q: Quiver, module: ModuleSpec, budget: int | None = DEFAULT_BUDGET) -> dict[DimVector, int]:
    """Nonzero ``chi(Gr_e(M))`` for every ``0 <= e <= dim M``."""
    dims = module_dims(q, module)
    out = {}
    for e in itertools.product(*(range(x + 1) for x in dims)):
        c = grassmannian_chi(q, module, e, budget)
        if c:
            out[e] = c
    return out


def chi_type_A(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """Closed form for type A: 1 iff ``supp e`` is closed under arrows inside ``supp d``."""
    t = q.require_dynkin()
    if not t.startswith("A"):
        raise UnsupportedQuiverError(f"chi_type_A needs a type A quiver, got {t}")
    d = tuple(d)
    if not is_root(q, d):
        raise QuiverError(f"{d} is not a positive root")
    if any(x not in (0, 1) or x > y for x, y in zip(e, d)):
        return 0
    support = {i for i in q.vertices if d[i - 1]}
    sub = {i for i in q.vertices if e[i - 1]}
    for s, t_ in q.arrows:
        if s in sub and t_ in support and t_ not in sub:
            return 0
    return 1
