"""The map from modules to Laurent polynomials ``M -> X_M``.

``X_M = sum_e chi(Gr_e(M)) prod_i u_i^(-<e, a_i> - <a_i, m - e>)`` with
``m = dim M`` and ``a_i`` the simple roots.
"""
from __future__ import annotations

import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .algebra import LaurentPolynomial, product
from .quiver import DimVector, Quiver, QuiverError, euler_form, is_root, positive_roots
from .repmod import DEFAULT_BUDGET, grassmannian_chis, module_dims
from .repmod import clear_caches as repmod_clear

__all__ = [
    "CCVariable",
    "cc_exponent",
    "cc_from_chis",
    "cc_indecomposable",
    "cc_module",
    "cc_direct_sum",
    "cc_denominator_check",
    "cc_all",
    "clear_caches",
]

_CACHE: dict[tuple[Quiver, DimVector], LaurentPolynomial] = {}
_LOCK = threading.Lock()


@dataclass(frozen=True)
class CCVariable:
    module_class: tuple[tuple[DimVector, int], ...]
    value: LaurentPolynomial


def clear_caches() -> None:
    """Forget memoized ``X_M`` values and everything they were built from."""
    with _LOCK:
        _CACHE.clear()
    repmod_clear()


def cc_exponent(q: Quiver, m: Sequence[int], e: Sequence[int]) -> tuple[int, ...]:
    rest = [a - b for a, b in zip(m, e)]
    out = []
    for i in q.vertices:
        alpha = [int(j == i) for j in q.vertices]
        out.append(-euler_form(q, e, alpha) - euler_form(q, alpha, rest))
    return tuple(out)


def cc_from_chis(q: Quiver, m: Sequence[int], chis: dict) -> LaurentPolynomial:
    terms: dict[tuple[int, ...], int] = {}
    for e, chi in chis.items():
        exp = cc_exponent(q, m, e)
        terms[exp] = terms.get(exp, 0) + chi
    return LaurentPolynomial(terms, q.n)


def cc_indecomposable(q: Quiver, d: Sequence[int], budget: int | None = DEFAULT_BUDGET) -> LaurentPolynomial:
    d = tuple(int(x) for x in d)
    if not is_root(q, d):
        raise QuiverError(f"{d} is not a positive root")
    key = (q, d)
    with _LOCK:
        cached = _CACHE.get(key)
    if cached is not None:
        return cached
    value = cc_from_chis(q, d, grassmannian_chis(q, d, budget))
    with _LOCK:
        _CACHE[key] = value  # equal values, so last write wins harmlessly
    return value


def cc_module(q: Quiver, summands: Sequence[tuple[Sequence[int], int]]) -> LaurentPolynomial:
    """``X`` of a direct sum, as the product of the indecomposable values."""
    factors = []
    for root, mult in summands:
        factors.extend([cc_indecomposable(q, root)] * int(mult))
    return product(factors, q.n)


def cc_direct_sum(q: Quiver, summands: Sequence[tuple[Sequence[int], int]],
                  budget: int | None = DEFAULT_BUDGET) -> LaurentPolynomial:
    """``X`` of a direct sum evaluated straight from its own Grassmannians."""
    spec = [(tuple(r), int(k)) for r, k in summands]
    m = module_dims(q, spec)
    if not any(m):
        return LaurentPolynomial.one(q.n)
    return cc_from_chis(q, m, grassmannian_chis(q, spec, budget))


def cc_denominator_check(q: Quiver, d: Sequence[int]) -> bool:
    return cc_indecomposable(q, d).denominator_vector() == tuple(d)


def _cc_worker(args):
    q, d, budget = args
    return d, cc_indecomposable(q, d, budget)


def cc_all(q: Quiver, jobs: int = 1, budget: int | None = DEFAULT_BUDGET) -> dict[DimVector, LaurentPolynomial]:
    """``X_M`` for every positive root, optionally across worker processes."""
    roots = positive_roots(q)
    if jobs > 1 and len(roots) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = dict(pool.map(_cc_worker, [(q, d, budget) for d in roots]))
        with _LOCK:
            for d, v in results.items():
                _CACHE.setdefault((q, d), v)
    else:
        results = {d: cc_indecomposable(q, d, budget) for d in roots}
    return {d: results[d] for d in roots}
