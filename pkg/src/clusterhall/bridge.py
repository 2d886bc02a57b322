"""Cross-checks between the module-theoretic side and seed mutation.

Every check returns a :class:`Report` whose ``details`` list carries one
entry per tested instance, so a failing verdict always comes with its
counterexamples.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .algebra import LaurentPolynomial, product
from .ccmap import cc_all, cc_direct_sum, cc_indecomposable
from .mutation import DEFAULT_SEED_BUDGET, explore
from .quiver import Quiver, ar_quiver, euler_form, positive_roots, projective_vectors
from .repmod import DEFAULT_BUDGET, EnumerationBudgetError

__all__ = [
    "Report",
    "describe_quiver",
    "verify_main",
    "check_projective_lemma",
    "check_almost_split",
    "check_exchange_pairs",
    "check_serre_duality",
    "check_denominators",
    "check_positivity",
    "check_multiplicativity",
    "CHECKS",
    "run_checks",
]


def describe_quiver(q: Quiver) -> str:
    arrows = " ".join(f"{a}->{b}" for a, b in q.arrows) or "no arrows"
    return f"{q.dynkin_type or 'quiver'} on {q.n} vertices: {arrows}"


@dataclass
class Report:
    quiver: str
    check: str
    verdict: bool
    details: list[dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {"quiver": self.quiver, "check": self.check, "verdict": self.verdict, "details": self.details}

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def failures(self) -> list[dict[str, Any]]:
        return [d for d in self.details if d.get("ok") is False]


def _report(q: Quiver, check: str, details: list[dict[str, Any]]) -> Report:
    return Report(describe_quiver(q), check, all(d.get("ok", True) for d in details), details)


def _fmt_set(polys) -> list[str]:
    return sorted(p.fraction_str() for p in polys)


def verify_main(q: Quiver, jobs: int = 1, budget: int | None = DEFAULT_BUDGET,
                seed_budget: int = DEFAULT_SEED_BUDGET) -> Report:
    """Initial variables plus all ``X_M`` versus everything mutation produces."""
    q.require_dynkin()
    values = cc_all(q, jobs=jobs, budget=budget)
    s1 = set(LaurentPolynomial.variables(q.n)) | set(values.values())
    result = explore(q, budget=seed_budget)
    s2 = set(result.variables)
    only_cc, only_mut = s1 - s2, s2 - s1
    detail = {
        "ok": not only_cc and not only_mut,
        "cc_variables": len(s1),
        "mutation_variables": len(s2),
        "clusters": len(result.clusters),
        "only_from_modules": _fmt_set(only_cc),
        "only_from_mutation": _fmt_set(only_mut),
    }
    return _report(q, "main", [detail])


def check_projective_lemma(q: Quiver) -> Report:
    """``u_i X_{P_i} = prod_{i->j} X_{P_j} * prod_{k->i} u_k + 1`` at each vertex."""
    q.require_dynkin()
    n = q.n
    proj = projective_vectors(q)
    u = LaurentPolynomial.variables(n)
    details = []
    for i in q.vertices:
        lhs = u[i - 1] * cc_indecomposable(q, proj[i - 1])
        rhs = product(
            [cc_indecomposable(q, proj[j - 1]) for j in q.successors(i)]
            + [u[k - 1] for k in q.predecessors(i)],
            n,
        ) + 1
        details.append({"vertex": i, "ok": lhs == rhs, "lhs": lhs.fraction_str(), "rhs": rhs.fraction_str()})
    return _report(q, "projective", details)


def check_almost_split(q: Quiver) -> Report:
    """``X_{tau N} X_N = X_B + 1`` for every non-projective indecomposable ``N``."""
    q.require_dynkin()
    ar = ar_quiver(q)
    details = []
    for k in ar.non_projective():
        N = ar.vertices[k]
        M = ar.vertices[ar.tau[k]]
        middle = [ar.vertices[b].dim for b in ar.middle_term[k]]
        lhs = cc_indecomposable(q, M.dim) * cc_indecomposable(q, N.dim)
        xb = product([cc_indecomposable(q, d) for d in middle], q.n)
        details.append({
            "module": list(N.dim),
            "tau": list(M.dim),
            "middle": [list(d) for d in middle],
            "ok": lhs - xb == 1,
        })
    return _report(q, "almost-split", details)


def check_exchange_pairs(q: Quiver, seed_budget: int = DEFAULT_SEED_BUDGET) -> Report:
    """Each ``(X_N, X_{tau N})`` and each ``(u_i, X_{P_i})`` is exchanged by some mutation."""
    q.require_dynkin()
    ar = ar_quiver(q)
    pairs = explore(q, budget=seed_budget).exchange_pairs
    u = LaurentPolynomial.variables(q.n)
    details = []
    for k in ar.non_projective():
        a = cc_indecomposable(q, ar.vertices[k].dim)
        b = cc_indecomposable(q, ar.vertices[ar.tau[k]].dim)
        details.append({"module": list(ar.vertices[k].dim), "ok": frozenset((a, b)) in pairs})
    for i, p in enumerate(projective_vectors(q), start=1):
        details.append({"vertex": i, "ok": frozenset((u[i - 1], cc_indecomposable(q, p))) in pairs})
    return _report(q, "exchange-pairs", details)


def check_serre_duality(q: Quiver) -> Report:
    """``<N, v> + <v, tau N> = 0`` for non-projective ``N`` and every basis vector ``v``."""
    q.require_dynkin()
    ar = ar_quiver(q)
    details = []
    for k in ar.non_projective():
        n_dim = ar.vertices[k].dim
        t_dim = ar.vertices[ar.tau[k]].dim
        ok = all(
            euler_form(q, n_dim, v) + euler_form(q, v, t_dim) == 0
            for v in (tuple(int(j == i) for j in q.vertices) for i in q.vertices)
        )
        details.append({"module": list(n_dim), "ok": ok})
    return _report(q, "serre-duality", details)


def check_denominators(q: Quiver) -> Report:
    q.require_dynkin()
    details = []
    for d in positive_roots(q):
        got = cc_indecomposable(q, d).denominator_vector()
        details.append({"root": list(d), "denominator": list(got), "ok": got == d})
    return _report(q, "denominators", details)


def check_positivity(q: Quiver, seed_budget: int = DEFAULT_SEED_BUDGET) -> Report:
    """Both pipelines only produce Laurent polynomials with positive coefficients."""
    q.require_dynkin()
    details = []
    for d in positive_roots(q):
        details.append({"root": list(d), "ok": cc_indecomposable(q, d).has_positive_coefficients()})
    for x in sorted(explore(q, budget=seed_budget).variables, key=LaurentPolynomial.sort_key):
        details.append({"variable": x.fraction_str(), "ok": x.has_positive_coefficients()})
    return _report(q, "positivity", details)


def check_multiplicativity(q: Quiver, pairs: int = 50, seed: int = 0,
                           budget: int | None = 2 * 10**4, max_draws: int | None = None) -> Report:
    """``X_{M+N}`` from the Grassmannians of the sum versus ``X_M X_N``.

    Pairs of roots are drawn at random; a pair whose counting work exceeds
    ``budget`` is recorded as skipped and another is drawn, until ``pairs``
    pairs have been compared.
    """
    q.require_dynkin()
    rng = random.Random(seed)
    roots = positive_roots(q)
    details = []
    checked = 0
    draws = max_draws if max_draws is not None else 10 * pairs
    for _ in range(draws):
        if checked >= pairs:
            break
        a, b = rng.choice(roots), rng.choice(roots)
        spec = [(a, 2)] if a == b else [(a, 1), (b, 1)]
        try:
            direct = cc_direct_sum(q, spec, budget)
        except EnumerationBudgetError:
            details.append({"summands": [list(a), list(b)], "skipped": True})
            continue
        prod = cc_indecomposable(q, a) * cc_indecomposable(q, b)
        details.append({"summands": [list(a), list(b)], "ok": direct == prod})
        checked += 1
    if checked < pairs:
        details.append({"ok": False, "reason": f"only {checked} of {pairs} pairs fit the budget"})
    return _report(q, "multiplicativity", details)


CHECKS: dict[str, Callable[..., Report]] = {
    "main": verify_main,
    "projective": check_projective_lemma,
    "almost-split": check_almost_split,
    "exchange-pairs": check_exchange_pairs,
    "serre-duality": check_serre_duality,
    "denominators": check_denominators,
    "positivity": check_positivity,
}


def run_checks(q: Quiver, names: list[str], **options) -> list[Report]:
    """Run the named checks; ``options`` go to the checks that accept them."""
    out = []
    for name in names:
        fn = CHECKS[name]
        accepted = fn.__code__.co_varnames[: fn.__code__.co_argcount]
        out.append(fn(q, **{k: v for k, v in options.items() if k in accepted}))
    return out
