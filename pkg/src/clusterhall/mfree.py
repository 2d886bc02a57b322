"""Closed formulas for multiplicity-free modules.

A multiplicity-free module is described by its support and the set of
arrows inside the support that act by zero; every other arrow inside the
support acts as an isomorphism ``k -> k``.  A submodule is then a subset of
the support closed under the nonzero arrows.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import LaurentPolynomial
from .quiver import Quiver, QuiverError

__all__ = [
    "ClusterQuiverWithRelations",
    "MfreeModule",
    "ConjectureViolation",
    "cluster_quiver_from_matrix",
    "mfree_submodules",
    "mfree_dynkin",
    "mfree_conjecture",
    "parse_module_spec",
    "parse_relations",
]


class ConjectureViolation(ArithmeticError):
    """The conjectural expression does not simplify to a Laurent polynomial."""


@dataclass(frozen=True)
class ClusterQuiverWithRelations:
    quiver: Quiver
    zero_compositions: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()


def cluster_quiver_from_matrix(B: Sequence[Sequence[int]], relations=()) -> ClusterQuiverWithRelations:
    """Arrow ``i -> j`` exactly when ``b_ij == 1``."""
    n = len(B)
    arrows = [(i + 1, j + 1) for i in range(n) for j in range(n) if B[i][j] == 1]
    return ClusterQuiverWithRelations(Quiver(n, arrows, dynkin=False), tuple(relations))


@dataclass(frozen=True)
class MfreeModule:
    support: frozenset[int]
    zero_arrows: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __init__(self, support: Iterable[int], zero_arrows: Iterable[tuple[int, int]] = ()):
        object.__setattr__(self, "support", frozenset(int(i) for i in support))
        object.__setattr__(self, "zero_arrows", frozenset((int(a), int(b)) for a, b in zero_arrows))
        for a, b in self.zero_arrows:
            if a not in self.support or b not in self.support:
                raise ValueError(f"zero arrow {a}->{b} leaves the support")

    def dimension_vector(self, n: int) -> tuple[int, ...]:
        return tuple(int(i in self.support) for i in range(1, n + 1))


def _live_arrows(q: Quiver, m: MfreeModule) -> list[tuple[int, int]]:
    return [
        (a, b) for a, b in q.arrows
        if a in m.support and b in m.support and (a, b) not in m.zero_arrows
    ]


def mfree_submodules(q: Quiver, m: MfreeModule) -> list[frozenset[int]]:
    """Subsets ``S`` of the support with ``i in S, i -> j live => j in S``."""
    for a in m.support:
        if not 1 <= a <= q.n:
            raise QuiverError(f"support vertex {a} is not in the quiver")
    for a, b in m.zero_arrows:
        if (a, b) not in q.arrows:
            raise QuiverError(f"{a}->{b} is not an arrow of the quiver")
    live = _live_arrows(q, m)
    verts = sorted(m.support)
    out = []
    for r in range(len(verts) + 1):
        for combo in itertools.combinations(verts, r):
            s = set(combo)
            if all(b in s for a, b in live if a in s):
                out.append(frozenset(s))
    return out


def _numerator_sum(q: Quiver, m: MfreeModule) -> LaurentPolynomial:
    n = q.n
    total = LaurentPolynomial.zero(n)
    for sub in mfree_submodules(q, m):
        exp = [0] * n
        for a, b in q.arrows:
            if a in sub:  # i in N, i -> j contributes u_j
                exp[b - 1] += 1
            if b in m.support and b not in sub:  # i in M/N, j -> i contributes u_j
                exp[a - 1] += 1
        total = total + LaurentPolynomial.monomial(exp)
    return total


def _connected(q: Quiver, verts: frozenset[int]) -> bool:
    if not verts:
        return True
    start = min(verts)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in q.neighbours(v):
            if w in verts and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == set(verts)


def mfree_dynkin(q: Quiver, m: MfreeModule) -> LaurentPolynomial:
    """Submodule-sum formula for a multiplicity-free indecomposable of a Dynkin quiver."""
    q.require_dynkin()
    if m.zero_arrows:
        raise ValueError("an indecomposable over a Dynkin quiver has no zero arrows in its support")
    if not m.support or not _connected(q, m.support):
        raise ValueError("support must be a nonempty connected set of vertices")
    denom = [int(i in m.support) for i in q.vertices]
    return _numerator_sum(q, m) * LaurentPolynomial.monomial([-x for x in denom])


def mfree_conjecture(cq: ClusterQuiverWithRelations | Quiver, m: MfreeModule) -> LaurentPolynomial:
    """Conjectural formula for cluster quivers (relations are carried as data only).

    The submodule sum is divided by ``u_i`` for every vertex ``i`` outside the
    support having an arrow into it and an arrow out of it, and by
    ``u_s u_t`` for every zero arrow ``s -> t``; this division must be exact.
    """
    q = cq.quiver if isinstance(cq, ClusterQuiverWithRelations) else cq
    n = q.n
    corr = [0] * n
    for i in q.vertices:
        if i in m.support:
            continue
        into = any(a == i and b in m.support for a, b in q.arrows)
        out_of = any(b == i and a in m.support for a, b in q.arrows)
        if into and out_of:
            corr[i - 1] += 1
    for s, t in m.zero_arrows:
        corr[s - 1] += 1
        corr[t - 1] += 1
    num = _numerator_sum(q, m) * LaurentPolynomial.monomial([-x for x in corr])
    if any(x < 0 for x in num.min_exponents()):
        raise ConjectureViolation(
            f"correction factor {corr} does not divide the submodule sum {num}"
        )
    denom = [int(i in m.support) for i in q.vertices]
    return num * LaurentPolynomial.monomial([-x for x in denom])


_PAIR_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_module_spec(text: str) -> MfreeModule:
    """Parse ``"support: 1,2,4; zero_arrows: (4,1)"`` (the second part is optional)."""
    support: list[int] = []
    zero: list[tuple[int, int]] = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, _, value = part.partition(":")
        key = key.strip().lower()
        if key == "support":
            support = [int(x) for x in value.replace(" ", "").split(",") if x]
        elif key in ("zero_arrows", "zero-arrows"):
            zero = [(int(a), int(b)) for a, b in _PAIR_RE.findall(value)]
        else:
            raise ValueError(f"unknown module field {key!r}")
    if not support:
        raise ValueError("module spec needs a support")
    return MfreeModule(support, zero)


def parse_relations(text: str) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
    """Zero compositions, one per line: ``"a b c"`` means ``(a->b)(b->c) = 0``."""
    rels = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            a, b, c = (int(x) for x in line.split())
        except ValueError:
            raise ValueError(f"line {lineno}: expected three vertices, got {line!r}") from None
        rels.append(((a, b), (b, c)))
    return tuple(rels)
