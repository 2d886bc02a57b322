"""Quivers, the Euler form, positive roots and the Auslander-Reiten quiver.

Vertices are numbered ``1..n`` and an arrow is a pair ``(i, j)`` meaning
``i -> j``.  Representations are covariant with arrows, so the projective
``P_i`` is spanned by paths starting at ``i`` and the injective ``I_i`` by
paths ending at ``i``.  Dimension vectors are plain tuples of ints.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

DimVector = tuple[int, ...]

__all__ = [
    "Quiver",
    "QuiverError",
    "QuiverParseError",
    "ARQuiver",
    "ARVertex",
    "euler_form",
    "exchange_matrix",
    "positive_roots",
    "projective_vectors",
    "injective_vectors",
    "ar_quiver",
    "tau",
    "coxeter_tau",
    "parse_quiver",
    "format_quiver",
    "type_a",
    "type_d",
    "type_e",
    "orientations",
]


class QuiverError(ValueError):
    pass


class QuiverParseError(QuiverError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Quiver:
    """A finite quiver on vertices ``1..n``.

    With ``dynkin=True`` (the default) the underlying graph must be a
    simply-laced Dynkin diagram; the detected type is stored in
    :attr:`dynkin_type`.  Cluster quivers, which may carry oriented cycles,
    are built with ``dynkin=False``.
    """

    def __init__(self, n: int, arrows: Iterable[tuple[int, int]], dynkin: bool = True):
        self.n = int(n)
        if self.n < 1:
            raise QuiverError("a quiver needs at least one vertex")
        self.arrows: tuple[tuple[int, int], ...] = tuple((int(a), int(b)) for a, b in arrows)
        for a, b in self.arrows:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise QuiverError(f"arrow {a}->{b} uses a vertex outside 1..{self.n}")
            if a == b:
                raise QuiverError(f"loop at vertex {a}")
        self.dynkin_type: str | None = None
        if dynkin:
            self.dynkin_type = _classify_dynkin(self.n, self.arrows)

    def __repr__(self) -> str:
        arrows = ", ".join(f"{a}->{b}" for a, b in self.arrows)
        return f"Quiver(n={self.n}, [{arrows}])"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Quiver)
            and self.n == other.n
            and sorted(self.arrows) == sorted(other.arrows)
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.arrows))))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def successors(self, i: int) -> list[int]:
        return [b for a, b in self.arrows if a == i]

    def predecessors(self, i: int) -> list[int]:
        return [a for a, b in self.arrows if b == i]

    def sinks(self) -> list[int]:
        return [i for i in self.vertices if not self.successors(i)]

    def sources(self) -> list[int]:
        return [i for i in self.vertices if not self.predecessors(i)]

    def require_dynkin(self) -> str:
        if self.dynkin_type is None:
            self.dynkin_type = _classify_dynkin(self.n, self.arrows)
        return self.dynkin_type

    def reflect(self, i: int) -> "Quiver":
        """Reverse every arrow incident to ``i``."""
        arrows = [(b, a) if i in (a, b) else (a, b) for a, b in self.arrows]
        q = Quiver(self.n, arrows, dynkin=False)
        q.dynkin_type = self.dynkin_type
        return q

    def topological_order(self) -> list[int]:
        """Kahn's algorithm, smallest index first among ready vertices."""
        indeg = {i: 0 for i in self.vertices}
        for _, b in self.arrows:
            indeg[b] += 1
        ready = sorted(i for i, d in indeg.items() if d == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for w in self.successors(v):
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
            ready.sort()
        if len(order) != self.n:
            raise QuiverError("quiver has an oriented cycle")
        return order

    def neighbours(self, i: int) -> list[int]:
        return sorted(set(self.successors(i)) | set(self.predecessors(i)))

    @cached_property
    def path_counts(self) -> tuple[tuple[int, ...], ...]:
        """``path_counts[i-1][j-1]`` = number of paths ``i ~> j`` (incl. trivial)."""
        order = self.topological_order()
        n = self.n
        counts = [[0] * n for _ in range(n)]
        for i in reversed(order):
            counts[i - 1][i - 1] = 1
            for j in self.successors(i):
                for k in range(n):
                    counts[i - 1][k] += counts[j - 1][k]
        return tuple(tuple(r) for r in counts)

    @cached_property
    def euler_matrix(self) -> tuple[tuple[int, ...], ...]:
        """``E[i][j] = <alpha_i, alpha_j>``."""
        n = self.n
        E = [[int(i == j) for j in range(n)] for i in range(n)]
        for a, b in self.arrows:
            E[a - 1][b - 1] -= 1
        return tuple(tuple(r) for r in E)


def _classify_dynkin(n: int, arrows: Sequence[tuple[int, int]]) -> str:
    edges = set()
    for a, b in arrows:
        e = frozenset((a, b))
        if e in edges:
            raise QuiverError(f"multiple arrows between {a} and {b}")
        edges.add(e)
    if len(edges) != n - 1:
        raise QuiverError("underlying graph is not a tree")
    adj: dict[int, list[int]] = {i: [] for i in range(1, n + 1)}
    for e in edges:
        a, b = tuple(e)
        adj[a].append(b)
        adj[b].append(a)
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise QuiverError("underlying graph is not connected")
    degrees = sorted(len(v) for v in adj.values())
    if not degrees or degrees[-1] <= 2:
        return f"A{n}"
    branch = [v for v, nb in adj.items() if len(nb) >= 3]
    if len(branch) > 1 or len(adj[branch[0]]) > 3:
        raise QuiverError("underlying graph is not a Dynkin diagram")
    centre = branch[0]
    arms = []
    for start in adj[centre]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{n}"
    raise QuiverError(f"underlying graph with arms {arms} is not a Dynkin diagram")


# -- bilinear forms -----------------------------------------------------

def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """``<d, e> = sum_i d_i e_i - sum_{i->j} d_i e_j``."""
    if len(d) != q.n or len(e) != q.n:
        raise QuiverError("dimension vector length does not match the quiver")
    total = sum(x * y for x, y in zip(d, e))
    for a, b in q.arrows:
        total -= d[a - 1] * e[b - 1]
    return total


def exchange_matrix(q: Quiver) -> tuple[tuple[int, ...], ...]:
    """Skew-symmetric matrix with ``b_ij = 1`` iff ``i -> j``."""
    n = q.n
    B = [[0] * n for _ in range(n)]
    for a, b in q.arrows:
        if B[a - 1][b - 1] or B[b - 1][a - 1]:
            raise QuiverError(f"more than one arrow between {a} and {b}")
        B[a - 1][b - 1] = 1
        B[b - 1][a - 1] = -1
    return tuple(tuple(r) for r in B)


def _symmetric_form(q: Quiver, d: Sequence[int], i: int) -> int:
    # (d, alpha_i) for the symmetrised form
    return 2 * d[i - 1] - sum(d[j - 1] for j in q.neighbours(i))


def positive_roots(q: Quiver) -> list[DimVector]:
    """Positive roots of the underlying Dynkin diagram, by height then lex.

    Built by raising simple roots with simple reflections: a positive root
    ``b`` with ``(b, alpha_i) < 0`` gives the higher root ``s_i(b)``.
    """
    q.require_dynkin()
    return list(_positive_roots_cached(q))


_ROOT_CACHE: dict[Quiver, tuple[DimVector, ...]] = {}


def _positive_roots_cached(q: Quiver) -> tuple[DimVector, ...]:
    key = q
    if key in _ROOT_CACHE:
        return _ROOT_CACHE[key]
    n = q.n
    simples = [tuple(int(j == i) for j in range(n)) for i in range(n)]
    found = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for r in frontier:
            for i in q.vertices:
                c = _symmetric_form(q, r, i)
                if c < 0:
                    s = list(r)
                    s[i - 1] -= c
                    s = tuple(s)
                    if s not in found:
                        found.add(s)
                        nxt.append(s)
        frontier = nxt
    roots = tuple(sorted(found, key=lambda r: (sum(r), r)))
    _ROOT_CACHE[key] = roots
    return roots


def is_root(q: Quiver, d: Sequence[int]) -> bool:
    return tuple(d) in set(_positive_roots_cached(q))


def projective_vectors(q: Quiver) -> list[DimVector]:
    """``dim P_i``; entry ``j`` counts paths ``i ~> j``."""
    return [tuple(q.path_counts[i]) for i in range(q.n)]


def injective_vectors(q: Quiver) -> list[DimVector]:
    """``dim I_i``; entry ``j`` counts paths ``j ~> i``."""
    pc = q.path_counts
    return [tuple(pc[j][i] for j in range(q.n)) for i in range(q.n)]


def coxeter_tau(q: Quiver, d: Sequence[int]) -> DimVector:
    """Coxeter transform ``-E^{-1} E^T d`` where ``E`` is the Euler matrix.

    ``E = I - A`` with ``A`` nilpotent, so ``E^{-1}`` is the path-count
    matrix and everything stays integral.  For a non-projective
    indecomposable this is ``dim tau M``.
    """
    n = q.n
    E = q.euler_matrix
    pc = q.path_counts
    w = [sum(E[j][i] * d[j] for j in range(n)) for i in range(n)]  # E^T d
    return tuple(-sum(pc[i][j] * w[j] for j in range(n)) for i in range(n))


# -- Auslander-Reiten quiver --------------------------------------------

@dataclass(frozen=True)
class ARVertex:
    vertex: int  # Q-vertex i of the tau-orbit of P_i
    step: int  # r in tau^{-r} P_i
    dim: DimVector
    projective: bool
    injective: bool


@dataclass
class ARQuiver:
    quiver: Quiver
    vertices: list[ARVertex]
    arrows: list[tuple[int, int]]
    tau: dict[int, int]
    middle_term: dict[int, list[int]]
    index: dict[DimVector, int] = field(default_factory=dict)

    def __post_init__(self):
        self.index = {v.dim: k for k, v in enumerate(self.vertices)}

    def find(self, d: Sequence[int]) -> int:
        try:
            return self.index[tuple(d)]
        except KeyError:
            raise QuiverError(f"{tuple(d)} is not the dimension vector of an indecomposable") from None

    def tau_of(self, d: Sequence[int]) -> DimVector | None:
        k = self.find(d)
        if k not in self.tau:
            return None
        return self.vertices[self.tau[k]].dim

    def orbit(self, i: int) -> list[int]:
        """AR-vertex indices ``P_i, tau^{-1} P_i, ...`` in order."""
        members = [k for k, v in enumerate(self.vertices) if v.vertex == i]
        return sorted(members, key=lambda k: self.vertices[k].step)

    def non_projective(self) -> list[int]:
        return sorted(self.tau)


def ar_quiver(q: Quiver) -> ARQuiver:
    """Knit the AR quiver of ``mod kQ`` from the projectives.

    The AR quiver of a Dynkin quiver is the finite full subquiver of the
    translation quiver ``Z Q^op`` with vertices ``(i, r) = tau^{-r} P_i``.
    An arrow ``i -> j`` of ``Q`` gives ``(j, r) -> (i, r)`` and
    ``(i, r) -> (j, r + 1)``.  Mesh relations determine
    ``dim (i, r+1) = sum(dim of successors of (i, r)) - dim (i, r)``, and an
    orbit stops at an injective.  The result is cross-checked against the
    Coxeter transform and the root list; any disagreement raises.
    """
    q.require_dynkin()
    roots = set(_positive_roots_cached(q))
    injectives = set(injective_vectors(q))
    proj = projective_vectors(q)
    # (j, r+1) must be known before (i, r+1) whenever i -> j: sinks first
    level_order = list(reversed(q.topological_order()))

    dims: dict[tuple[int, int], DimVector] = {}
    for i in q.vertices:
        dims[(i, 0)] = proj[i - 1]
    alive = {i for i in q.vertices if proj[i - 1] not in injectives}
    r = 0
    limit = len(roots) + 1
    while alive:
        if r > limit:
            raise QuiverError("knitting did not terminate; quiver is not Dynkin")
        for i in level_order:
            if i not in alive:
                continue
            total = [0] * q.n
            for k in q.predecessors(i):
                if (k, r) in dims:
                    total = [a + b for a, b in zip(total, dims[(k, r)])]
            for j in q.successors(i):
                if (j, r + 1) in dims:
                    total = [a + b for a, b in zip(total, dims[(j, r + 1)])]
            new = tuple(a - b for a, b in zip(total, dims[(i, r)]))
            if new not in roots:
                raise QuiverError(f"knitting produced {new}, which is not a positive root")
            dims[(i, r + 1)] = new
        r += 1
        alive = {i for i in alive if dims[(i, r)] not in injectives}

    keys = sorted(dims, key=lambda k: (k[1], level_order.index(k[0])))
    vertices = [
        ARVertex(i, s, dims[(i, s)], s == 0, dims[(i, s)] in injectives) for i, s in keys
    ]
    pos = {k: idx for idx, k in enumerate(keys)}
    if len(vertices) != len(roots) or {v.dim for v in vertices} != roots:
        raise QuiverError("knitting does not produce every positive root exactly once")

    arrows = []
    for a, b in q.arrows:  # i = a, j = b
        for s in range(r + 1):
            if (b, s) in pos and (a, s) in pos:
                arrows.append((pos[(b, s)], pos[(a, s)]))
            if (a, s) in pos and (b, s + 1) in pos:
                arrows.append((pos[(a, s)], pos[(b, s + 1)]))
    arrows.sort()

    tau_map = {}
    middle = {}
    for (i, s), idx in pos.items():
        if s == 0:
            continue
        prev = pos[(i, s - 1)]
        tau_map[idx] = prev
        middle[idx] = sorted(a for a, b in arrows if b == idx)
        succ = sorted(b for a, b in arrows if a == prev)
        if middle[idx] != succ:
            raise QuiverError(f"mesh at {dims[(i, s)]} is inconsistent")
        if coxeter_tau(q, dims[(i, s)]) != dims[(i, s - 1)]:
            raise QuiverError(
                f"knitting and Coxeter transform disagree on tau{dims[(i, s)]}"
            )
    return ARQuiver(q, vertices, arrows, tau_map, middle)


_AR_CACHE: dict[Quiver, ARQuiver] = {}


def _cached_ar(q: Quiver) -> ARQuiver:
    if q not in _AR_CACHE:
        _AR_CACHE[q] = ar_quiver(q)
    return _AR_CACHE[q]


def tau(q: Quiver, d: Sequence[int]) -> DimVector | None:
    """``dim tau M`` for the indecomposable of class ``d``; None if projective."""
    return _cached_ar(q).tau_of(d)


# -- text format and standard families ----------------------------------

def parse_quiver(text: str, dynkin: bool = True) -> Quiver:
    """Parse "n" followed by one "i j" line per arrow ``i -> j``.

    Blank lines and ``#`` comments are ignored.
    """
    n = None
    arrows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise QuiverParseError(f"expected integers, got {line!r}", lineno) from None
        if n is None:
            if len(nums) != 1 or nums[0] < 1:
                raise QuiverParseError("first line must be the vertex count", lineno)
            n = nums[0]
            continue
        if len(nums) != 2:
            raise QuiverParseError(f"arrow line needs two vertices, got {line!r}", lineno)
        if not all(1 <= x <= n for x in nums):
            raise QuiverParseError(f"vertex out of range 1..{n} in {line!r}", lineno)
        arrows.append((nums[0], nums[1]))
    if n is None:
        raise QuiverParseError("empty quiver file")
    try:
        return Quiver(n, arrows, dynkin=dynkin)
    except QuiverParseError:
        raise
    except QuiverError as exc:
        raise QuiverParseError(str(exc)) from None


def format_quiver(q: Quiver) -> str:
    lines = [str(q.n)] + [f"{a} {b}" for a, b in q.arrows]
    return "\n".join(lines) + "\n"


def type_a(n: int, orientation: str | Sequence[bool] = "equi") -> Quiver:
    """Path ``1 - 2 - ... - n``.

    ``orientation`` is ``"equi"`` (all ``i -> i+1``), ``"alt"`` (``1 -> 2 <- 3
    -> ...``) or a sequence of booleans, True meaning ``i -> i+1``.
    """
    if orientation == "equi":
        flags = [True] * (n - 1)
    elif orientation == "alt":
        flags = [i % 2 == 0 for i in range(n - 1)]
    else:
        flags = list(orientation)
    arrows = [(i, i + 1) if f else (i + 1, i) for i, f in zip(range(1, n), flags)]
    return Quiver(n, arrows)


def type_d(n: int, orientation: Sequence[bool] | None = None) -> Quiver:
    """D_n with centre 2 adjacent to 1, 3 and 4; the tail continues 4 - 5 - ... - n.

    For n = 4 and default orientation this is the quiver 1 -> 2 <- 3, 4 -> 2.
    ``orientation`` flags refer to the edges ``(1,2), (3,2), (4,2), (4,5), ...``
    with True meaning the arrow points in the listed direction.
    """
    if n < 4:
        raise QuiverError("D_n needs n >= 4")
    edges = [(1, 2), (3, 2), (4, 2)] + [(k, k + 1) for k in range(4, n)]
    flags = list(orientation) if orientation is not None else [True] * len(edges)
    arrows = [(a, b) if f else (b, a) for (a, b), f in zip(edges, flags)]
    return Quiver(n, arrows)


def type_e(n: int, orientation: Sequence[bool] | None = None) -> Quiver:
    """E_n: chain 1 - 2 - ... - (n-1) with vertex n attached to 3."""
    if n not in (6, 7, 8):
        raise QuiverError("E_n needs n in 6, 7, 8")
    edges = [(k, k + 1) for k in range(1, n - 1)] + [(n, 3)]
    flags = list(orientation) if orientation is not None else [True] * len(edges)
    arrows = [(a, b) if f else (b, a) for (a, b), f in zip(edges, flags)]
    return Quiver(n, arrows)


def orientations(q: Quiver) -> list[Quiver]:
    """Every orientation of the underlying graph of ``q``."""
    edges = [tuple(sorted(e)) for e in q.arrows]
    out = []
    for flags in itertools.product([True, False], repeat=len(edges)):
        arrows = [(a, b) if f else (b, a) for (a, b), f in zip(edges, flags)]
        out.append(Quiver(q.n, arrows))
    return out
