"""Conway-Coxeter friezes from triangulations and from AR quivers of type A.

A frieze of a triangulated ``N``-gon (``N = n + 3``) is stored as rows
``R_0 .. R_{n+1}`` of length ``N``; entry ``R_r[j]`` sits at horizontal
position ``2j + r``, so every diamond reads
``R_r[j] * R_r[j+1] = 1 + R_{r-1}[j+1] * R_{r+1}[j]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .ccmap import cc_indecomposable
from .quiver import Quiver, QuiverError, ar_quiver, injective_vectors, _classify_dynkin

__all__ = [
    "Triangulation",
    "Frieze",
    "FriezeError",
    "validate_triangulation",
    "triangulation_problems",
    "m_sequence",
    "build_frieze",
    "triangles",
    "quiver_from_triangulation",
    "frieze_from_ar",
    "compare_friezes",
    "parse_triangulation",
    "fan_triangulation",
]


class FriezeError(ValueError):
    pass


@dataclass(frozen=True)
class Triangulation:
    ngon: int
    diagonals: tuple[tuple[int, int], ...]

    def __init__(self, ngon: int, diagonals: Iterable[tuple[int, int]]):
        object.__setattr__(self, "ngon", int(ngon))
        diags = sorted({tuple(sorted((int(a), int(b)))) for a, b in diagonals})
        object.__setattr__(self, "diagonals", tuple(diags))

    @property
    def rank(self) -> int:
        return self.ngon - 3


def _is_side(N: int, a: int, b: int) -> bool:
    return (b - a) % N in (1, N - 1)


def _cross(d1: tuple[int, int], d2: tuple[int, int]) -> bool:
    (a, b), (c, d) = d1, d2
    return a < c < b < d or c < a < d < b


def triangulation_problems(t: Triangulation) -> list[str]:
    N = t.ngon
    problems = []
    if N < 3:
        problems.append("a polygon needs at least 3 vertices")
    for a, b in t.diagonals:
        if not (1 <= a <= N and 1 <= b <= N):
            problems.append(f"diagonal ({a},{b}) uses a vertex outside 1..{N}")
        elif a == b or _is_side(N, a, b):
            problems.append(f"({a},{b}) is not a diagonal")
    for d1, d2 in itertools.combinations(t.diagonals, 2):
        if _cross(d1, d2):
            problems.append(f"diagonals {d1} and {d2} cross")
    if len(t.diagonals) != N - 3:
        problems.append(f"expected {N - 3} diagonals, got {len(t.diagonals)}")
    return problems


def validate_triangulation(t: Triangulation) -> bool:
    return not triangulation_problems(t)


def _require_valid(t: Triangulation) -> None:
    problems = triangulation_problems(t)
    if problems:
        raise FriezeError("; ".join(problems))


def m_sequence(t: Triangulation) -> tuple[int, ...]:
    """``1 +`` the number of diagonals at each polygon vertex."""
    _require_valid(t)
    counts = [1] * t.ngon
    for a, b in t.diagonals:
        counts[a - 1] += 1
        counts[b - 1] += 1
    return tuple(counts)


def fan_triangulation(ngon: int, apex: int = 1) -> Triangulation:
    others = [((apex - 1 + k) % ngon) + 1 for k in range(2, ngon - 1)]
    return Triangulation(ngon, [(apex, v) for v in others])


@dataclass(frozen=True)
class Frieze:
    rows: tuple[tuple[int, ...], ...]

    @property
    def period(self) -> int:
        return len(self.rows[0])

    @property
    def rank(self) -> int:
        return len(self.rows) - 2

    def entry(self, r: int, j: int) -> int:
        return self.rows[r][j % self.period]

    def diamond_defects(self) -> list[tuple[int, int]]:
        """Positions ``(r, j)`` where the diamond rule fails."""
        bad = []
        for r in range(1, len(self.rows) - 1):
            for j in range(self.period):
                lhs = self.entry(r, j) * self.entry(r, j + 1)
                rhs = 1 + self.entry(r - 1, j + 1) * self.entry(r + 1, j)
                if lhs != rhs:
                    bad.append((r, j))
        return bad

    def is_valid(self) -> bool:
        ones = all(x == 1 for x in self.rows[0]) and all(x == 1 for x in self.rows[-1])
        positive = all(isinstance(x, int) and x > 0 for row in self.rows for x in row)
        return ones and positive and not self.diamond_defects()

    def render(self, width: int | None = None) -> str:
        """Staggered layout, top row first, ``width`` entries per row."""
        width = width or self.period + 1
        lines = []
        for r in range(len(self.rows) - 1, -1, -1):
            start = -(r // 2)
            cells = "".join(str(self.entry(r, start + k)).rjust(6) for k in range(width))
            lines.append("    " + " " * (3 * (r % 2)) + cells)
        return "\n".join(lines)


def build_frieze(m: Sequence[int]) -> Frieze:
    """Grow the frieze from the row ``m`` by the diamond rule."""
    N = len(m)
    if N < 3 or any(int(x) != x or x < 1 for x in m):
        raise FriezeError("the first row must be at least 3 positive integers")
    n = N - 3
    rows = [tuple([1] * N), tuple(int(x) for x in m)]
    for r in range(1, n + 1):
        below, cur = rows[r - 1], rows[r]
        new = []
        for j in range(N):
            num = cur[j] * cur[(j + 1) % N] - 1
            den = below[(j + 1) % N]
            if num % den:
                raise FriezeError(f"non-integral entry in row {r + 1} at position {j}")
            val = num // den
            if val < 1:
                raise FriezeError(f"non-positive entry {val} in row {r + 1} at position {j}")
            new.append(val)
        rows.append(tuple(new))
    if any(x != 1 for x in rows[-1]):
        raise FriezeError(f"row {n + 1} is {rows[-1]}, not all ones; m is not from a triangulation")
    return Frieze(tuple(rows))


def triangles(t: Triangulation) -> list[tuple[int, int, int]]:
    """Triangles ``(a, b, c)`` with ``a < b < c``."""
    N = t.ngon
    diags = set(t.diagonals)

    def edge(a: int, b: int) -> bool:
        return _is_side(N, a, b) or (min(a, b), max(a, b)) in diags

    return [
        (a, b, c)
        for a, b, c in itertools.combinations(range(1, N + 1), 3)
        if edge(a, b) and edge(b, c) and edge(a, c)
    ]


def quiver_from_triangulation(t: Triangulation) -> Quiver:
    """Quiver on the diagonals (numbered in sorted order).

    Polygon vertices are read clockwise, so a triangle ``(a, b, c)`` with
    ``a < b < c`` is clockwise and the counterclockwise turn from one edge to
    the next about a shared corner gives ``ab -> bc -> ca -> ab``; arrows are
    kept when both edges are diagonals.  ``dynkin_type`` is set when the result is a
    Dynkin quiver and left as None otherwise (an internal triangle gives an
    oriented 3-cycle).
    """
    _require_valid(t)
    label = {d: k for k, d in enumerate(t.diagonals, start=1)}
    arrows = []
    for a, b, c in triangles(t):
        ab, bc, ca = (a, b), (b, c), (a, c)
        for x, y in ((ab, bc), (bc, ca), (ca, ab)):
            if x in label and y in label:
                arrows.append((label[x], label[y]))
    n = max(t.rank, 1)
    q = Quiver(n, sorted(arrows), dynkin=False)
    if t.rank >= 1:
        try:
            q.dynkin_type = _classify_dynkin(q.n, q.arrows)
        except QuiverError:
            q.dynkin_type = None
    return q


def _path_order(q: Quiver) -> list[int]:
    if q.n == 1:
        return [1]
    ends = [i for i in q.vertices if len(q.neighbours(i)) == 1]
    order = [min(ends)]
    while len(order) < q.n:
        nxt = [w for w in q.neighbours(order[-1]) if w not in order]
        order.append(nxt[0])
    return order


def frieze_from_ar(q: Quiver) -> Frieze:
    """Frieze read off the AR quiver of the cluster category of type ``A_n``.

    Each tau-orbit ``P_i, tau^{-1} P_i, ..., I_j`` is preceded by ``SP_i``
    (value 1) and followed by ``SP_j``, after which the orbit of ``P_j``
    continues the same row.  Module values are ``X_M`` at ``u = 1``, and
    ``tau^{-1}`` points to the right.
    """
    t = q.require_dynkin()
    if not t.startswith("A"):
        raise QuiverError(f"friezes from AR quivers need type A, got {t}")
    n = q.n
    N = n + 3
    ar = ar_quiver(q)
    value = {v.dim: cc_indecomposable(q, v.dim).eval_ones() for v in ar.vertices}
    inj = {d: i for i, d in enumerate(injective_vectors(q), start=1)}
    orbit_vals = {}
    sigma = {}
    for i in q.vertices:
        orbit = ar.orbit(i)
        orbit_vals[i] = [value[ar.vertices[k].dim] for k in orbit]
        sigma[i] = inj[ar.vertices[orbit[-1]].dim]

    path = _path_order(q)
    # horizontal offset of P_i: arrow i -> j puts P_j one step left of P_i
    c = {path[0]: 0}
    for a, b in zip(path, path[1:]):
        c[b] = c[a] - 1 if (a, b) in q.arrows else c[a] + 1

    rows = [[1] * N]
    s0 = c[path[0]] - 1
    for p, i in enumerate(path, start=1):
        seq: list[int] = []
        j = i
        while True:
            seq.append(1)
            seq.extend(orbit_vals[j])
            j = sigma[j]
            if j == i or len(seq) > N:
                break
        if N % len(seq):
            raise QuiverError(f"tau-row of vertex {i} has period {len(seq)}, not dividing {N}")
        seq = seq * (N // len(seq))
        row = [0] * N
        for k in range(N):
            h = c[i] - 2 + 2 * k
            row[((h - p - s0) // 2) % N] = seq[k]
        rows.append(row)
    rows.append([1] * N)
    return Frieze(tuple(tuple(r) for r in rows))


def compare_friezes(a: Frieze, b: Frieze) -> bool:
    """Equal up to one global cyclic shift of the column index."""
    if len(a.rows) != len(b.rows) or a.period != b.period:
        return False
    N = a.period
    for s in range(N):
        if all(a.rows[r][j] == b.rows[r][(j + s) % N] for r in range(len(a.rows)) for j in range(N)):
            return True
    return False


def parse_triangulation(text: str) -> Triangulation:
    """``ngon=N`` on the first line, then one ``a b`` line per diagonal."""
    ngon = None
    diags = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ngon is None:
            key, _, val = line.partition("=")
            if key.strip() != "ngon" or not val.strip().isdigit():
                raise FriezeError(f"line {lineno}: expected 'ngon=N', got {line!r}")
            ngon = int(val)
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise FriezeError(f"line {lineno}: expected two vertices, got {line!r}")
        diags.append((int(parts[0]), int(parts[1])))
    if ngon is None:
        raise FriezeError("empty triangulation file")
    return Triangulation(ngon, diags)
