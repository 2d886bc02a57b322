import itertools

import pytest

from clusterhall.frieze import (
    Frieze,
    FriezeError,
    Triangulation,
    build_frieze,
    compare_friezes,
    fan_triangulation,
    frieze_from_ar,
    m_sequence,
    parse_triangulation,
    quiver_from_triangulation,
    triangles,
    triangulation_problems,
    validate_triangulation,
)
from clusterhall.quiver import Quiver, QuiverError, type_a, type_d

HEXAGON = Triangulation(6, [(2, 5), (2, 6), (3, 5)])
PRINTED = """\
         1     1     1     1     1     1     1
            1     3     2     1     3     2     1
         1     2     5     1     2     5     1
            1     3     2     1     3     2     1
         1     1     1     1     1     1     1"""


def all_triangulations(N: int):
    diags = [(a, b) for a in range(1, N + 1) for b in range(a + 2, N + 1) if (b - a) % N not in (1, N - 1)]
    for combo in itertools.combinations(diags, N - 3):
        t = Triangulation(N, combo)
        if validate_triangulation(t):
            yield t


def catalan(k: int) -> int:
    from math import comb
    return comb(2 * k, k) // (k + 1)


def test_hexagon_m_row_and_frieze():
    assert m_sequence(HEXAGON) == (1, 3, 2, 1, 3, 2)
    f = build_frieze(m_sequence(HEXAGON))
    assert f.render() == PRINTED
    assert f.is_valid() and not f.diamond_defects()


def test_validation():
    assert validate_triangulation(HEXAGON)
    bad = Triangulation(6, [(1, 4), (2, 5), (1, 3)])
    problems = triangulation_problems(bad)
    assert any("(1, 4) and (2, 5) cross" in p for p in problems)
    assert triangulation_problems(Triangulation(5, [(1, 2), (1, 3)]))
    assert triangulation_problems(Triangulation(5, [(1, 3)]))
    with pytest.raises(FriezeError):
        m_sequence(bad)


@pytest.mark.parametrize("N", [4, 5, 6, 7, 8])
def test_triangulation_counts(N):
    ts = list(all_triangulations(N))
    assert len(ts) == catalan(N - 2)
    for t in ts:
        assert len(triangles(t)) == N - 2


def test_build_frieze_rejects_bad_rows():
    with pytest.raises(FriezeError):
        build_frieze((1, 1, 1, 1))
    with pytest.raises(FriezeError):
        build_frieze((2, 2, 2, 2, 2))
    with pytest.raises(FriezeError):
        build_frieze((0, 1, 2))


def test_square_frieze():
    f = build_frieze((1, 2, 1, 2))
    assert compare_friezes(f, frieze_from_ar(type_a(1)))


def test_quiver_shapes():
    q = quiver_from_triangulation(HEXAGON)
    assert q.dynkin_type == "A3"
    assert set(q.arrows) == {(2, 1), (3, 1)}
    fan = quiver_from_triangulation(fan_triangulation(8))
    assert fan.dynkin_type == "A5"
    assert set(fan.arrows) == {(2, 1), (3, 2), (4, 3), (5, 4)}
    internal = quiver_from_triangulation(Triangulation(6, [(1, 3), (3, 5), (1, 5)]))
    assert internal.dynkin_type is None


def test_hexagon_against_ar():
    q = quiver_from_triangulation(HEXAGON)
    f = build_frieze(m_sequence(HEXAGON))
    g = frieze_from_ar(q)
    assert g.is_valid() and compare_friezes(f, g)
    assert compare_friezes(f, frieze_from_ar(Quiver(3, [(1, 2), (3, 2)])))


@pytest.mark.parametrize("N", [4, 5, 6, 7, 8])
def test_every_type_a_triangulation_matches_ar(N):
    for t in all_triangulations(N):
        q = quiver_from_triangulation(t)
        if q.dynkin_type is None:
            continue
        f = build_frieze(m_sequence(t))
        g = frieze_from_ar(q)
        assert g.is_valid()
        assert compare_friezes(f, g), t


def test_compare_is_shift_only():
    f = build_frieze((1, 3, 2, 1, 3, 2))
    shifted = Frieze(tuple(r[1:] + r[:1] for r in f.rows))
    assert compare_friezes(f, shifted)
    g = build_frieze((1, 4, 1, 2, 2, 2))
    assert not compare_friezes(f, g)
    mirrored = build_frieze((1, 2, 3, 1, 2, 3))  # reflection of f, not a shift of it
    assert not compare_friezes(f, mirrored)


def test_ar_refuses_other_types():
    with pytest.raises(QuiverError):
        frieze_from_ar(type_d(4))


def test_parse_triangulation():
    t = parse_triangulation("# hexagon\nngon=6\n2 5\n2 6\n3 5\n")
    assert t == HEXAGON
    with pytest.raises(FriezeError):
        parse_triangulation("6\n2 5\n")
    with pytest.raises(FriezeError):
        parse_triangulation("ngon=6\n2 5 1\n")
    with pytest.raises(FriezeError):
        parse_triangulation("")
