import itertools
import random
from math import comb

import pytest

from hextqft.catalogue import REGISTRY, load
from hextqft.triangulation import (Triangulation, TriangulationError, boundary_frame,
                                   boundary_of_simplex, circle, emit, from_facets, ingest,
                                   normalize_labels, orient, orientation_consistent, parse_tri,
                                   relabel, simplex_boundary, staircase_count, staircase_product)


def test_boundary_of_simplex():
    s = boundary_of_simplex(5)
    assert s.f_vector == (6, 15, 20, 15, 6)
    assert s.is_closed
    assert all(len(c) == 2 for c in s.ridge_cofaces.values())
    with pytest.raises(TriangulationError):
        boundary_of_simplex(4)


def test_single_pentachoron_is_bounded():
    t = from_facets([(1, 2, 3, 4, 5)])
    assert not t.is_closed
    assert len(t.boundary_ridges) == 5
    frame = boundary_frame(t)
    assert len(frame.tets) == 5
    assert sorted(frame.position) == [0, 1, 2, 3, 4]


def test_input_errors():
    with pytest.raises(TriangulationError, match="duplicate"):
        from_facets([(1, 2, 3, 4, 5), (5, 4, 3, 2, 1)])
    with pytest.raises(TriangulationError):
        # three pentachora on the tetrahedron 1234
        from_facets([(1, 2, 3, 4, 5), (1, 2, 3, 4, 6), (1, 2, 3, 4, 7)])
    with pytest.raises(TriangulationError):
        from_facets([(1, 2, 3, 4, 5), (6, 7, 8, 9, 10)])
    with pytest.raises(TriangulationError):
        from_facets([(1, 1, 2, 3, 4)])


def test_double_counting_of_tetrahedra():
    for name in ("s4", "cp2", "s2xs2", "rp2xs2"):
        t = load(name)
        assert 5 * len(t.facets) == 2 * t.f_vector[3]


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_euler_characteristic_and_orientability(name):
    t = load(name)
    entry = REGISTRY[name]
    assert t.is_closed
    assert t.euler_characteristic == entry.chi
    o = orient(t)
    assert o.orientable == entry.orientable
    if o.orientable:
        assert o.signs[0] == 1
        assert orientation_consistent(t, o)


def test_staircase_counts():
    s2 = simplex_boundary(3)
    assert len(staircase_product(s2, s2).facets) == 4 * 4 * comb(4, 2) == 96
    p = staircase_product(circle(3), simplex_boundary(4))
    assert len(p.facets) == 3 * 5 * 4 == 60
    assert p.is_closed and p.dim == 4
    t2 = staircase_product(circle(3), circle(4))
    assert len(t2.facets) == staircase_count(circle(3), circle(4)) == 24
    assert t2.euler_characteristic == 0
    with pytest.raises(TriangulationError):
        staircase_product(Triangulation([(1,), (2,)]), simplex_boundary(4))


def test_orientation_of_boundary_simplex():
    s = boundary_of_simplex(5)
    o = orient(s)
    assert o.orientable
    # facets are 12345, 12346, ..., 23456: the facet omitting vertex i
    # is facets[6 - i]; consecutive ones carry opposite signs and the
    # lexicographically first one is normalised to +1.
    eps = {6 - u: o.signs[u] for u in range(6)}
    assert o.signs[0] == 1
    for i, j in itertools.combinations(range(1, 7), 2):
        assert eps[i] * eps[j] == (-1) ** (i - j)


def test_relabel():
    s = boundary_of_simplex(5)
    assert relabel(s, {v: v for v in s.vertices}) == s
    swapped = relabel(s, {1: 2, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6})
    assert swapped.f_vector == s.f_vector
    with pytest.raises(TriangulationError):
        relabel(s, {1: 1, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6})
    spread = relabel(s, {v: 10 * v for v in s.vertices})
    assert normalize_labels(spread) == s


def test_tri_round_trip():
    s = boundary_of_simplex(5)
    text = emit(s, ["a comment"])
    assert text.splitlines()[:3] == ["# a comment", "dim 4", "name S4"]
    back = parse_tri(text)
    assert back == s and back.name == "S4"
    assert ingest(text).f_vector == (6, 15, 20, 15, 6)


def test_tri_errors_carry_line_numbers():
    with pytest.raises(TriangulationError, match="empty"):
        parse_tri("dim 4\n")
    with pytest.raises(TriangulationError, match="line 1"):
        parse_tri("dim 3\n1 2 3 4\n")
    with pytest.raises(TriangulationError, match="line 3"):
        parse_tri("dim 4\n1 2 3 4 5\n1 2 x 4 6\n")
    with pytest.raises(TriangulationError, match="line 2"):
        parse_tri("dim 4\n1 2 3 4\n")


def test_tri_file_ingest(tmp_path):
    t = load("cp2")
    path = tmp_path / "cp2.tri"
    path.write_text(emit(t))
    u = ingest(str(path))
    assert u.f_vector == (9, 36, 84, 90, 36)
    assert emit(u) == emit(t)


def test_orientation_invariant_after_random_relabel():
    rng = random.Random(4)
    t = load("cp2")
    perm = list(t.vertices)
    rng.shuffle(perm)
    u = relabel(t, dict(zip(t.vertices, perm)))
    o = orient(u)
    assert o.orientable and orientation_consistent(u, o)
