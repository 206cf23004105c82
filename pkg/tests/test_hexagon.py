import itertools

import numpy as np
import pytest

from hextqft import linalg
from hextqft.catalogue import load
from hextqft.fields import FieldError, make_field
from hextqft.hexagon import (PSI_X, PSI_Y, R_INT, appendix_A_of_M, appendix_psi_of_M,
                             edge_position, edge_subspace, edge_vectors, gluing_matrix,
                             permitted_space, psi_table, quotient, r_matrix, verify_full_hexagon,
                             verify_edge_dependencies)
from hextqft.triangulation import TriangulationError, boundary_of_simplex, from_facets


def _brute_force_count_gf2(t):
    # enumerate every x-coloring and keep those whose two y-predictions agree
    n = len(t.tetrahedra)
    xs = (np.arange(2 ** n)[:, None] >> np.arange(n)) & 1
    ok = np.ones(len(xs), dtype=bool)
    ft = t.facet_tets
    R = np.array(R_INT)
    for k, ((u1, p1), (u2, p2)) in enumerate(t.tet_cofaces):
        y1 = xs[:, list(ft[u1])] @ R[p1]
        y2 = xs[:, list(ft[u2])] @ R[p2]
        ok &= (y1 - y2) % 2 == 0
    return int(ok.sum())


def test_permitted_count_matches_brute_force():
    s = boundary_of_simplex(5)
    assert _brute_force_count_gf2(s) == 2 ** permitted_space(s, make_field(2)).dim == 512


@pytest.mark.parametrize("pk", [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (2, 4), (3, 2)])
def test_boundary_simplex_has_nine_dimensional_colorings(pk):
    F = make_field(*pk)
    s = boundary_of_simplex(5)
    assert permitted_space(s, F).dim == 9
    # every coloring comes from edges
    assert edge_subspace(s, F).dim == 9


def test_edge_vectors_follow_psi():
    t = load("cp2")
    F = make_field(3)
    xi = edge_vectors(t, F).labels()
    for r, e in enumerate(t.edges):
        for k, tet in enumerate(t.tetrahedra):
            pos = edge_position(tet, e)
            want = 0 if pos is None else PSI_X[pos] % 3
            assert xi[r, k] == want


def test_edge_position():
    assert edge_position((1, 2, 3, 4), (1, 2)) == 0
    assert edge_position((1, 2, 3, 4), (3, 4)) == 5
    assert edge_position((1, 2, 3, 4), (1, 5)) is None


@pytest.mark.parametrize("name", ["s4", "cp2", "s2xs2", "rp2xs2"])
@pytest.mark.parametrize("p", [2, 3])
def test_edge_space_inside_permitted_space(name, p):
    t = load(name)
    F = make_field(p)
    L = permitted_space(t, F)
    W = edge_subspace(t, F, L)
    assert L.contains_space(W)
    glue = gluing_matrix(t, F).labels()
    assert not linalg.matmul(F, glue, edge_vectors(t, F).labels().T).any()
    Q = quotient(L, W)
    assert Q.d == L.dim - W.dim


def test_quotient_representatives_are_distinct_cosets():
    t = load("cp2")
    F = make_field(2, 2)
    L, W = permitted_space(t, F), edge_subspace(t, F)
    Q = quotient(L, W)
    reps = list(Q)
    assert len(reps) == Q.count == F.q ** Q.d
    for a, b in itertools.combinations(reps, 2):
        assert not W.contains(F.vadd(a, F.vneg(b)))
    with pytest.raises(IndexError):
        Q.representative(Q.count)


def test_open_complex_rejected():
    t = from_facets([(1, 2, 3, 4, 5)])
    with pytest.raises(TriangulationError):
        gluing_matrix(t, make_field(2))


@pytest.mark.parametrize("pk", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_full_hexagon(pk):
    F = make_field(*pk)
    rep = verify_full_hexagon(F)
    assert rep.passed, rep.text()
    assert rep.multiplicities == {1: 1, 2: 1, 3: 1, 4: F.q, 5: F.q ** 4}


def test_tables_reduce_consistently():
    for p in (2, 3, 5):
        F = make_field(p)
        assert r_matrix(F).labels().tolist() == [[c % p for c in r] for r in R_INT]
        assert psi_table(F).labels().tolist() == [[c % p for c in PSI_X], [c % p for c in PSI_Y]]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_parametric_tables_at_minus_one(p):
    F = make_field(p)
    M = F.element(F.from_int(-1))
    assert appendix_psi_of_M(M) == psi_table(F)
    assert appendix_A_of_M(M) == r_matrix(F)


@pytest.mark.parametrize("p", [7, 11])
def test_edge_dependencies_for_random_M(p):
    F = make_field(p)
    rng = np.random.default_rng(p)
    for m in rng.integers(1, p, size=20):
        rep = verify_edge_dependencies(F.element(int(m)))
        assert rep.passed, rep.text()


def test_zero_M_rejected():
    F = make_field(7)
    with pytest.raises(FieldError):
        appendix_A_of_M(F.element(0))
