import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hextqft import linalg
from hextqft.fields import FieldError, canonical_modulus, is_irreducible, make_field
from hextqft.hexagon import R_INT, psi_table, r_matrix
from hextqft.linalg import Matrix, RowSpan

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (2, 4), (3, 2)]


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms(p, k):
    F = make_field(p, k)
    els = list(range(F.q))
    for a in els:
        assert F.add(a, 0) == a
        assert F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    rng = np.random.default_rng(p * 10 + k)
    for a, b, c in rng.integers(0, F.q, size=(1000, 3)):
        a, b, c = int(a), int(b), int(c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(a, b) == F.add(b, a)


@pytest.mark.parametrize("p,k", FIELDS)
def test_frobenius_has_order_k(p, k):
    F = make_field(p, k)
    for a in range(F.q):
        assert F.pow(a, F.q) == a


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_frobenius_additive_on_random_pairs(k):
    F = make_field(2, k)
    rng = np.random.default_rng(k)
    for a, b in rng.integers(0, F.q, size=(1000, 2)):
        a, b = int(a), int(b)
        assert F.pow(F.add(a, b), 2) == F.add(F.pow(a, 2), F.pow(b, 2))


def test_multiplicative_group_is_cyclic():
    F = make_field(2, 4)
    orders = {min(n for n in range(1, 16) if F.pow(a, n) == 1) for a in range(1, 16)}
    assert 15 in orders


def _gf2_rem(a: int, b: int) -> int:
    # polynomials over GF(2) as bit masks
    while a and a.bit_length() >= b.bit_length():
        a ^= b << (a.bit_length() - b.bit_length())
    return a


def test_x4_x_1_is_irreducible_oracle():
    f = 0b10011
    # no factor of degree 1 or 2 (a reducible quartic has one)
    assert all(_gf2_rem(f, g) for g in range(2, 8))
    assert is_irreducible((1, 1, 0, 0, 1), 2)
    assert _gf2_rem(0b1011, 0b11) and _gf2_rem(0b1011, 0b10)
    assert is_irreducible(canonical_modulus(2, 3), 2)
    assert not is_irreducible((1, 0, 1, 0, 1), 2)   # (x^2 + x + 1)^2
    assert canonical_modulus(2, 4) == (1, 1, 0, 0, 1)


def test_field_errors():
    with pytest.raises(FieldError):
        make_field(4, 1)
    with pytest.raises(FieldError):
        make_field(2, 0)
    with pytest.raises(FieldError):
        make_field(2, 17)


def test_element_labels_are_digit_sums():
    F = make_field(3, 2)
    for a in range(9):
        d = F.digits(a)
        assert sum(c * 3 ** i for i, c in enumerate(d)) == a
        assert F.from_digits(d) == a


def test_vector_ops_match_scalar_ops():
    F = make_field(2, 3)
    a = np.arange(8)
    b = (a * 5 + 3) % 8
    assert list(F.vadd(a, b)) == [F.add(int(x), int(y)) for x, y in zip(a, b)]
    assert list(F.vmul(a, b)) == [F.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert list(F.vscale(3, a)) == [F.mul(3, int(x)) for x in a]


def test_rref_trivial_cases():
    F = make_field(2)
    red, piv = linalg.rref(Matrix.identity(F, 2))
    assert red == Matrix.identity(F, 2) and piv == [0, 1]
    red, piv = linalg.rref(Matrix.zeros(F, 3, 4))
    assert piv == [] and not red.labels().any()
    assert linalg.nullspace(Matrix.identity(F, 4)).rows == 0
    assert linalg.nullspace(Matrix.zeros(F, 2, 3)).rows == 3
    assert linalg.rank(Matrix.identity(make_field(5), 4)) == 4


def _random_matrix(F, rows, cols, seed):
    rng = np.random.default_rng(seed)
    return Matrix(F, rng.integers(0, F.q, size=(rows, cols)))


@pytest.mark.parametrize("p,k", FIELDS)
def test_rank_nullity_on_random_matrices(p, k):
    F = make_field(p, k)
    rng = np.random.default_rng(100 * p + k)
    for trial in range(200):
        rows, cols = (int(x) for x in rng.integers(1, 41, size=2))
        data = rng.integers(0, F.q, size=(rows, cols))
        if trial % 3 == 0:
            # force rank deficiency with repeated rows
            data[rows // 2:] = data[: rows - rows // 2]
        m = Matrix(F, data)
        ns = linalg.nullspace(m)
        assert linalg.rank(m) + ns.rows == cols
        if ns.rows:
            assert not linalg.matmul(F, m.labels(), ns.labels().T).any()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(1, 8), st.integers(1, 9), st.integers(0, 10 ** 6))
def test_rref_idempotent_and_row_space_preserved(pk, rows, cols, seed):
    F = make_field(*pk)
    m = _random_matrix(F, rows, cols, seed)
    red, piv = linalg.rref(m)
    red2, piv2 = linalg.rref(red)
    assert red2 == red and piv2 == piv
    assert piv == sorted(set(piv))
    span = RowSpan(F, cols)
    for i in range(len(piv)):
        span.add(red.row(i))
    assert all(span.contains(m.row(i)) for i in range(rows))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.integers(1, 40), st.integers(0, 10 ** 6))
def test_gf2_bitpacked_matches_generic(rows, cols, seed):
    F = make_field(2)
    m = _random_matrix(F, rows, cols, seed)
    assert linalg.rref(m, method="gf2") == linalg.rref(m, method="generic")
    assert linalg.nullspace(m, method="gf2") == linalg.nullspace(m, method="generic")


def test_solve_identity_and_inconsistent():
    F = make_field(7)
    v = np.array([1, 2, 3])
    assert list(linalg.solve(Matrix.identity(F, 3), v)) == [1, 2, 3]
    m = Matrix.from_ints(F, [[1, 0], [1, 0]])
    assert linalg.solve(m, np.array([1, 2])) is None


def test_rowspan_membership():
    F = make_field(3)
    s = RowSpan(F, 3)
    assert s.add([1, 2, 0])
    assert not s.add([2, 1, 0])
    assert s.contains([0, 0, 0]) and not s.contains([0, 0, 1])
    assert s.dim == 1


def _det_int(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = (-1) ** sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        prod = 1
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += sign * prod
    return total


def test_psi_rank_over_gf3_via_minors():
    F = make_field(3)
    psi = psi_table(F).labels().tolist()
    minors = [(psi[0][i] * psi[1][j] - psi[0][j] * psi[1][i]) % 3
              for i, j in itertools.combinations(range(6), 2)]
    assert any(minors)
    assert linalg.rank(psi_table(F)) == 2


def test_r_matrix_rank_matches_integer_determinant():
    det = _det_int([list(r) for r in R_INT])
    for p in (2, 3, 5):
        Rp = r_matrix(make_field(p))
        assert (linalg.rank(Rp) == 5) == (det % p != 0)


def test_boundary_simplex_gluing_nullity_is_nine():
    from hextqft.hexagon import gluing_matrix
    from hextqft.triangulation import boundary_of_simplex
    assert linalg.nullity(gluing_matrix(boundary_of_simplex(5), make_field(2))) == 9


@pytest.mark.parametrize("p", [3, 5, 251])
def test_blocked_prime_elimination_matches_plain_route(p):
    # matrices wider than one panel take the blocked route
    rng = np.random.default_rng(p)
    F = make_field(p)
    for trial in range(4):
        n, m = (int(x) for x in rng.integers(70, 200, size=2))
        r = int(rng.integers(1, min(n, m)))
        data = rng.integers(0, p, size=(n, r)) @ rng.integers(0, p, size=(r, m)) % p
        if trial % 2:
            data[:, rng.integers(0, m, size=m // 3)] = 0
        mat = Matrix(F, data)
        fast = linalg.rref(mat)
        assert fast == linalg.rref(mat, method="generic")
        ns = linalg.nullspace(mat)
        assert ns.rows + len(fast[1]) == m
        assert not linalg.matmul(F, data, ns.labels().T).any()
