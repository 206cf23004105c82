import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hextqft.fields import make_field
from hextqft.poly import Poly, basis, basis_size, substitute, times_linear


def test_parse_and_format_round_trip():
    f = Poly.parse("de^2+2bd-c^3", p=5)
    assert f.terms[(0, 0, 0, 1, 2)] == 1
    assert f.terms[(0, 0, 3, 0, 0)] == 4
    assert Poly.parse(f.format(), p=5) == f
    assert Poly.parse("a+a", p=2) == Poly(5, 2)
    with pytest.raises(ValueError):
        Poly.parse("")
    with pytest.raises(ValueError):
        Poly.parse("a*b")


def test_basis_size_and_order():
    b = basis(5, 3)
    assert len(b) == basis_size(5, 3) == 35
    assert b.monomials[0] == (3, 0, 0, 0, 0)
    assert b.monomials[-1] == (0, 0, 0, 0, 3)
    f = Poly.parse("ab^2+3e^3", p=7)
    assert b.poly(b.vector(f), 7) == f
    with pytest.raises(ValueError):
        b.vector(Poly.parse("a^2", p=7))


polys = st.dictionaries(
    st.tuples(*[st.integers(0, 2)] * 3), st.integers(-4, 4), max_size=5)


@settings(max_examples=60, deadline=None)
@given(polys, polys, st.lists(st.integers(0, 6), min_size=3, max_size=3))
def test_ring_operations_agree_with_evaluation(t1, t2, point):
    F = make_field(7)
    f, g = Poly(3, 7, t1), Poly(3, 7, t2)
    ev = lambda h: h.evaluate(F, point)
    assert ev(f + g) == F.add(ev(f), ev(g))
    assert ev(f - g) == F.sub(ev(f), ev(g))
    assert ev(f * g) == F.mul(ev(f), ev(g))
    assert ev(f * 3) == F.mul(3, ev(f))


def test_frobenius_is_pth_power():
    for p in (2, 3):
        f = Poly.parse("a^2+bc+2e^2", p=p)
        power = f
        for _ in range(p - 1):
            power = power * f
        assert f.frobenius() == power
    with pytest.raises(ValueError):
        Poly.parse("a").frobenius()


def test_homogeneity():
    assert Poly.parse("ab+c^2", p=3).is_homogeneous()
    assert not Poly.parse("a+b^2", p=3).is_homogeneous()
    assert Poly.parse("ab+c^2", p=3).degree == 2


def test_times_linear_matches_sparse_product():
    p = 5
    rng = np.random.default_rng(0)
    b2 = basis(4, 2)
    vecs = rng.integers(0, p, size=(6, len(b2)))
    forms = rng.integers(0, p, size=(6, 4))
    out = times_linear(vecs, forms, 4, 2, p)
    for j in range(6):
        lin = Poly(4, p, {tuple(int(i == v) for i in range(4)): int(forms[j, v]) for v in range(4)})
        assert basis(4, 3).poly(out[j], p) == b2.poly(vecs[j], p) * lin


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_substitute_matches_pointwise_evaluation(seed):
    p = 3
    F = make_field(p)
    rng = np.random.default_rng(seed)
    f = basis(5, 3).poly(rng.integers(0, p, size=35), p)
    forms = rng.integers(0, p, size=(5, 4))
    g = basis(4, 3).poly(substitute(f, forms, p), p) if f else Poly(4, p)
    for _ in range(5):
        z = rng.integers(0, p, size=4)
        values = [int(v) for v in (forms @ z) % p]
        assert g.evaluate(F, [int(v) for v in z]) == f.evaluate(F, values)


def test_substitute_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        substitute(Poly.parse("a+b^2", p=2), np.eye(5, dtype=np.int64), 2)
