"""Polynomial hexagon cohomology in degree 4.

An n-cochain of degree kappa is a homogeneous polynomial in the free
variables of the reduced ring of the n-simplex, i.e. the polynomial ring in
all x_t, y_t modulo the linear relations y = R x on every pentachoron.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .cocycles import Cocycle, catalogue_keys, catalogue_lookup, char0_cocycle, frobenius
from .fields import make_field
from .hexagon import R_INT
from .linalg import Matrix, RowSpan
from .poly import Poly, basis, basis_size, mul_table, times_linear

WITNESS_PRIMES = (101, 103)


@dataclass(frozen=True)
class ReducedRing:
    """Free variables of the n-simplex after eliminating the pentachoron relations.

    Variables are indexed y_t for all tetrahedra first, then x_t, with the
    tetrahedra in descending lexicographic order (for n=4: 2345, 1345, 1245,
    1235, 1234).  ``forms[v]`` expresses variable v in the free variables.
    """

    n: int
    p: int
    tets: tuple[tuple[int, ...], ...]
    free: tuple[int, ...]
    forms: np.ndarray

    @property
    def nfree(self) -> int:
        return len(self.free)

    def x(self, tet: Sequence[int]) -> int:
        return len(self.tets) + self.tets.index(tuple(tet))

    def y(self, tet: Sequence[int]) -> int:
        return self.tets.index(tuple(tet))

    def variable_name(self, v: int) -> str:
        T = len(self.tets)
        kind = "y" if v < T else "x"
        return kind + "".join(map(str, self.tets[v % T]))

    def free_names(self) -> list[str]:
        return [self.variable_name(v) for v in self.free]

    def reduce(self, poly: Poly) -> np.ndarray:
        """Dense coefficient vector of a homogeneous polynomial in all variables."""
        if poly.nvars != 2 * len(self.tets):
            raise ValueError("polynomial is not in this ring's variables")
        from .poly import substitute
        return substitute(poly, self.forms, self.p)

    def as_poly(self, vec: np.ndarray, degree: int) -> Poly:
        return basis(self.nfree, degree).poly(vec, self.p)


@lru_cache(maxsize=None)
def reduced_ring(n: int, p: int) -> ReducedRing:
    if n not in (3, 4, 5):
        raise ValueError("reduced rings are defined here for n = 3, 4, 5")
    verts = range(1, n + 2)
    tets = tuple(sorted(itertools.combinations(verts, 4), reverse=True))
    T = len(tets)
    idx = {t: i for i, t in enumerate(tets)}
    rows = []
    for u in itertools.combinations(verts, 5):
        faces = [u[:j] + u[j + 1:] for j in range(5)]
        for j in range(5):
            r = [0] * (2 * T)
            r[idx[faces[j]]] += 1
            for k in range(5):
                r[T + idx[faces[k]]] -= R_INT[j][k]
            rows.append(r)
    F = make_field(p)
    nv = 2 * T
    if rows:
        red, piv = linalg.rref(Matrix.from_ints(F, rows))
        a = red.labels()
    else:
        piv, a = [], np.zeros((0, nv), dtype=np.int64)
    pivset = set(piv)
    free = tuple(c for c in range(nv) if c not in pivset)
    col = {c: i for i, c in enumerate(free)}
    forms = np.zeros((nv, len(free)), dtype=np.int64)
    for c in free:
        forms[c, col[c]] = 1
    for r, pc in enumerate(piv):
        for c in free:
            forms[pc, col[c]] = (-int(a[r, c])) % p
    return ReducedRing(n, p, tets, free, forms)


def monomial_images(forms: np.ndarray, degree: int, p: int) -> np.ndarray:
    """Images of all degree-``degree`` monomials under a linear substitution.

    ``forms`` is (m, k): variable i of the source goes to the linear form
    forms[i] in k target variables.  Returns shape (len(basis(m)), len(basis(k))).
    """
    m, k = forms.shape
    img = np.ones((1, 1), dtype=np.int64)
    for deg in range(1, degree + 1):
        src = basis(m, deg)
        prev = basis(m, deg - 1)
        out = np.zeros((len(src), basis_size(k, deg)), dtype=np.int64)
        by_var: dict[int, tuple[list[int], list[int]]] = {}
        for r, e in enumerate(src.monomials):
            i = max(j for j, a in enumerate(e) if a)
            f = list(e)
            f[i] -= 1
            rows, prevs = by_var.setdefault(i, ([], []))
            rows.append(r)
            prevs.append(prev.index[tuple(f)])
        for i, (rows, prevs) in by_var.items():
            fi = np.repeat(forms[i][None, :], len(rows), axis=0)
            out[rows] = times_linear(img[prevs], fi, k, deg - 1, p)
        img = out
    return img % p


def _face_forms(n: int, p: int, i: int) -> np.ndarray:
    """Free variables of the (n-1)-simplex expressed in the n-simplex ring, face i.

    Face i (1-based) omits vertex i; its vertices are identified in
    increasing order with 1..n.
    """
    src = reduced_ring(n - 1, p)
    dst = reduced_ring(n, p)
    vmap = [v for v in range(1, n + 2) if v != i]
    T = len(src.tets)
    out = np.zeros((src.nfree, dst.nfree), dtype=np.int64)
    for r, v in enumerate(src.free):
        tet = tuple(vmap[a - 1] for a in src.tets[v % T])
        target = dst.y(tet) if v < T else dst.x(tet)
        out[r] = dst.forms[target]
    return out


@lru_cache(maxsize=None)
def _coboundary_array(n: int, p: int, kappa: int) -> np.ndarray:
    if n not in (4, 5):
        raise ValueError("coboundaries are defined here for n = 4, 5")
    total = None
    for i in range(1, n + 2):
        img = monomial_images(_face_forms(n, p, i), kappa, p)
        term = img if i % 2 else -img
        total = term if total is None else total + term
    arr = (total.T % p).astype(np.int64)
    arr.setflags(write=False)
    return arr


def coboundary_matrix(n: int, p: int, kappa: int) -> Matrix:
    """Matrix of delta^n from degree-kappa (n-1)-cochains to n-cochains."""
    return Matrix(make_field(p), _coboundary_array(n, p, kappa))


@dataclass(frozen=True)
class Cochain:
    ring: ReducedRing
    degree: int
    vector: np.ndarray

    def poly(self) -> Poly:
        return self.ring.as_poly(self.vector, self.degree)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.ring == other.ring
                and self.degree == other.degree and np.array_equal(self.vector, other.vector))


def cochain(n: int, p: int, poly: Poly) -> Cochain:
    ring = reduced_ring(n, p)
    if poly.nvars != ring.nfree:
        raise ValueError(f"cochain needs {ring.nfree} variables, got {poly.nvars}")
    return Cochain(ring, poly.degree, basis(ring.nfree, poly.degree).vector(poly.reduce_mod(p)))


def coboundary(c: Cochain) -> Cochain:
    n = c.ring.n + 1
    arr = _coboundary_array(n, c.ring.p, c.degree)
    return Cochain(reduced_ring(n, c.ring.p), c.degree, (arr @ c.vector) % c.ring.p)


# -- degree-4 cohomology --------------------------------------------------------

def _vector(c: Cocycle, p: int | None = None) -> tuple[int, np.ndarray]:
    p = p or c.p
    if not p:
        raise ValueError("a characteristic-zero cocycle needs an explicit prime")
    return p, basis(5, c.kappa).vector(c.poly.reduce_mod(p))


def _image_span(p: int, kappa: int) -> RowSpan:
    d4 = _coboundary_array(4, p, kappa)
    span = RowSpan(make_field(p), d4.shape[0])
    for col in d4.T:
        span.add(col)
    return span


@dataclass(frozen=True)
class H4:
    p: int
    kappa: int
    dim: int
    kernel_dim: int
    image_dim: int
    representatives: tuple[Poly, ...]

    @property
    def catalogued(self) -> bool:
        return (self.p, self.kappa) in set(catalogue_keys())


@lru_cache(maxsize=None)
def h4(p: int, kappa: int) -> H4:
    F = make_field(p)
    d5 = Matrix(F, _coboundary_array(5, p, kappa))
    ker = linalg.nullspace(d5)
    span = _image_span(p, kappa)
    image_dim = span.dim
    reps = []
    for i in range(ker.rows):
        v = ker.row(i).astype(np.int64)
        if span.add(v):
            reps.append(basis(5, kappa).poly(v, p))
    return H4(p, kappa, ker.rows - image_dim, ker.rows, image_dim, tuple(reps))


def is_cocycle(c: Cocycle, p: int | None = None) -> bool:
    p, v = _vector(c, p)
    if not c.poly:
        return True
    d5 = _coboundary_array(5, p, c.kappa)
    return not np.any((d5 @ v) % p)


def is_coboundary(c: Cocycle, p: int | None = None) -> bool:
    p, v = _vector(c, p)
    return _image_span(p, c.kappa).contains(v)


def classes_independent(cs: Sequence[Cocycle]) -> bool:
    if not cs:
        return True
    keys = {(c.p, c.kappa) for c in cs}
    if len(keys) != 1:
        raise ValueError("classes_independent needs cocycles of one characteristic and degree")
    (p, kappa), = keys
    span = _image_span(p, kappa)
    return all(span.add(_vector(c)[1]) for c in cs)


def cohomologous(c1: Cocycle, c2: Cocycle) -> bool:
    if c1.p != c2.p:
        raise ValueError("characteristic mismatch")
    if c1.kappa != c2.kappa:
        return False
    p = c1.p
    diff = (_vector(c1)[1] - _vector(c2)[1]) % p
    return _image_span(p, c1.kappa).contains(diff)


def random_coboundary(p: int, kappa: int, rng: np.random.Generator) -> Cocycle:
    """A random element of the image of delta^4, as a catalogue-style cocycle."""
    d4 = _coboundary_array(4, p, kappa)
    coeffs = rng.integers(0, p, size=d4.shape[1])
    vec = (d4 @ coeffs) % p
    return Cocycle("coboundary", p, kappa, basis(5, kappa).poly(vec, p))


# -- reports -------------------------------------------------------------------------

@dataclass
class CheckReport:
    title: str
    items: list[tuple[str, bool]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.items)

    def text(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        lines.extend(f"  [{'ok' if ok else 'FAIL'}] {label}" for label, ok in self.items)
        return "\n".join(lines)


def char0_checks() -> CheckReport:
    items = []
    c0 = char0_cocycle()
    for q in WITNESS_PRIMES:
        items.append((f"integer degree-2 cocycle is a cocycle mod {q}", is_cocycle(c0, q)))
    for q in (3, 5):
        printed = catalogue_lookup(q, 2)[0].poly
        red = c0.poly.reduce_mod(q)
        sign = "+" if red == printed else "-" if red == -printed else None
        items.append((f"reduction mod {q} equals the printed p={q} cocycle up to sign"
                      + (f" (sign {sign})" if sign else ""), sign is not None))
    red2 = char0_cocycle(2)
    c22 = catalogue_lookup(2, 2)[0]
    items.append(("reduction mod 2 is not in the class of the printed p=2 cocycle",
                  not cohomologous(red2, c22)))
    return CheckReport("characteristic-zero cocycle", items)


# Frobenius images and the printed classes they should represent.
FROBENIUS_RELATIONS = (
    ("p2k2c1", "p2k4c3"),
    ("p2k3c1", "p2k6c2"),
    ("p2k3c2", "p2k6c3"),
    ("p3k2c1", "p3k6c1"),
)


def catalogue_checks(max_kappa: int = 6) -> CheckReport:
    """Dimensions, cocycle conditions, independence and Frobenius relations."""
    from .cocycles import get_cocycle
    items = []
    for p in (2, 3, 5):
        for kappa in range(1, max_kappa + 1):
            h = h4(p, kappa)
            basis_cs = catalogue_lookup(p, kappa)
            items.append((f"H4 p={p} kappa={kappa} dim={h.dim} (catalogue lists {len(basis_cs)})",
                          h.dim == len(basis_cs)))
            if basis_cs:
                ok = all(is_cocycle(c) for c in basis_cs)
                items.append((f"p={p} kappa={kappa}: printed polynomials are cocycles", ok))
                items.append((f"p={p} kappa={kappa}: printed classes are independent",
                              classes_independent(basis_cs)))
    for src, dst in FROBENIUS_RELATIONS:
        c = get_cocycle(src)
        if c.p * c.kappa > max_kappa:
            continue
        items.append((f"frobenius({src}) ~ {dst}", cohomologous(frobenius(c), get_cocycle(dst))))
    return CheckReport("cocycle catalogue", items)
