"""Linear hexagon machinery: permitted colorings and edge vectors.

A permitted coloring assigns ``(x_t, y_t)`` to every tetrahedron so that on
each pentachoron the y-column is ``R`` times the x-column.  On a closed
complex the y-values are redundant, so colorings are stored as x-vectors in
``F^{N3}`` (tetrahedra in lexicographic order).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

import numpy as np

from .fields import FieldElement, FieldError, FieldSpec
from . import linalg
from .linalg import Matrix, RowSpan
from .triangulation import Triangulation, TriangulationError, boundary_of_simplex

# Rows and columns follow the tetrahedron order 2345, 1345, 1245, 1235, 1234.
R_INT = (
    (0, -2, 1, 1, -2),
    (0, -1, 0, 1, -1),
    (-1, 2, -2, 0, 1),
    (-1, 3, -2, -1, 2),
    (0, 1, -1, 0, 0),
)

# Edge positions inside a tetrahedron ijkl: ij, ik, il, jk, jl, kl.
TET_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PSI_X = (-1, 2, -1, -1, 0, 1)
PSI_Y = (1, -1, 0, 0, 1, -1)


def r_matrix(field: FieldSpec) -> Matrix:
    return Matrix.from_ints(field, R_INT)


def psi_table(field: FieldSpec) -> Matrix:
    """The 2x6 edge table: x-row then y-row."""
    return Matrix.from_ints(field, [PSI_X, PSI_Y])


def xi_row(field: FieldSpec) -> Matrix:
    return Matrix.from_ints(field, [PSI_X])


def edge_position(tet: Sequence[int], edge: Sequence[int]) -> int | None:
    """Index of ``edge`` among the six edges of ``tet``, or None."""
    try:
        pair = (tet.index(edge[0]), tet.index(edge[1]))
    except ValueError:
        return None
    return TET_EDGES.index(tuple(sorted(pair)))


# -- spaces -----------------------------------------------------------------

@dataclass(frozen=True)
class ColoringSpace:
    """Subspace of ``F^{ambient}`` given by independent basis rows."""

    field: FieldSpec
    ambient: int
    basis: Matrix
    role: str = "other"

    @property
    def dim(self) -> int:
        return self.basis.rows

    def span(self) -> RowSpan:
        s = RowSpan(self.field, self.ambient)
        for i in range(self.basis.rows):
            s.add(self.basis.row(i))
        return s

    def contains(self, v) -> bool:
        return self._span.contains(v)

    @property
    def _span(self) -> RowSpan:
        # cached lazily; the dataclass is frozen so go through __dict__
        s = self.__dict__.get("_span_cache")
        if s is None:
            s = self.span()
            object.__setattr__(self, "_span_cache", s)
        return s

    @property
    def rows(self) -> np.ndarray:
        """Basis labels as an int64 array (cached, read-only)."""
        r = self.__dict__.get("_rows_cache")
        if r is None:
            r = self.basis.labels().astype(np.int64)
            r.setflags(write=False)
            object.__setattr__(self, "_rows_cache", r)
        return r

    def contains_space(self, other: "ColoringSpace") -> bool:
        if self.field.p == 2 or other.dim < 8:
            return all(self.contains(other.basis.row(i)) for i in range(other.dim))
        # vector-at-a-time reduction is slow outside characteristic 2; compare ranks
        both = Matrix(self.field, np.concatenate([self.rows, other.rows]))
        return linalg.rank(both) == self.dim


def _need_closed(t: Triangulation):
    if not t.is_closed:
        raise TriangulationError("operation needs a closed triangulation (found boundary tetrahedra)")


def gluing_matrix(t: Triangulation, field: FieldSpec) -> Matrix:
    """One row per tetrahedron: difference of the two y-predictions."""
    _need_closed(t)
    return Matrix(field, _gluing_array(t, field.p))


def _gluing_array(t: Triangulation, p: int) -> np.ndarray:
    n3 = len(t.tetrahedra)
    a = np.zeros((n3, n3), dtype=np.int64)
    ft = t.facet_tets
    for i, cof in enumerate(t.tet_cofaces):
        (u1, p1), (u2, p2) = cof
        for j in range(5):
            a[i, ft[u1][j]] += R_INT[p1][j]
            a[i, ft[u2][j]] -= R_INT[p2][j]
    return a % p


def gluing_residual(t: Triangulation, field: FieldSpec, x: np.ndarray) -> np.ndarray:
    """Gluing matrix times an x-coloring, using its sparsity (ten terms per row)."""
    _need_closed(t)
    idx, coef = _gluing_terms(t, field.p)
    x = np.asarray(x, dtype=np.int64)
    out = np.zeros(idx.shape[0], dtype=np.int64)
    for j in range(idx.shape[1]):
        out = field.vadd(out, field.vmul(coef[:, j], x[idx[:, j]]))
    return out


_GLUING_TERMS: dict = {}


def _gluing_terms(t: Triangulation, p: int) -> tuple[np.ndarray, np.ndarray]:
    key = (t.facets, p)
    if key in _GLUING_TERMS:
        return _GLUING_TERMS[key]
    ft = np.asarray(t.facet_tets)
    R = np.asarray(R_INT, dtype=np.int64)
    idx = np.zeros((len(t.tetrahedra), 10), dtype=np.int64)
    coef = np.zeros_like(idx)
    for i, ((u1, p1), (u2, p2)) in enumerate(t.tet_cofaces):
        idx[i, :5], idx[i, 5:] = ft[u1], ft[u2]
        coef[i, :5], coef[i, 5:] = R[p1], -R[p2]
    # coefficients are prime-subfield elements, whose labels are their residues
    _GLUING_TERMS[key] = idx, coef % p
    return _GLUING_TERMS[key]


def permitted_space(t: Triangulation, field: FieldSpec) -> ColoringSpace:
    n = linalg.nullspace(gluing_matrix(t, field))
    return ColoringSpace(field, len(t.tetrahedra), n, "L")


def edge_vectors(t: Triangulation, field: FieldSpec) -> Matrix:
    """Rows Xi_b for the edges b in lexicographic order."""
    ti = t.tet_index
    a = np.zeros((len(t.edges), len(t.tetrahedra)), dtype=np.int64)
    for r, (e, tets) in enumerate(t.edge_tets.items()):
        for k in tets:
            a[r, k] = PSI_X[edge_position(t.tetrahedra[k], e)]
    return Matrix(field, a % field.p)


def edge_subspace(t: Triangulation, field: FieldSpec, L: ColoringSpace | None = None) -> ColoringSpace:
    _need_closed(t)
    vecs = edge_vectors(t, field)
    red, piv = linalg.rref(vecs)
    W = ColoringSpace(field, len(t.tetrahedra), Matrix(field, red.data[:len(piv)]), "W")
    if L is None:
        L = permitted_space(t, field)
    if not L.contains_space(W):
        raise AssertionError("edge subspace is not contained in the permitted space")
    return W


class QuotientEnumerator:
    """Coset representatives of L/W as combinations of a complement basis.

    Representative number ``n`` uses the base-q digits of ``n`` (least
    significant first) as coefficients of the complement rows.
    """

    def __init__(self, L: ColoringSpace, W: ColoringSpace, complement: Matrix):
        self.L = L
        self.W = W
        self.complement = complement
        self.field = L.field

    @property
    def d(self) -> int:
        return self.complement.rows

    @property
    def count(self) -> int:
        return self.field.q ** self.d

    def coefficients(self, n: int) -> list[int]:
        q = self.field.q
        out = []
        for _ in range(self.d):
            n, r = divmod(n, q)
            out.append(r)
        return out

    def combine(self, lam: Sequence[int]) -> np.ndarray:
        f = self.field
        v = np.zeros(self.L.ambient, dtype=np.int64)
        for c, row in zip(lam, self.complement.data):
            if c:
                v = f.vadd(v, f.vscale(int(c), row.astype(np.int64)))
        return v

    def representative(self, n: int) -> np.ndarray:
        if not 0 <= n < self.count:
            raise IndexError(n)
        return self.combine(self.coefficients(n))

    def __iter__(self) -> Iterator[np.ndarray]:
        for n in range(self.count):
            yield self.representative(n)

    def chunks(self, size: int) -> list[range]:
        return [range(s, min(s + size, self.count)) for s in range(0, self.count, size)]


def quotient(L: ColoringSpace, W: ColoringSpace) -> QuotientEnumerator:
    if L.field != W.field or L.ambient != W.ambient:
        raise FieldError("quotient of spaces over different fields or ambients")
    if not L.contains_space(W):
        raise ValueError("W is not contained in L")
    if L.field.p == 2:
        span = W.span()
        red, piv = linalg.rref(L.basis)
        comp = []
        for i in range(len(piv)):
            row = red.row(i)
            if span.add(row):
                comp.append(row)
        data = np.array(comp, dtype=np.int64).reshape(len(comp), L.ambient)
    else:
        data = _complement(L, W)
    return QuotientEnumerator(L, W, Matrix(L.field, data))


def _complement(L: ColoringSpace, W: ColoringSpace) -> np.ndarray:
    """Rows of L independent modulo W, by block elimination rather than a row span."""
    f = L.field
    wred, wpiv = linalg.rref(W.basis)
    w = wred.labels()[:len(wpiv)]
    lred = L.rows
    if wpiv:
        # clear W's pivot columns from every row of L
        coeff = lred[:, wpiv]
        lred = f.vsub(lred, linalg.matmul(f, coeff, w))
    red, piv = linalg.rref(Matrix(f, lred))
    return red.labels()[:len(piv)]


# -- full hexagon ------------------------------------------------------------

@dataclass
class HexagonReport:
    field: FieldSpec
    multiplicities: dict[int, int]
    violations: list[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        q = self.field.q
        expected = {1: 1, 2: 1, 3: 1, 4: q, 5: q ** 4}
        return not self.violations and self.multiplicities == expected

    def text(self) -> str:
        a = ", ".join(str(self.multiplicities[k]) for k in sorted(self.multiplicities))
        lines = [f"full hexagon over {self.field!r}: a_1..a_5 = ({a}) "
                 + ("PASS" if self.passed else "FAIL")]
        lines.extend(f"  violation: {v}" for v in self.violations)
        return "\n".join(lines)


def _split_restriction(s: Triangulation, facets: Sequence[int], field: FieldSpec,
                       boundary: Sequence[int]):
    """Permitted space of a subcomplex and its image on boundary colors.

    Returns (dim R_C, rref basis of the image) where the image lives in
    ``F^{2 * len(boundary)}`` ordered as (x_t, y_t) per boundary tetrahedron.
    """
    p = field.p
    ft = s.facet_tets
    tets = sorted({k for u in facets for k in ft[u]})
    col = {k: i for i, k in enumerate(tets)}
    owners: dict[int, list[tuple[int, int]]] = {k: [] for k in tets}
    for u in facets:
        for pos, k in enumerate(ft[u]):
            owners[k].append((u, pos))
    rows = []
    for k in tets:
        if len(owners[k]) == 2:
            (u1, p1), (u2, p2) = owners[k]
            r = [0] * len(tets)
            for j in range(5):
                r[col[ft[u1][j]]] += R_INT[p1][j]
                r[col[ft[u2][j]]] -= R_INT[p2][j]
            rows.append(r)
    if rows:
        space = linalg.nullspace(Matrix.from_ints(field, rows))
    else:
        space = Matrix.identity(field, len(tets))
    restr = np.zeros((len(tets), 2 * len(boundary)), dtype=np.int64)
    for b, k in enumerate(boundary):
        (u, pos), = owners[k]
        restr[col[k], 2 * b] = 1
        for j in range(5):
            restr[col[ft[u][j]], 2 * b + 1] += R_INT[pos][j]
    img = linalg.matmul(field, space.labels(), restr % p)
    red, piv = linalg.rref(Matrix(field, img))
    return space.rows, Matrix(field, red.data[:len(piv)])


def verify_full_hexagon(field: FieldSpec) -> HexagonReport:
    """Check every split of the boundary of the 5-simplex into C and its complement."""
    s = boundary_of_simplex(5)
    mult: dict[int, int] = {}
    violations = []
    for k in range(1, 6):
        kernels = set()
        for C in itertools.combinations(range(6), k):
            Cbar = tuple(u for u in range(6) if u not in C)
            tets_c = [t for u in C for t in s.facet_tets[u]]
            boundary = sorted(t for t in set(tets_c) if tets_c.count(t) == 1)
            dim_c, img_c = _split_restriction(s, C, field, boundary)
            dim_b, img_b = _split_restriction(s, Cbar, field, boundary)
            name = "".join(str(6 - u) for u in C)
            if img_c != img_b:
                violations.append(f"k={k} C=facets omitting {name}: boundary images differ")
            kernels.add(dim_c - img_c.rows)
        if len(kernels) != 1:
            violations.append(f"k={k}: fibre dimension depends on the split {sorted(kernels)}")
        mult[k] = field.q ** max(kernels)
    return HexagonReport(field, mult, violations)


# -- M-parametric tables -----------------------------------------------------

def _check_M(M: FieldElement) -> FieldSpec:
    if not M:
        raise FieldError("M must be nonzero")
    return M.field


def appendix_psi_of_M(M: FieldElement) -> Matrix:
    f = _check_M(M)
    one = f.element(1)
    i = M.inverse()
    x = [-one, one - M, M, M, 0 * one, -M]
    y = [-i, i, 0 * one, 0 * one, one, -one]
    return Matrix.from_elements([x, y])


def appendix_A_of_M(M: FieldElement) -> Matrix:
    f = _check_M(M)
    one = f.element(1)
    zero = 0 * one
    i = M.inverse()
    i2 = i * i
    rows = [
        [zero, (M - 1) * i2, i2, -i, (M - 1) * i2],
        [zero, i, zero, -i, i],
        [i, (1 - M) * i2, (M - 1) * i2, zero, i2],
        [i, (1 - 2 * M) * i2, (M - 1) * i2, i, (1 - M) * i2],
        [zero, -i, i, zero, zero],
    ]
    return Matrix.from_elements(rows)


def _pentachoron_edge_vector(psi: Matrix, edge: tuple[int, int]) -> np.ndarray:
    """(x, y) pairs over the five tetrahedra of 12345 for one edge."""
    f = psi.field
    v = np.zeros(10, dtype=np.int64)
    for pos in range(5):
        tet = tuple(w for w in range(1, 6) if w != pos + 1)
        ep = edge_position(tet, edge)
        if ep is not None:
            v[2 * pos] = psi.data[0, ep]
            v[2 * pos + 1] = psi.data[1, ep]
    return v


@dataclass
class EdgeDependencyReport:
    M: FieldElement
    failures: list[str]
    image_failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures and not self.image_failures

    def text(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        lines = [f"edge dependencies at M={self.M!r}: {state}"]
        lines.extend(f"  {m}" for m in self.failures + self.image_failures)
        return "\n".join(lines)


def verify_edge_dependencies(M: FieldElement) -> EdgeDependencyReport:
    """Vertex dependencies among edge vectors and their membership in R(M)."""
    f = _check_M(M)
    psi = appendix_psi_of_M(M)
    A = appendix_A_of_M(M)
    vec = {e: _pentachoron_edge_vector(psi, e) for e in itertools.combinations(range(1, 6), 2)}
    failures = []
    for i in range(1, 6):
        total = np.zeros(10, dtype=np.int64)
        for j in range(1, 6):
            if j == i:
                continue
            g = 1 if i < j else M.label
            total = f.vadd(total, f.vscale(g, vec[tuple(sorted((i, j)))]))
        if np.any(total):
            failures.append(f"vertex {i}: dependency sum is {total.tolist()}")
    image_failures = []
    for e, v in vec.items():
        y = linalg.matvec(f, A.labels(), v[0::2])
        if not np.array_equal(y, v[1::2]):
            image_failures.append(f"edge {e}: y-part differs from A(M) x-part")
    return EdgeDependencyReport(M, failures, image_failures)

