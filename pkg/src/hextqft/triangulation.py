"""Pure simplicial complexes with ordered vertices.

The main object is a closed (or bounded) 4-dimensional triangulation, but
the same class holds lower-dimensional factors (circles, spheres, surfaces)
used by the product construction.  Facets are stored as strictly increasing
vertex tuples; the face lattice is derived lazily and cached.
"""

from __future__ import annotations

import io
import itertools
import os
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Mapping, Sequence


class TriangulationError(ValueError):
    pass


class Triangulation:
    """A connected pure simplicial pseudomanifold (possibly with boundary)."""

    def __init__(self, facets: Iterable[Sequence[int]], name: str | None = None,
                 dim: int | None = None):
        raw = [tuple(f) for f in facets]
        if not raw:
            raise TriangulationError("empty facet list")
        if dim is None:
            dim = len(raw[0]) - 1
        normed = []
        for f in raw:
            if len(f) != dim + 1:
                raise TriangulationError(f"facet {f} does not have {dim + 1} vertices")
            if any((not isinstance(v, int)) or v <= 0 for v in f):
                raise TriangulationError(f"facet {f}: vertex labels must be positive integers")
            s = tuple(sorted(f))
            if len(set(s)) != len(s):
                raise TriangulationError(f"facet {f} has repeated vertices")
            normed.append(s)
        normed.sort()
        for a, b in zip(normed, normed[1:]):
            if a == b:
                raise TriangulationError(f"duplicate facet {a}")
        self.facets: tuple[tuple[int, ...], ...] = tuple(normed)
        self.dim = dim
        self.name = name
        self._check_pseudomanifold()
        self._check_connected()

    # -- validation ------------------------------------------------------

    def _check_pseudomanifold(self):
        if self.dim == 0:
            return
        for ridge, cof in self.ridge_cofaces.items():
            if len(cof) > 2:
                raise TriangulationError(
                    f"not a pseudomanifold: face {ridge} lies in {len(cof)} facets")

    def _check_connected(self):
        n = len(self.facets)
        adj = self.dual_graph
        seen = {0}
        todo = deque([0])
        while todo:
            u = todo.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != n:
            raise TriangulationError("disconnected complex")

    # -- face lattice ------------------------------------------------------

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    def faces(self, k: int) -> tuple[tuple[int, ...], ...]:
        """All k-dimensional faces, sorted lexicographically."""
        return self._faces[k]

    @cached_property
    def _faces(self) -> dict[int, tuple[tuple[int, ...], ...]]:
        out = {}
        for k in range(self.dim + 1):
            s = set()
            for f in self.facets:
                s.update(itertools.combinations(f, k + 1))
            out[k] = tuple(sorted(s))
        return out

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces(k)) for k in range(self.dim + 1))

    @cached_property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    @cached_property
    def facet_index(self) -> dict[tuple[int, ...], int]:
        return {f: i for i, f in enumerate(self.facets)}

    @cached_property
    def ridge_cofaces(self) -> dict[tuple[int, ...], tuple[int, ...]]:
        """Codimension-one face -> indices of the facets containing it."""
        acc: dict[tuple[int, ...], list[int]] = defaultdict(list)
        for i, f in enumerate(self.facets):
            for j in range(len(f)):
                acc[f[:j] + f[j + 1:]].append(i)
        return {r: tuple(v) for r, v in sorted(acc.items())}

    @cached_property
    def dual_graph(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.facets]
        for cof in self.ridge_cofaces.values():
            if len(cof) == 2:
                a, b = cof
                adj[a].append(b)
                adj[b].append(a)
        return adj

    @cached_property
    def is_closed(self) -> bool:
        return all(len(c) == 2 for c in self.ridge_cofaces.values())

    @cached_property
    def boundary_ridges(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r for r, c in self.ridge_cofaces.items() if len(c) == 1)

    # -- 4-dimensional vocabulary -------------------------------------------

    @property
    def pentachora(self) -> tuple[tuple[int, ...], ...]:
        self._need_dim4()
        return self.facets

    @property
    def tetrahedra(self) -> tuple[tuple[int, ...], ...]:
        self._need_dim4()
        return self.faces(3)

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return self.faces(1)

    @cached_property
    def tet_index(self) -> dict[tuple[int, ...], int]:
        return {t: i for i, t in enumerate(self.tetrahedra)}

    @cached_property
    def facet_tets(self) -> list[tuple[int, ...]]:
        """Per pentachoron, tetrahedron indices in position order.

        Position j is the face omitting the j-th smallest vertex, so for
        12345 the order is 2345, 1345, 1245, 1235, 1234.
        """
        ti = self.tet_index
        return [tuple(ti[f[:j] + f[j + 1:]] for j in range(5)) for f in self.facets]

    @cached_property
    def tet_cofaces(self) -> list[tuple[tuple[int, int], ...]]:
        """Per tetrahedron, ``(pentachoron index, position)`` pairs, sorted."""
        acc: list[list[tuple[int, int]]] = [[] for _ in self.tetrahedra]
        for u, tets in enumerate(self.facet_tets):
            for pos, t in enumerate(tets):
                acc[t].append((u, pos))
        return [tuple(sorted(a)) for a in acc]

    @cached_property
    def edge_tets(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """Edge -> indices of the tetrahedra containing it."""
        acc: dict[tuple[int, int], list[int]] = defaultdict(list)
        for i, t in enumerate(self.tetrahedra):
            for e in itertools.combinations(t, 2):
                acc[e].append(i)
        return {e: tuple(v) for e, v in sorted(acc.items())}

    def _need_dim4(self):
        if self.dim != 4:
            raise TriangulationError(f"operation needs a 4-dimensional complex, got dim {self.dim}")

    # -- misc ------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __len__(self):
        return len(self.facets)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Triangulation{label} dim={self.dim} f={self.f_vector}>"

    def with_name(self, name: str | None) -> "Triangulation":
        return Triangulation(self.facets, name=name, dim=self.dim)


def from_facets(facets: Iterable[Sequence[int]], name: str | None = None) -> Triangulation:
    """Build a 4-dimensional triangulation from 5-vertex facets."""
    t = Triangulation(facets, name=name)
    if t.dim != 4:
        raise TriangulationError(f"expected 5-vertex facets, got dimension {t.dim}")
    return t


def simplex_boundary(n: int) -> Triangulation:
    """Boundary of the n-simplex on vertices 1..n+1 (an (n-1)-sphere)."""
    if n < 2:
        raise TriangulationError("boundary of a simplex needs n >= 2")
    verts = range(1, n + 2)
    return Triangulation(itertools.combinations(verts, n), name=f"boundary-simplex{n}")


def boundary_of_simplex(n: int = 5) -> Triangulation:
    """The six facets of the 5-simplex 123456 (a triangulated 4-sphere)."""
    if n != 5:
        raise TriangulationError("only the boundary of the 5-simplex is a 4-dimensional complex")
    return simplex_boundary(5).with_name("S4")


def circle(n: int = 3) -> Triangulation:
    if n < 3:
        raise TriangulationError("a triangulated circle needs at least 3 vertices")
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return Triangulation(edges, name=f"circle{n}")


def staircase_product(a: Triangulation, b: Triangulation, name: str | None = None) -> Triangulation:
    """Ordered-product (staircase) triangulation of |a| x |b|.

    Product vertices are numbered 1.. in lexicographic order of (a, b); each
    pair of facets contributes C(da + db, da) staircase simplices.
    """
    if a.dim < 1 or b.dim < 1:
        raise TriangulationError("product factors must have dimension >= 1")
    if not (a.is_closed and b.is_closed):
        raise TriangulationError("product factors must be closed")
    da, db = a.dim, b.dim
    label = {}
    for i, (x, y) in enumerate(itertools.product(a.vertices, b.vertices), start=1):
        label[(x, y)] = i
    paths = []
    for ups in itertools.combinations(range(da + db), da):
        i = j = 0
        path = [(0, 0)]
        for step in range(da + db):
            if step in ups:
                i += 1
            else:
                j += 1
            path.append((i, j))
        paths.append(path)
    out = []
    for s, t in itertools.product(a.facets, b.facets):
        for path in paths:
            out.append(tuple(label[(s[i], t[j])] for i, j in path))
    return Triangulation(out, name=name, dim=da + db)


def relabel(t: Triangulation, mapping: Mapping[int, int], name: str | None = None) -> Triangulation:
    """Apply an injective vertex relabelling; facets are re-sorted."""
    missing = [v for v in t.vertices if v not in mapping]
    if missing:
        raise TriangulationError(f"relabelling misses vertices {missing[:5]}")
    images = [mapping[v] for v in t.vertices]
    if len(set(images)) != len(images):
        raise TriangulationError("relabelling is not injective")
    return Triangulation(([mapping[v] for v in f] for f in t.facets),
                         name=name if name is not None else t.name, dim=t.dim)


def normalize_labels(t: Triangulation) -> Triangulation:
    """Renumber vertices 1..N0 preserving their order."""
    return relabel(t, {v: i for i, v in enumerate(t.vertices, start=1)})


# -- orientation -----------------------------------------------------------------

@dataclass(frozen=True)
class OrientationData:
    """Signs of the facets relative to their vertex-order orientation."""

    signs: tuple[int, ...]
    orientable: bool

    def sign(self, u: int) -> int:
        return self.signs[u]


def incidence_sign(pos: int) -> int:
    """Sign of the face omitting position ``pos`` (0-based) in the boundary."""
    return -1 if pos % 2 else 1


def _omitted_position(facet: tuple[int, ...], face: tuple[int, ...]) -> int:
    return next(j for j, v in enumerate(facet) if v not in face)


def orient(t: Triangulation) -> OrientationData:
    """Consistent orientation with +1 on the lexicographically first facet."""
    if not t.is_closed:
        raise TriangulationError("orient needs a closed complex")
    n = len(t.facets)
    signs = [0] * n
    signs[0] = 1
    neighbours: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for ridge, (u1, u2) in t.ridge_cofaces.items():
        s1 = incidence_sign(_omitted_position(t.facets[u1], ridge))
        s2 = incidence_sign(_omitted_position(t.facets[u2], ridge))
        neighbours[u1].append((u2, s1, s2))
        neighbours[u2].append((u1, s2, s1))
    todo = deque([0])
    while todo:
        u = todo.popleft()
        for w, su, sw in neighbours[u]:
            want = -signs[u] * su * sw
            if signs[w] == 0:
                signs[w] = want
                todo.append(w)
            elif signs[w] != want:
                return OrientationData((), False)
    return OrientationData(tuple(signs), True)


def orientation_consistent(t: Triangulation, o: OrientationData) -> bool:
    """Exhaustive check of the inner-ridge sign condition."""
    for ridge, cof in t.ridge_cofaces.items():
        if len(cof) != 2:
            continue
        vals = []
        for u in cof:
            j = _omitted_position(t.facets[u], ridge)
            vals.append(o.signs[u] * incidence_sign(j))
        if vals[0] != -vals[1]:
            return False
    return True


# -- bounded complexes ---------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryFrame:
    """Boundary tetrahedra with their unique pentachoron and position."""

    tets: tuple[tuple[int, ...], ...]
    pentachoron: tuple[int, ...]
    position: tuple[int, ...]


def boundary_frame(t: Triangulation) -> BoundaryFrame:
    tets, pent, pos = [], [], []
    for i, cof in enumerate(t.tet_cofaces):
        if len(cof) == 1:
            tets.append(t.tetrahedra[i])
            pent.append(cof[0][0])
            pos.append(cof[0][1])
    return BoundaryFrame(tuple(tets), tuple(pent), tuple(pos))


# -- TRI text format ---------------------------------------------------------------------

def ingest(source) -> Triangulation:
    """Parse TRI text from a path, a file object or a string containing newlines."""
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, (str, os.PathLike)) and "\n" not in str(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = str(source)
    return parse_tri(text)


def parse_tri(text: str) -> Triangulation:
    dim_seen = False
    name = None
    facets = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if not dim_seen:
            if tokens[0] != "dim" or len(tokens) != 2:
                raise TriangulationError(f"line {lineno}: expected 'dim 4'")
            try:
                d = int(tokens[1])
            except ValueError:
                raise TriangulationError(f"line {lineno}: bad dimension {tokens[1]!r}") from None
            if d != 4:
                raise TriangulationError(f"line {lineno}: dimension {d} is not 4")
            dim_seen = True
            continue
        if tokens[0] == "name":
            if facets or name is not None:
                raise TriangulationError(f"line {lineno}: 'name' must precede the facets")
            name = line[len("name"):].strip()
            continue
        if len(tokens) != 5:
            raise TriangulationError(f"line {lineno}: a facet needs exactly 5 labels")
        try:
            f = tuple(int(x) for x in tokens)
        except ValueError:
            raise TriangulationError(f"line {lineno}: non-integer vertex label") from None
        if any(v <= 0 for v in f):
            raise TriangulationError(f"line {lineno}: vertex labels must be positive")
        facets.append(f)
    if not dim_seen:
        raise TriangulationError("missing 'dim 4' header")
    if not facets:
        raise TriangulationError("empty facet list")
    return from_facets(facets, name=name)


def emit(t: Triangulation, comments: Sequence[str] = ()) -> str:
    t._need_dim4()
    lines = [f"# {c}" for c in comments]
    lines.append("dim 4")
    if t.name:
        lines.append(f"name {t.name}")
    lines.extend(" ".join(map(str, f)) for f in t.facets)
    return "\n".join(lines) + "\n"


def staircase_count(a: Triangulation, b: Triangulation) -> int:
    """Expected facet count of :func:`staircase_product`."""
    return len(a.facets) * len(b.facets) * comb(a.dim + b.dim, a.dim)
