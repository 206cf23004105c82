"""Dense exact linear algebra over GF(p^k).

Three elimination routes share one contract:

* characteristic 2 with 0/1 entries: rows bit-packed into Python ints;
* entries inside the prime subfield: integer arithmetic mod p (elimination
  never leaves the prime subfield, so the result is the same matrix);
* anything else: table arithmetic from :class:`~hextqft.fields.FieldSpec`.

``rref(m, method="generic")`` forces the table route; tests use it to
cross-check the fast routes.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .fields import FieldElement, FieldError, FieldSpec

_STORE = np.uint16


class Matrix:
    """Immutable rows x cols matrix of field-element labels."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        arr = np.array(data, dtype=np.int64, copy=True)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise FieldError(f"entry outside {field!r}")
        store = arr.astype(_STORE)
        store.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "data", store)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_ints(cls, field: FieldSpec, rows) -> "Matrix":
        """Integer matrix reduced into the prime subfield."""
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        return cls(field, arr % field.p)

    @classmethod
    def from_elements(cls, rows: Sequence[Sequence[FieldElement]]) -> "Matrix":
        fields = {e.field for row in rows for e in row}
        if len(fields) > 1:
            raise FieldError("mixed FieldSpecs among matrix entries")
        if not fields:
            raise ValueError("cannot infer the field of an empty matrix")
        (f,) = fields
        width = {len(r) for r in rows}
        if len(width) != 1:
            raise ValueError("ragged rows")
        return cls(f, [[e.label for e in row] for row in rows])

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    # -- accessors ---------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, int(self.data[i, j]))

    def row(self, i: int) -> np.ndarray:
        return self.data[i].astype(np.int64)

    def labels(self) -> np.ndarray:
        return self.data.astype(np.int64)

    def tolist(self) -> list[list[int]]:
        return self.data.astype(int).tolist()

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.data.T)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if other.field != self.field:
            raise FieldError("mixed FieldSpecs in product")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.field, matmul(self.field, self.labels(), other.labels()))

    def in_prime_subfield(self) -> bool:
        return self.data.size == 0 or int(self.data.max()) < self.field.p

    def vstack(self, other: "Matrix") -> "Matrix":
        if other.field != self.field:
            raise FieldError("mixed FieldSpecs in vstack")
        if self.rows == 0:
            return other
        if other.rows == 0:
            return self
        return Matrix(self.field, np.vstack([self.data, other.data]))


def matmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Label-level product of 2-d arrays."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if field.k == 1:
        if a.shape[1] * (field.p - 1) ** 2 < 2 ** 53:
            return _mulmod(a, b, field.p)
        return (a @ b) % field.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(a.shape[1]):
        out = field.vadd(out, field.vmul(a[:, j:j + 1], b[j:j + 1, :]))
    return out


def matvec(field: FieldSpec, a: np.ndarray, v: np.ndarray) -> np.ndarray:
    return matmul(field, a, np.asarray(v, dtype=np.int64).reshape(-1, 1)).ravel()


# -- characteristic 2: bit-packed rows ----------------------------------------

def pack_rows(data: np.ndarray) -> list[int]:
    """Pack a 0/1 array into ints; bit j of row i is entry (i, j)."""
    if data.shape[0] == 0:
        return []
    packed = np.packbits(np.asarray(data, dtype=bool), axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def unpack_rows(rows: Iterable[int], ncols: int) -> np.ndarray:
    rows = list(rows)
    nbytes = max(1, (ncols + 7) // 8)
    out = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        bits = np.unpackbits(np.frombuffer(r.to_bytes(nbytes, "little"), dtype=np.uint8),
                             bitorder="little")
        out[i] = bits[:ncols]
    return out


def gf2_echelon(rows: Iterable[int]) -> dict[int, int]:
    """Echelon basis keyed by pivot bit (the lowest set bit of each row)."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            low = r & -r
            b = basis.get(low)
            if b is None:
                basis[low] = r
                break
            r ^= b
    return basis


def gf2_reduce(r: int, basis: dict[int, int]) -> int:
    out = 0
    while r:
        low = r & -r
        b = basis.get(low)
        if b is None:
            out |= low
            r ^= low
        else:
            r ^= b
    return out


def _gf2_rref(rows: list[int]) -> list[int]:
    basis = gf2_echelon(rows)
    pivs = sorted(basis)
    out = [basis[p] for p in pivs]
    for i in range(len(out) - 1, -1, -1):
        pb, ri = pivs[i], out[i]
        for j in range(i):
            if out[j] & pb:
                out[j] ^= ri
    return out


def _gf2_nullspace(rows: list[int], ncols: int) -> list[int]:
    basis = gf2_echelon(rows)
    pivcols = {p.bit_length() - 1 for p in basis}
    free = [c for c in range(ncols) if c not in pivcols]
    sol: dict[int, int] = {f: 1 << i for i, f in enumerate(free)}
    for pb in sorted(basis, reverse=True):
        r = basis[pb] ^ pb
        acc = 0
        while r:
            low = r & -r
            acc ^= sol.get(low.bit_length() - 1, 0)
            r ^= low
        sol[pb.bit_length() - 1] = acc
    vecs = [0] * len(free)
    for c, s in sol.items():
        bit = 1 << c
        while s:
            low = s & -s
            vecs[low.bit_length() - 1] |= bit
            s ^= low
    return vecs


# -- prime subfield and generic routes ------------------------------------------

def _rref_array(field: FieldSpec | None, a: np.ndarray, prime: bool, p: int = 0):
    """In-place RREF of an int64 array; returns pivot columns."""
    nrows, ncols = a.shape
    p = p or field.p
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        lead = int(a[r, c])
        if lead != 1:
            inv = pow(lead, p - 2, p) if prime else field.inv(lead)
            if prime:
                a[r, c:] = a[r, c:] * inv % p
            else:
                a[r, c:] = field.vscale(inv, a[r, c:])
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            f = a[others, c][:, None]
            if prime:
                a[np.ix_(others, np.arange(c, ncols))] = (a[others, c:] - f * a[r, c:]) % p
            else:
                a[np.ix_(others, np.arange(c, ncols))] = field.vsub(
                    a[others, c:], field.vmul(f, a[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return pivots


_PANEL = 64


def _mulmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # float64 BLAS is exact while inner * (p-1)^2 stays below 2^53
    return np.mod(a.astype(np.float64) @ b.astype(np.float64), p).astype(np.int64)


def _rref_prime_blocked(a: np.ndarray, p: int) -> list[int]:
    """In-place RREF mod p, one panel of columns at a time.

    Pivots of a panel are found on that panel alone; the pivot rows are then
    brought to reduced form with one small inverse, and every other row is
    cleared with a single matrix product.  RREF is unique, so the result is
    the one :func:`_rref_array` gives.
    """
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c0 in range(0, ncols, _PANEL):
        if r == nrows:
            break
        c1 = min(c0 + _PANEL, ncols)
        panel = a[r:, c0:c1].copy()
        used = np.zeros(panel.shape[0], dtype=bool)
        prow, pcol = [], []
        for j in range(c1 - c0):
            cand = np.flatnonzero((panel[:, j] != 0) & ~used)
            if cand.size == 0:
                continue
            i = int(cand[0])
            used[i] = True
            panel[i] = panel[i] * pow(int(panel[i, j]), p - 2, p) % p
            others = np.flatnonzero(panel[:, j])
            others = others[others != i]
            if others.size:
                panel[others] = (panel[others] - panel[others, j][:, None] * panel[i]) % p
            prow.append(r + i)
            pcol.append(c0 + j)
        if not pcol:
            continue
        k = len(pcol)
        # move the pivot rows to r..r+k-1; the rows they displace take their places
        # (the order of non-pivot rows does not affect the final form)
        target = list(range(r, r + k))
        tset, chosen = set(target), set(prow)
        src = prow + [t for t in target if t not in chosen]
        dst = target + [i for i in prow if i not in tset]
        a[dst] = a[src]
        # the pivot block of the chosen rows is invertible; reduce the rows with its inverse
        block = np.concatenate([a[r:r + k, pcol], np.eye(k, dtype=np.int64)], axis=1)
        _rref_array(None, block, prime=True, p=p)
        a[r:r + k, c0:] = _mulmod(block[:, k:], a[r:r + k, c0:], p)
        f = a[:, pcol]
        f[r:r + k] = 0
        rest = np.flatnonzero(f.any(axis=1))
        if rest.size:
            upd = _mulmod(f[rest], a[r:r + k, c0:], p)
            a[rest, c0:] = (a[rest, c0:] - upd) % p
        pivots.extend(pcol)
        r += k
    return pivots


def _route(m: Matrix, method: str) -> str:
    if method != "auto":
        return method
    if m.in_prime_subfield():
        return "gf2" if m.field.p == 2 else "prime"
    return "generic"


def rref(m: Matrix, method: str = "auto") -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and strictly increasing pivot columns.

    Zero rows are kept at the bottom so the shape is preserved.
    """
    route = _route(m, method)
    if route == "gf2":
        rows = _gf2_rref(pack_rows(m.data))
        pivots = [(r & -r).bit_length() - 1 for r in rows]
        out = np.zeros(m.shape, dtype=np.int64)
        if rows:
            out[:len(rows)] = unpack_rows(rows, m.cols)
        return Matrix(m.field, out), pivots
    a = m.labels()
    if route == "prime" and min(m.shape) > _PANEL:
        pivots = _rref_prime_blocked(a, m.field.p)
    else:
        pivots = _rref_array(m.field, a, prime=(route == "prime"))
    return Matrix(m.field, a), pivots


def rank(m: Matrix, method: str = "auto") -> int:
    if _route(m, method) == "gf2":
        return len(gf2_echelon(pack_rows(m.data)))
    return len(rref(m, method)[1])


def nullspace(m: Matrix, method: str = "auto") -> Matrix:
    """Basis of the right kernel, one vector per row."""
    route = _route(m, method)
    if route == "gf2":
        vecs = _gf2_nullspace(pack_rows(m.data), m.cols)
        if not vecs:
            return Matrix.zeros(m.field, 0, m.cols)
        return Matrix(m.field, unpack_rows(vecs, m.cols))
    red, pivots = rref(m, method)
    a = red.labels()
    free = [c for c in range(m.cols) if c not in set(pivots)]
    f = m.field
    out = np.zeros((len(free), m.cols), dtype=np.int64)
    out[np.arange(len(free)), free] = 1
    if pivots and free:
        # vector for free column fc: 1 at fc, minus a[r, fc] at pivot column r
        out[:, pivots] = f.vneg(a[:len(pivots)][:, free].T)
    return Matrix(f, out)


def nullity(m: Matrix, method: str = "auto") -> int:
    return m.cols - rank(m, method)


def solve(m: Matrix, rhs) -> np.ndarray | None:
    """One solution of ``m x = rhs`` as a label vector, or None if inconsistent."""
    rhs = np.asarray([int(getattr(v, "label", v)) for v in rhs], dtype=np.int64)
    if rhs.shape[0] != m.rows:
        raise ValueError(f"rhs length {rhs.shape[0]} != rows {m.rows}")
    aug = Matrix(m.field, np.hstack([m.labels(), rhs.reshape(-1, 1)]))
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = np.zeros(m.cols, dtype=np.int64)
    a = red.labels()
    for r, pc in enumerate(pivots):
        x[pc] = a[r, m.cols]
    return x


def rowspace_contains(basis: Matrix, v) -> bool:
    span = RowSpan(basis.field)
    for i in range(basis.rows):
        span.add(basis.row(i))
    return span.contains(v)


class RowSpan:
    """Incrementally grown row space with membership tests.

    In characteristic 2 with prime-field vectors the rows are kept as
    bit-packed ints; otherwise as normalised label arrays keyed by pivot.
    """

    def __init__(self, field: FieldSpec, ncols: int | None = None):
        self.field = field
        self.ncols = ncols
        self._bits: dict[int, int] = {}
        self._rows: dict[int, np.ndarray] = {}

    def __len__(self):
        return len(self._bits) + len(self._rows)

    @property
    def dim(self) -> int:
        return len(self)

    def _bitwise(self, v: np.ndarray) -> bool:
        return self.field.p == 2 and not self._rows and (v.size == 0 or int(v.max()) <= 1)

    def _to_bits(self, v: np.ndarray) -> int:
        return pack_rows(v.reshape(1, -1))[0]

    def _reduce_array(self, v: np.ndarray) -> np.ndarray:
        f = self.field
        v = v.copy()
        for pc in sorted(self._rows):
            c = int(v[pc])
            if c:
                v = f.vsub(v, f.vscale(c, self._rows[pc]))
        return v

    def _promote(self):
        # Switch from bit rows to label rows once a non-0/1 vector arrives.
        for pb, r in self._bits.items():
            self._rows[pb.bit_length() - 1] = unpack_rows([r], self.ncols)[0]
        self._bits = {}

    def reduce(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        if self.ncols is None:
            self.ncols = v.shape[0]
        if self._bitwise(v):
            r = gf2_reduce(self._to_bits(v), self._bits)
            return unpack_rows([r], self.ncols)[0]
        if self._bits:
            self._promote()
        return self._reduce_array(v)

    def add(self, v) -> bool:
        """Add ``v``; return True if it enlarged the span."""
        v = np.asarray(v, dtype=np.int64)
        if self.ncols is None:
            self.ncols = v.shape[0]
        if self._bitwise(v):
            r = self._to_bits(v)
            before = len(self._bits)
            while r:
                low = r & -r
                b = self._bits.get(low)
                if b is None:
                    self._bits[low] = r
                    break
                r ^= b
            return len(self._bits) > before
        if self._bits:
            self._promote()
        red = self._reduce_array(v)
        nz = np.flatnonzero(red)
        if nz.size == 0:
            return False
        pc = int(nz[0])
        inv = self.field.inv(int(red[pc]))
        self._rows[pc] = self.field.vscale(inv, red)
        return True

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))
