"""Rough and refined invariants of closed triangulated 4-manifolds.

The refined invariant is the distribution of the action over permitted
colorings.  The action is constant on cosets of the edge subspace W, so it
is compiled once into a polynomial in coordinates ``lam`` of a complement
of W in L (coefficients in the prime field, ``lam`` ranging over F_q^d).

Value counts are then obtained in one of two ways:

* ``enumerate``: evaluate the compiled polynomial on every point of F_q^d;
* ``characters`` (characteristic 2): split F_q^d into F_2-bits.  After
  fixing a small set of coordinates the action becomes a quadratic Boolean
  map, and for every additive character the exponential sum of a quadratic
  form has a closed form obtained by pairwise variable elimination.
"""

from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .cocycles import Cocycle
from .fields import FieldSpec, make_field
from .hexagon import (ColoringSpace, QuotientEnumerator, edge_subspace, edge_vectors,
                      gluing_residual, permitted_space, quotient)
from .linalg import Matrix
from .poly import Poly, basis, substitute
from .triangulation import OrientationData, Triangulation, TriangulationError, orient

DEFAULT_BUDGET = 2 ** 24


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"exact evaluation needs about {needed} work units, budget is {budget}; "
                         "raise --budget or use sampled mode")
        self.needed = needed
        self.budget = budget


class OrientationRequired(ValueError):
    pass


# -- rough invariant ---------------------------------------------------------------

def rough_invariant(t: Triangulation, p: int = 2) -> int:
    """dim L - 2 N0 - N4/2 over GF(p)."""
    if not t.is_closed:
        raise TriangulationError("rough invariant needs a closed triangulation")
    n0, n4 = len(t.vertices), len(t.facets)
    if n4 % 2:
        raise ValueError(f"odd number of pentachora ({n4}); the invariant would be a half-integer")
    return permitted_space(t, make_field(p)).dim - 2 * n0 - n4 // 2


# -- action ---------------------------------------------------------------------------------

def _signs(t: Triangulation, p: int, orientation: OrientationData | None) -> np.ndarray:
    if p == 2:
        return np.ones(len(t.facets), dtype=np.int64)
    if orientation is None:
        orientation = orient(t)
    if not orientation.orientable:
        raise OrientationRequired(f"characteristic {p} needs an orientable triangulation")
    return np.asarray(orientation.signs, dtype=np.int64)


def _check_char(field: FieldSpec, cocycle: Cocycle):
    if field.p != cocycle.p:
        raise ValueError(f"cocycle {cocycle.name} has characteristic {cocycle.p}, "
                         f"field has characteristic {field.p}")


def evaluate_poly(field: FieldSpec, poly: Poly, values: np.ndarray) -> np.ndarray:
    """Evaluate ``poly`` row-wise on an (n, nvars) array of labels."""
    values = np.asarray(values, dtype=np.int64)
    out = np.zeros(values.shape[0], dtype=np.int64)
    for e, c in poly.terms.items():
        term = np.full(values.shape[0], field.from_int(c), dtype=np.int64)
        for i, k in enumerate(e):
            if k:
                term = field.vmul(term, field.vpow(values[:, i], k))
        out = field.vadd(out, term)
    return out


def action(t: Triangulation, orientation: OrientationData | None, field: FieldSpec,
           cocycle: Cocycle, coloring, check: bool = True) -> int:
    """Signed sum of the cocycle over pentachora for an x-coloring in L (a label)."""
    _check_char(field, cocycle)
    x = np.asarray([int(getattr(v, "label", v)) for v in coloring], dtype=np.int64)
    if x.shape[0] != len(t.tetrahedra):
        raise ValueError("coloring length does not match the number of tetrahedra")
    signs = _signs(t, field.p, orientation)
    if check and np.any(gluing_residual(t, field, x)):
        raise ValueError("coloring is not permitted")
    vals = evaluate_poly(field, cocycle.poly, x[np.asarray(t.facet_tets)])
    neg = signs < 0
    vals[neg] = field.vneg(vals[neg])
    total = 0
    for v in vals:
        total = field.add(total, int(v))
    return total


# -- compilation -------------------------------------------------------------------------------

@dataclass(frozen=True)
class CompiledAction:
    """The action as a polynomial over GF(p) in the quotient coordinates."""

    p: int
    poly: Poly

    @property
    def nvars(self) -> int:
        return self.poly.nvars


def compile_action(t: Triangulation, cocycle: Cocycle, complement: np.ndarray,
                   signs: np.ndarray, batch: int = 256) -> CompiledAction:
    p = cocycle.p
    comp = np.asarray(complement, dtype=np.int64) % p
    d = comp.shape[0]
    ft = np.asarray(t.facet_tets)
    if d == 0:
        return CompiledAction(p, Poly(0, p))
    total = np.zeros(len(basis(d, cocycle.kappa)), dtype=np.int64)
    for s in range(0, len(ft), batch):
        forms = comp[:, ft[s:s + batch]].transpose(1, 2, 0)  # (batch, 5, d)
        vals = substitute(cocycle.poly, forms, p)
        total = (total + (signs[s:s + batch, None] * vals).sum(axis=0)) % p
    return CompiledAction(p, basis(d, cocycle.kappa).poly(total, p))


# -- counting: enumeration -----------------------------------------------------------------------

def _digits(field: FieldSpec, indices: np.ndarray, d: int) -> np.ndarray:
    out = np.empty((indices.shape[0], d), dtype=np.int64)
    n = indices.copy()
    for i in range(d):
        n, out[:, i] = np.divmod(n, field.q)
    return out


def _count_enumerate(ca: CompiledAction, field: FieldSpec, threads: int | None,
                     chunk: int = 1 << 16) -> list[int]:
    d = ca.nvars
    total = field.q ** d
    counts = np.zeros(field.q, dtype=np.int64)

    def work(start: int) -> np.ndarray:
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        vals = evaluate_poly(field, ca.poly, _digits(field, idx, d))
        return np.bincount(vals, minlength=field.q)

    with ThreadPoolExecutor(max_workers=threads) as ex:
        for c in ex.map(work, range(0, total, chunk)):
            counts += c
    return [int(c) for c in counts]


# -- counting: additive characters in characteristic 2 --------------------------------------------

def _binary_weight(e: int) -> int:
    return bin(e).count("1")


def _cover(poly: Poly, max_size: int) -> tuple[int, ...] | None:
    """Smallest variable set whose fixing leaves binary degree <= 2 everywhere."""
    terms = [e for e in poly.terms]
    d = poly.nvars

    def ok(fixed: set[int]) -> bool:
        return all(sum(_binary_weight(a) for i, a in enumerate(e) if i not in fixed) <= 2
                   for e in terms)

    for size in range(0, min(d, max_size) + 1):
        if math.comb(d, size) > 20000:
            break
        for X in itertools.combinations(range(d), size):
            if ok(set(X)):
                return X
    # greedy fallback
    fixed: set[int] = set()
    while not ok(fixed):
        best = max((i for i in range(d) if i not in fixed),
                   key=lambda i: sum(1 for e in terms if e[i]))
        fixed.add(best)
        if len(fixed) > max_size:
            return None
    return tuple(sorted(fixed))


@lru_cache(maxsize=None)
def _char2_tables(field: FieldSpec):
    q, k = field.q, field.k
    labels = np.arange(q, dtype=np.int64)
    # absolute trace: sum of the Frobenius conjugates
    tr = np.zeros(q, dtype=np.int64)
    z = labels.copy()
    for _ in range(k):
        tr = field.vadd(tr, z)
        z = field.vmul(z, z)
    if np.any(tr > 1):
        raise AssertionError("trace left the prime field")
    trmul = np.empty((q, q), dtype=np.int64)
    for g in range(q):
        trmul[g] = tr[field.vmul(np.full(q, g, dtype=np.int64), labels)]
    return tr, trmul


def _frob_basis(field: FieldSpec, r: int) -> np.ndarray:
    """Labels of (x^s)^(2^r) for the polynomial basis x^s, s < k."""
    beta = np.array([1 << s for s in range(field.k)], dtype=np.int64)
    return field.vpow(beta, 1 << r)


def quadratic_character_sum(A: np.ndarray, lin: np.ndarray, const: int) -> int:
    """Sum over x in F_2^n of (-1)^(sum_{i<j} A_ij x_i x_j + lin.x + const).

    ``A`` is symmetric with zero diagonal.  Each step sums out one variable
    that occurs in a product, which forces a linear relation used to
    eliminate a partner variable.
    """
    A = (np.asarray(A, dtype=np.int64) & 1).copy()
    lin = (np.asarray(lin, dtype=np.int64) & 1).copy()
    const &= 1
    scale = 1
    while A.shape[0]:
        n = A.shape[0]
        i = n - 1
        row = A[i, :i]
        if not row.any():
            if lin[i]:
                return 0
            scale *= 2
            A, lin = A[:i, :i], lin[:i]
            continue
        j = int(np.flatnonzero(row)[-1])
        keep = [k for k in range(n) if k != i and k != j]
        u = A[i, keep]
        w = A[j, keep]
        alpha, beta = int(lin[i]), int(lin[j])
        sub = A[np.ix_(keep, keep)]
        outer = np.outer(u, w)
        sub = (sub + outer + outer.T) & 1
        lin_new = (lin[keep] + beta * u + alpha * w + u * w) & 1
        np.fill_diagonal(sub, 0)
        const ^= alpha & beta
        A, lin = sub, lin_new
        scale *= 2
    return -scale if const else scale


def _quadratic_parts(field: FieldSpec, terms: list[tuple[tuple[int, ...], int]], nvars: int):
    """Split each monomial into at most two Frobenius-twisted linear factors."""
    parts = []
    for e, c in terms:
        factors = []
        for i, a in enumerate(e):
            r = 0
            while a:
                if a & 1:
                    factors.append((i, r))
                a >>= 1
                r += 1
        if len(factors) > 2:
            raise AssertionError("monomial of binary degree > 2 after fixing the cover")
        parts.append((factors, c))
    return parts


def _counts_quadratic(field: FieldSpec, terms: list[tuple[tuple[int, ...], int]],
                      nvars: int) -> np.ndarray:
    """Value counts over F_q^nvars of a polynomial of binary degree <= 2."""
    q, k = field.q, field.k
    n = k * nvars
    tr, trmul = _char2_tables(field)
    fb_cache: dict[int, np.ndarray] = {}

    def fb(r: int) -> np.ndarray:
        if r not in fb_cache:
            fb_cache[r] = _frob_basis(field, r)
        return fb_cache[r]

    parts = _quadratic_parts(field, terms, nvars)
    sums = np.zeros(q, dtype=object)
    sums[0] = 2 ** n
    for a in range(1, q):
        M = np.zeros((n, n), dtype=np.int64)
        lin = np.zeros(n, dtype=np.int64)
        const = 0
        for factors, c in parts:
            g = field.mul(a, c)
            if not factors:
                const ^= int(tr[g])
            elif len(factors) == 1:
                i, r = factors[0]
                lin[i * k:(i + 1) * k] ^= trmul[g][fb(r)]
            else:
                (i, r), (j, s) = factors
                prod = field.vmul(fb(r)[:, None], fb(s)[None, :])
                M[i * k:(i + 1) * k, j * k:(j + 1) * k] ^= trmul[g][prod]
        lin ^= np.diag(M) & 1
        A = (M + M.T) & 1
        np.fill_diagonal(A, 0)
        sums[a] = quadratic_character_sum(A, lin, const)
    counts = np.zeros(q, dtype=object)
    for v in range(q):
        s = 0
        for a in range(q):
            s += -sums[a] if trmul[a, v] else sums[a]
        if s % q:
            raise AssertionError("character sums are inconsistent")
        counts[v] = s // q
    return counts


def _count_characters(ca: CompiledAction, field: FieldSpec, cover: tuple[int, ...],
                      threads: int | None) -> list[int]:
    d = ca.nvars
    free = [i for i in range(d) if i not in cover]
    terms = list(ca.poly.terms.items())
    pow_cache: dict[tuple[int, int], int] = {}

    def power(v: int, e: int) -> int:
        key = (v, e)
        if key not in pow_cache:
            pow_cache[key] = field.pow(v, e)
        return pow_cache[key]

    def work(values: tuple[int, ...]) -> np.ndarray:
        residual: dict[tuple[int, ...], int] = {}
        for e, c in terms:
            coef = c
            for i, v in zip(cover, values):
                if e[i]:
                    coef = field.mul(coef, power(v, e[i]))
                    if not coef:
                        break
            if coef:
                key = tuple(e[i] for i in free)
                residual[key] = field.add(residual.get(key, 0), coef)
        items = [(e, c) for e, c in residual.items() if c]
        return _counts_quadratic(field, items, len(free))

    total = np.zeros(field.q, dtype=object)
    grid = itertools.product(range(field.q), repeat=len(cover))
    with ThreadPoolExecutor(max_workers=threads) as ex:
        for counts in ex.map(work, grid):
            total += counts
    return [int(c) for c in total]


def count_values(ca: CompiledAction, field: FieldSpec, budget: int = DEFAULT_BUDGET,
                 threads: int | None = None, method: str = "auto") -> tuple[list[int], str]:
    """Exact number of quotient points per value label, and the method used."""
    if ca.p != field.p:
        raise ValueError("compiled action and field have different characteristics")
    d = ca.nvars
    q = field.q
    if d == 0:
        counts = [0] * q
        counts[0] = 1
        return counts, "trivial"
    enum_cost = q ** d
    if method in ("auto", "characters") and field.p == 2:
        cover = _cover(ca.poly, max_size=d)
        if cover is not None:
            char_cost = q ** (len(cover) + 1)
            if method == "characters" or char_cost <= enum_cost:
                if char_cost > budget:
                    raise BudgetExceeded(char_cost, budget)
                return _count_characters(ca, field, cover, threads), "characters"
    if method == "characters":
        raise ValueError("the character method needs characteristic 2")
    if enum_cost > budget:
        raise BudgetExceeded(enum_cost, budget)
    return _count_enumerate(ca, field, threads), "enumerate"


# -- histograms and reports ---------------------------------------------------------------------

def value_classes(field: FieldSpec) -> dict[str, list[int]]:
    """Grouping of field elements used in the summary columns."""
    q = field.q
    labels = list(range(q))
    if q == 2:
        return {"0": [0], "1": [1]}
    if q == 4:
        return {"0": [0], "1": [1], "other": [2, 3]}
    if q == 16 and field.p == 2:
        roots = [v for v in labels[1:] if field.pow(v, 5) == 1]
        return {"0": [0], "fifth_roots": roots,
                "other": [v for v in labels[1:] if v not in roots]}
    return {"0": [0], "other": labels[1:]}


def grouped_view(field: FieldSpec, hist: Sequence[Fraction]) -> dict[str, dict]:
    out = {}
    for name, members in value_classes(field).items():
        probs = {hist[v] for v in members}
        total = sum((hist[v] for v in members), Fraction(0))
        out[name] = {
            "members": members,
            "total": total,
            "per_element": probs.pop() if len(probs) == 1 else None,
        }
    return out


def _frac(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


@dataclass
class InvariantReport:
    manifold: str
    field: FieldSpec
    f_vector: tuple[int, ...]
    i_rough: int
    cocycle: str
    mode: str
    histogram: list[Fraction]
    quotient_dim: int
    method: str = ""
    stderr: list[float] | None = None
    samples: int | None = None
    notes: list[str] = dc_field(default_factory=list)

    @property
    def grouped(self) -> dict[str, dict]:
        return grouped_view(self.field, self.histogram)

    def probability(self, label: int) -> Fraction:
        return self.histogram[label]

    def to_dict(self) -> dict:
        grouped = {}
        for name, g in self.grouped.items():
            grouped[name] = {
                "members": g["members"],
                "total": _frac(g["total"]),
                "per_element": None if g["per_element"] is None else _frac(g["per_element"]),
            }
        out = {
            "manifold": self.manifold,
            "field": {"p": self.field.p, "k": self.field.k},
            "f_vector": list(self.f_vector),
            "i_rough": self.i_rough,
            "cocycle": self.cocycle,
            "mode": self.mode,
            "histogram": {str(v): _frac(f) for v, f in enumerate(self.histogram)},
            "grouped": grouped,
            "quotient_dim": self.quotient_dim,
        }
        if self.stderr is not None:
            out["stderr"] = {str(v): round(s, 12) for v, s in enumerate(self.stderr)}
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def text(self) -> str:
        q = self.field.q
        lines = [
            f"manifold   {self.manifold}",
            f"f-vector   {tuple(self.f_vector)}",
            f"I_rough    {self.i_rough}",
            f"field      GF({q})",
            f"cocycle    {self.cocycle}",
            f"mode       {self.mode}" + (f" [{self.method}]" if self.method else ""),
            f"dim L/W    {self.quotient_dim}",
            "",
            "  class         P(total)      P(each)",
        ]
        for name, g in self.grouped.items():
            each = "-" if g["per_element"] is None else _frac(g["per_element"])
            lines.append(f"  {name:<12}  {_frac(g['total']):<12}  {each}")
        lines.append("")
        lines.append("  value  P")
        for v, f in enumerate(self.histogram):
            if f:
                lines.append(f"  {v:<5}  {_frac(f)}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


@dataclass(frozen=True)
class PreparedQuotient:
    """L, W and a complement over the prime field, reused across fields."""

    t: Triangulation
    p: int
    L: ColoringSpace
    W: ColoringSpace
    quotient: QuotientEnumerator


_PREPARED: dict[tuple[tuple, int], PreparedQuotient] = {}


def prepare(t: Triangulation, p: int) -> PreparedQuotient:
    key = (t.facets, p)
    if key not in _PREPARED:
        F = make_field(p)
        L = permitted_space(t, F)
        W = edge_subspace(t, F, L)
        _PREPARED[key] = PreparedQuotient(t, p, L, W, quotient(L, W))
    return _PREPARED[key]


def _report_base(t: Triangulation, field: FieldSpec, cocycle: Cocycle,
                 orientation: OrientationData | None):
    _check_char(field, cocycle)
    if not t.is_closed:
        raise TriangulationError("invariants need a closed triangulation")
    signs = _signs(t, field.p, orientation)
    prep = prepare(t, field.p)
    n0, n4 = len(t.vertices), len(t.facets)
    i_rough = prep.L.dim - 2 * n0 - n4 // 2
    notes = []
    if field.p != 2:
        notes.append("orientation fixed by +1 on the first pentachoron; "
                     "the opposite orientation maps every value v to -v")
    return signs, prep, i_rough, notes


def refined_invariant(t: Triangulation, field: FieldSpec, cocycle: Cocycle,
                      budget: int = DEFAULT_BUDGET, threads: int | None = None,
                      orientation: OrientationData | None = None,
                      method: str = "auto") -> InvariantReport:
    """Exact value distribution of the action over L/W."""
    signs, prep, i_rough, notes = _report_base(t, field, cocycle, orientation)
    Q = prep.quotient
    ca = compile_action(t, cocycle, Q.complement.labels(), signs)
    counts, used = count_values(ca, field, budget=budget, threads=threads, method=method)
    total = field.q ** Q.d
    if sum(counts) != total:
        raise AssertionError("value counts do not add up to the number of cosets")
    hist = [Fraction(c, total) for c in counts]
    return InvariantReport(t.name or "unnamed", field, t.f_vector, i_rough, cocycle.name,
                           "exact", hist, Q.d, used, notes=notes)


def sampled_invariant(t: Triangulation, field: FieldSpec, cocycle: Cocycle, n: int, seed: int,
                      orientation: OrientationData | None = None) -> InvariantReport:
    """Monte-Carlo estimate from ``n`` uniform cosets (deterministic per seed)."""
    if n <= 0:
        raise ValueError("sample count must be positive")
    signs, prep, i_rough, notes = _report_base(t, field, cocycle, orientation)
    Q = prep.quotient
    ca = compile_action(t, cocycle, Q.complement.labels(), signs)
    rng = np.random.default_rng(seed)
    counts = np.zeros(field.q, dtype=np.int64)
    if Q.d == 0:
        counts[0] = n
    else:
        left = n
        while left:
            m = min(left, 1 << 16)
            lam = rng.integers(0, field.q, size=(m, Q.d))
            counts += np.bincount(evaluate_poly(field, ca.poly, lam), minlength=field.q)
            left -= m
    hist = [Fraction(int(c), n) for c in counts]
    stderr = [math.sqrt(float(h) * (1 - float(h)) / n) for h in hist]
    return InvariantReport(t.name or "unnamed", field, t.f_vector, i_rough, cocycle.name,
                           f"sampled(n={n}, seed={seed})", hist, Q.d, "sample",
                           stderr=stderr, samples=n, notes=notes)


# -- quotient-theorem checks -------------------------------------------------------------------------

@dataclass
class ShiftReport:
    trials: int
    membership_failures: int
    action_failures: int

    @property
    def passed(self) -> bool:
        return not self.membership_failures and not self.action_failures

    def text(self) -> str:
        return (f"edge shifts: {self.trials} trials, {self.membership_failures} left L, "
                f"{self.action_failures} changed the action")


def random_coloring(L: ColoringSpace, field: FieldSpec, rng: np.random.Generator) -> np.ndarray:
    """Uniform element of the span of L over ``field`` (an extension of L's field)."""
    coeffs = rng.integers(0, field.q, size=L.dim)
    rows = L.rows
    v = np.zeros(L.ambient, dtype=np.int64)
    if L.field.k != 1:
        for c, row in zip(coeffs, rows):
            if c:
                v = field.vadd(v, field.vscale(int(c), row))
        return v
    # prime-field rows: sum the rows sharing a coefficient with integer
    # arithmetic, then scale each partial sum once
    p = L.field.p
    for c in range(1, field.q):
        sel = coeffs == c
        if sel.any():
            part = rows[sel].sum(axis=0) % p
            v = field.vadd(v, field.vscale(c, part))
    return v


def verify_edge_shift_invariance(t: Triangulation, field: FieldSpec, cocycle: Cocycle,
                                 trials: int = 200, seed: int = 0,
                                 orientation: OrientationData | None = None) -> ShiftReport:
    _check_char(field, cocycle)
    if field.p != 2 and orientation is None:
        orientation = orient(t)
    prep = prepare(t, field.p)
    xi = edge_vectors(t, make_field(field.p)).labels()
    rng = np.random.default_rng(seed)
    bad_member = bad_action = 0
    for _ in range(trials):
        x = random_coloring(prep.L, field, rng)
        b = int(rng.integers(0, xi.shape[0]))
        c = int(rng.integers(1, field.q))
        y = field.vadd(x, field.vscale(c, xi[b]))
        if np.any(gluing_residual(t, field, y)):
            bad_member += 1
            continue
        a0 = action(t, orientation, field, cocycle, x, check=False)
        a1 = action(t, orientation, field, cocycle, y, check=False)
        if a0 != a1:
            bad_action += 1
    return ShiftReport(trials, bad_member, bad_action)
