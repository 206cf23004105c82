"""Multivariate polynomials over prime fields.

Two representations are used:

* :class:`Poly` is sparse (exponent tuple -> coefficient mod p) and is what
  the catalogue, Frobenius and pretty-printing work with;
* :class:`HomogeneousBasis` indexes all monomials of one degree so that
  polynomials become dense coefficient vectors.  Substituting linear forms
  into a polynomial is then a sequence of vectorised "multiply by a linear
  form" steps, which is how coboundaries and compiled actions are built.

Monomials inside a degree are in graded-lexicographic order: exponent
tuples compared lexicographically, largest first, so ``x0^k`` comes first.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

Exps = tuple[int, ...]

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*((?:[a-z]\s*(?:\^\s*\d+)?\s*)*)")


class Poly:
    """Sparse polynomial with coefficients in Z/p (p=0 keeps integers)."""

    __slots__ = ("nvars", "p", "terms")

    def __init__(self, nvars: int, p: int, terms: Mapping[Exps, int] | None = None):
        self.nvars = nvars
        self.p = p
        clean: dict[Exps, int] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not match {nvars} variables")
            c = c % p if p else c
            if c:
                clean[tuple(e)] = clean.get(tuple(e), 0) + c
        if p:
            clean = {e: c % p for e, c in clean.items() if c % p}
        self.terms = clean

    # -- construction ----------------------------------------------------------

    @classmethod
    def parse(cls, text: str, variables: str = "abcde", p: int = 0) -> "Poly":
        """Parse sums like ``de^2+2bd-c^3`` in single-letter variables."""
        index = {v: i for i, v in enumerate(variables)}
        s = text.replace(" ", "").replace("\n", "")
        if not s:
            raise ValueError("empty polynomial")
        terms: dict[Exps, int] = {}
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse {s[pos:]!r}")
            sign, coef, mono = m.groups()
            if not coef and not mono:
                raise ValueError(f"dangling sign in {text!r}")
            c = int(coef) if coef else 1
            if sign == "-":
                c = -c
            e = [0] * len(variables)
            for var, power in re.findall(r"([a-z])(?:\^(\d+))?", mono):
                if var not in index:
                    raise ValueError(f"unknown variable {var!r}")
                e[index[var]] += int(power) if power else 1
            e = tuple(e)
            terms[e] = terms.get(e, 0) + c
            pos = m.end()
            if pos < len(s) and s[pos] not in "+-":
                raise ValueError(f"unexpected {s[pos]!r} in {text!r}")
        return cls(len(variables), p, terms)

    @classmethod
    def monomial(cls, nvars: int, p: int, exps: Exps, coeff: int = 1) -> "Poly":
        return cls(nvars, p, {tuple(exps): coeff})

    # -- arithmetic --------------------------------------------------------------

    def _like(self, terms) -> "Poly":
        return Poly(self.nvars, self.p, terms)

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars or self.p != other.p:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return self._like(t)

    def __neg__(self) -> "Poly":
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._like({e: c * other for e, c in self.terms.items()})
        self._check(other)
        t: dict[Exps, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return self._like(t)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.nvars, self.p, self.terms) == (other.nvars, other.p, other.terms)

    def __hash__(self):
        return hash((self.nvars, self.p, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def reduce_mod(self, p: int) -> "Poly":
        return Poly(self.nvars, p, self.terms)

    # -- structure ------------------------------------------------------------------

    @property
    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    @property
    def degree(self) -> int:
        return max(self.degrees, default=0)

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def frobenius(self) -> "Poly":
        """Raise every variable to the p-th power (coefficients are fixed by Frobenius)."""
        if not self.p:
            raise ValueError("Frobenius needs a positive characteristic")
        return self._like({tuple(self.p * a for a in e): pow(c, self.p, self.p)
                           for e, c in self.terms.items()})

    def evaluate(self, field, values: Sequence[int]) -> int:
        """Evaluate at field-element labels; coefficients embed via the prime subfield."""
        total = 0
        for e, c in self.terms.items():
            term = field.from_int(c)
            for v, k in zip(values, e):
                if k:
                    term = field.mul(term, field.pow(v, k))
            total = field.add(total, term)
        return total

    def format(self, variables: str = "abcde") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[e]
            mono = "".join(v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k)
            if c == 1 and mono:
                s = mono
            elif c == -1 and mono:
                s = "-" + mono
            else:
                s = f"{c}{mono}"
            parts.append(s)
        out = "+".join(parts)
        return out.replace("+-", "-")

    def __repr__(self):
        return f"Poly({self.format() if self.nvars <= 5 else self.terms!r}, p={self.p})"


# -- dense homogeneous bases -----------------------------------------------------------

class HomogeneousBasis:
    """All degree-``degree`` monomials in ``nvars`` variables, graded-lex ordered."""

    def __init__(self, nvars: int, degree: int):
        self.nvars = nvars
        self.degree = degree
        combos = combinations_with_replacement(range(nvars), degree)
        exps = []
        for c in combos:
            e = [0] * nvars
            for i in c:
                e[i] += 1
            exps.append(tuple(e))
        exps.sort(reverse=True)
        self.monomials: tuple[Exps, ...] = tuple(exps)
        self.index = {e: i for i, e in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)

    def vector(self, poly: Poly) -> np.ndarray:
        v = np.zeros(len(self), dtype=np.int64)
        for e, c in poly.terms.items():
            if sum(e) != self.degree:
                raise ValueError(f"term {e} is not of degree {self.degree}")
            v[self.index[e]] = c
        return v

    def poly(self, vec: Iterable[int], p: int) -> Poly:
        return Poly(self.nvars, p, {self.monomials[i]: int(c) for i, c in enumerate(vec) if c})


@lru_cache(maxsize=None)
def basis(nvars: int, degree: int) -> HomogeneousBasis:
    return HomogeneousBasis(nvars, degree)


def basis_size(nvars: int, degree: int) -> int:
    return comb(nvars + degree - 1, degree)


@lru_cache(maxsize=None)
def mul_table(nvars: int, degree: int) -> np.ndarray:
    """``T[m, i]`` = index in degree+1 of monomial m times variable i."""
    src = basis(nvars, degree)
    dst = basis(nvars, degree + 1)
    t = np.empty((len(src), nvars), dtype=np.int64)
    for m, e in enumerate(src.monomials):
        for i in range(nvars):
            f = list(e)
            f[i] += 1
            t[m, i] = dst.index[tuple(f)]
    return t


def times_linear(vecs: np.ndarray, forms: np.ndarray, nvars: int, degree: int, p: int) -> np.ndarray:
    """Multiply dense degree-``degree`` polynomials by linear forms, batchwise.

    ``vecs`` has shape (n, len(basis(nvars, degree))) and ``forms`` shape
    (n, nvars); row j of the result is vecs[j] * forms[j] mod p.
    """
    table = mul_table(nvars, degree)
    n = vecs.shape[0]
    out = np.zeros((n, basis_size(nvars, degree + 1)), dtype=np.int64)
    for i in range(nvars):
        fi = forms[:, i:i + 1]
        if not fi.any():
            continue
        # for a fixed i distinct monomials give distinct products, so the
        # fancy-index update never collides
        out[:, table[:, i]] += vecs * fi
    return out % p if p else out


def substitute(poly: Poly, forms: np.ndarray, p: int) -> np.ndarray:
    """Dense vector of ``poly(l_1, ..., l_n)`` for linear forms ``l_i``.

    ``forms`` has shape (poly.nvars, m) or (batch, poly.nvars, m); the result
    lives in ``basis(m, deg)`` and carries the batch dimension if given.
    """
    if not poly.is_homogeneous():
        raise ValueError("substitution needs a homogeneous polynomial")
    forms = np.asarray(forms, dtype=np.int64)
    single = forms.ndim == 2
    if single:
        forms = forms[None]
    batch, n, m = forms.shape
    deg = poly.degree
    total = np.zeros((batch, basis_size(m, deg)), dtype=np.int64)
    cache: dict[Exps, np.ndarray] = {}

    def power_product(e: Exps) -> np.ndarray:
        # product of forms[:, i] ** e[i], built by peeling off one variable
        if e in cache:
            return cache[e]
        k = sum(e)
        if k == 0:
            v = np.ones((batch, 1), dtype=np.int64)
        else:
            i = max(j for j, a in enumerate(e) if a)
            prev = list(e)
            prev[i] -= 1
            v = times_linear(power_product(tuple(prev)), forms[:, i, :], m, k - 1, p)
        cache[e] = v
        return v

    for e, c in poly.terms.items():
        total += c * power_product(e)
        if p:
            total %= p
    return total[0] if single else total
