"""Finite fields GF(p^k) with integer element labels.

An element is stored as the integer label ``sum(c_i * p**i)`` of its
coefficient vector ``(c_0, ..., c_{k-1})`` in the polynomial basis
``1, x, ..., x^{k-1}`` modulo a fixed irreducible polynomial.  Prime-field
elements therefore keep their natural labels ``0..p-1``.

Multiplication uses exp/log tables; addition is XOR in characteristic 2 and
digit-wise otherwise.  Every operation has a scalar form (Python ints) and a
vectorised form (numpy integer arrays).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

MAX_ORDER = 2**16
MAX_CHARACTERISTIC = 2**8

# Irreducible moduli fixed by convention; other (p, k) take the irreducible
# polynomial with the smallest lower-coefficient label.
CANONICAL_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
}


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


# -- polynomials over GF(p) as coefficient tuples, low degree first ---------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        shift = len(a) - 1 - dm
        f = a[-1] * inv_lead % p
        for i, mi in enumerate(m):
            a[i + shift] = (a[i + shift] - f * mi) % p
        a = _trim(a)
    return a


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Exhaustive test: no monic factor of degree 1..deg/2."""
    deg = len(modulus) - 1
    if deg < 1 or modulus[-1] % p == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(list(modulus), tuple(low) + (1,), p):
                return False
    return True


def canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    if (p, k) in CANONICAL_MODULI:
        return CANONICAL_MODULI[(p, k)]
    for label in range(p**k):
        low = tuple((label // p**i) % p for i in range(k))
        cand = low + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^k) represented modulo ``modulus`` (coefficients low degree first).

    Instances come from :func:`make_field`, which caches them, so identity
    comparison is the normal way to test "same field".
    """

    p: int
    k: int
    modulus: tuple[int, ...]
    _exp: np.ndarray = field(repr=False)
    _log: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def order(self) -> int:
        return self.q

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.q})" if self.k > 1 else f"GF({self.p})"

    # -- scalar arithmetic on labels ------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p**i) % self.p for i in range(self.k))

    def from_digits(self, d) -> int:
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(d))

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.k == 1:
            return pow(a, n, self.p)
        return int(self._exp[(int(self._log[a]) * n) % (self.q - 1)])

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    def element(self, label: int) -> "FieldElement":
        if not 0 <= label < self.q:
            raise FieldError(f"label {label} outside {self!r}")
        return FieldElement(self, label)

    def elements(self):
        return [FieldElement(self, a) for a in range(self.q)]

    # -- vectorised arithmetic ------------------------------------------

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for i in range(self.k):
            w = self.p**i
            out += (((a // w) % self.p + (b // w) % self.p) % self.p) * w
        return out

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        if self.k == 1:
            return (-a) % self.p
        out = np.zeros(a.shape, dtype=np.int64)
        for i in range(self.k):
            w = self.p**i
            out += ((-((a // w) % self.p)) % self.p) * w
        return out

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        prod = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.k == 1:
            return np.array([pow(int(x), self.p - 2, self.p) for x in a.ravel()],
                            dtype=np.int64).reshape(a.shape)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def vpow(self, a, n: int):
        a = np.asarray(a, dtype=np.int64)
        if n == 0:
            return np.ones(a.shape, dtype=np.int64)
        if self.k == 1:
            out = np.ones(a.shape, dtype=np.int64)
            base = a % self.p
            e = n
            while e:
                if e & 1:
                    out = out * base % self.p
                base = base * base % self.p
                e >>= 1
            return out
        r = self._exp[(self._log[a] * n) % (self.q - 1)]
        return np.where(a == 0, 0, r)

    def vscale(self, c: int, a):
        """Multiply the array ``a`` by the scalar label ``c``."""
        a = np.asarray(a, dtype=np.int64)
        if c == 0:
            return np.zeros(a.shape, dtype=np.int64)
        if c == 1:
            return a.copy()
        return self.vmul(np.int64(c), a)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_powmod(a: list[int], e: int, m: tuple[int, ...], p: int) -> list[int]:
    result, base = [1], _poly_mod(a, m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _build_tables(p: int, k: int, modulus: tuple[int, ...]):
    q = p**k
    if k == 1:
        return np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64)
    orders = [(q - 1) // r for r in _prime_factors(q - 1)]
    for g_label in range(2, q):
        g = [(g_label // p**i) % p for i in range(k)]
        if all(_poly_powmod(g, e, modulus, p) != [1] for e in orders):
            break
    else:
        raise FieldError("no primitive element found")
    # multiplication by g as a k x k matrix on digit vectors (column i = g x^i)
    mg = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        col = _poly_mod(_poly_mul([0] * i + [1], g, p), modulus, p)
        mg[:len(col), i] = col
    # first block of powers one by one, then whole blocks via g^B
    block = int(q ** 0.5) + 1
    vecs = np.zeros((q - 1, k), dtype=np.int64)
    cur = np.zeros(k, dtype=np.int64)
    cur[0] = 1
    for e in range(min(block, q - 1)):
        vecs[e] = cur
        cur = mg @ cur % p
    mb = np.eye(k, dtype=np.int64)
    for _ in range(block):
        mb = mg @ mb % p
    for start in range(block, q - 1, block):
        stop = min(start + block, q - 1)
        vecs[start:stop] = vecs[start - block:stop - block] @ mb.T % p
    labels = vecs @ (p ** np.arange(k, dtype=np.int64))
    exp = np.zeros(2 * q, dtype=np.int64)
    exp[:q - 1] = labels
    exp[q - 1:2 * q - 2] = labels
    log = np.zeros(q, dtype=np.int64)
    log[labels] = np.arange(q - 1)
    # log[0] is never read through a valid path; keep it harmless.
    return exp, log


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldSpec:
    """Return the (cached) field GF(p^k) with its canonical modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if p > MAX_CHARACTERISTIC:
        raise FieldError(f"characteristic {p} exceeds {MAX_CHARACTERISTIC}")
    if k < 1:
        raise FieldError("extension degree must be positive")
    if p**k > MAX_ORDER:
        raise FieldError(f"field order {p}^{k} exceeds {MAX_ORDER}")
    modulus = canonical_modulus(p, k)
    exp, log = _build_tables(p, k, modulus)
    exp.setflags(write=False)
    log.setflags(write=False)
    return FieldSpec(p, k, modulus, exp, log)


@dataclass(frozen=True)
class FieldElement:
    """A single field element; supports the usual operators."""

    field: FieldSpec
    label: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed fields {self.field!r} and {other.field!r}")
            return other.label
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.label, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.label, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.label))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.label, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.label, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.label))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.label))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.label, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.label))

    def frobenius(self) -> "FieldElement":
        return self ** self.field.p

    def __bool__(self):
        return self.label != 0

    def __int__(self):
        return self.label

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.label == other.label
        if isinstance(other, (int, np.integer)):
            return self.label == self.field.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.label))

    def __repr__(self):
        return f"{self.label}@{self.field!r}"
