"""Built-in catalogue of polynomial hexagon 4-cocycles.

Variables a..e are the x-colors of the tetrahedra jklm, iklm, ijlm, ijkm,
ijkl of a pentachoron ijklm.  Each entry below is a basis of the degree-k
cohomology in characteristic p; the strings are kept in the printed form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import Poly

_PRINTED: dict[tuple[int, int], tuple[str, ...]] = {
    (2, 2): (
        "de+ce+ae+cd+bd+c^2+bc+ac+ab",
    ),
    (2, 3): (
        "bde+bce+ace+acd+abd",
        "de^2+ce^2+ae^2+c^2d+b^2d+c^3+ac^2+b^2c+ab^2",
    ),
    (2, 4): (
        "ce^3+be^3+bde^2+ace^2+b^2e^2+c^3e+b^2ce+ac^2d+ab^2d",
        "bce^2+b^2e^2+b^2de+ac^2e+b^3e+bd^3+ad^3+abd^2+a^2d^2+a^2cd+b^3d",
        "d^2e^2+c^2e^2+a^2e^2+c^2d^2+b^2d^2+c^4+b^2c^2+a^2c^2+a^2b^2",
    ),
    (2, 5): (
        "de^4+ce^4+ae^4+c^4d+b^4d+c^5+ac^4+b^4c+ab^4",
        "ce^4+be^4+c^2e^3+b^2e^3+b^2de^2+c^3e^2+ac^2e^2+b^2ce^2+b^3e^2+c^4e"
        "+b^4e+bd^4+ad^4+b^2d^3+a^2d^3+b^3d^2+ab^2d^2+a^2c^2d+b^4d",
        "bd^2e^2+b^2de^2+bc^2e^2+ac^2e^2+b^2ce^2+a^2ce^2+b^2d^2e+b^2c^2e"
        "+a^2c^2e+ac^2d^2+a^2cd^2+ab^2d^2+a^2bd^2+a^2c^2d+a^2b^2d",
    ),
    (2, 6): (
        "ce^5+be^5+bde^4+c^2e^4+ace^4+c^4e^2+b^4e^2+c^5e+b^4ce+ac^4d+ab^4d",
        "b^2d^2e^2+b^2c^2e^2+a^2c^2e^2+a^2c^2d^2+a^2b^2d^2",
        "d^2e^4+c^2e^4+a^2e^4+c^4d^2+b^4d^2+c^6+a^2c^4+b^4c^2+a^2b^4",
        "bce^4+b^2e^4+b^4de+ac^4e+b^5e+bd^5+ad^5+b^2d^4+abd^4+b^4d^2+a^4d^2"
        "+a^4cd+b^5d",
    ),
    (3, 2): (
        "e^2+2d^2+2bd+ad+c^2+bc+2ac",
    ),
    (3, 4): (
        "e^4+de^3+ce^3+be^3+ae^3+2c^3e+b^3e+2c^3d+b^3d+2c^4+2bc^3+2ac^3+b^3c"
        "+b^4+ab^3",
        "de^3+ce^3+2be^3+2ae^3+d^2e^2+bce^2+2b^2e^2+2a^2e^2+bd^2e+c^2de+bcde"
        "+acde+2abde+bc^2e+b^2ce+2abce+b^3e+2ab^2e+2a^2be+2c^2d^2+2bcd^2"
        "+2acd^2+2b^2d^2+abd^2+c^3d+2bc^2d+2b^2cd+2abcd+2a^2cd+b^3d+ab^2d"
        "+a^2bd+2c^4+2bc^3+ac^3+2a^2c^2+b^3c+ab^2c+a^2bc+b^4+ab^3",
    ),
    (3, 5): (
        "de^4+2ae^4+d^2e^3+2bde^3+c^2e^3+2b^2e^3+abe^3+2a^2e^3+c^3de+2b^3de"
        "+c^4e+2bc^3e+2b^3ce+b^4e+2c^3d^2+b^3d^2+c^4d+bc^3d+2ac^3d+2b^3cd"
        "+2b^4d+ab^3d+c^5+bc^4+2ac^4+abc^3+a^2c^3+2b^3c^2+2b^4c+ab^3c+2ab^4"
        "+2a^2b^3",
    ),
    (3, 6): (
        "e^6+2d^6+2b^3d^3+a^3d^3+c^6+b^3c^3+2a^3c^3",
        "c^2e^4+bce^4+b^2e^4+cd^2e^3+2bd^2e^3+2ad^2e^3+2c^2de^3+2bcde^3"
        "+2acde^3+b^2de^3+abde^3+a^2de^3+bc^2e^3+2ac^2e^3+2b^2ce^3+abce^3"
        "+a^2ce^3+ab^2e^3+2a^2be^3+d^4e^2+c^4e^2+bc^3e^2+b^3ce^2+2a^4e^2"
        "+2d^5e+bd^4e+2c^2d^3e+2bcd^3e+2acd^3e+b^2d^3e+abd^3e+a^2d^3e+c^3d^2e"
        "+2b^3d^2e+2a^3d^2e+c^4de+2bc^3de+2ac^3de+2b^3cde+2a^3cde+ab^3de"
        "+a^3bde+c^5e+bc^4e+2b^2c^3e+abc^3e+a^2c^3e+b^3c^2e+2a^3c^2e+b^4ce"
        "+ab^3ce+a^3bce+2b^5e+2ab^4e+2a^2b^3e+a^3b^2e+2a^4be+d^6+cd^5+2ad^5"
        "+2c^2d^4+2bcd^4+2acd^4+b^2d^4+abd^4+a^2d^4+c^3d^3+bc^2d^3+b^2cd^3"
        "+abcd^3+2a^2cd^3+b^3d^3+2ab^2d^3+c^4d^2+bc^3d^2+2ac^3d^2+b^3cd^2"
        "+2a^3cd^2+2b^4d^2+2ab^3d^2+2a^3bd^2+2a^4d^2+2bc^4d+b^2c^3d+abc^3d"
        "+2a^2c^3d+b^3c^2d+2b^4cd+ab^3cd+a^3bcd+2a^4cd+b^5d+ab^4d+2a^3b^2d"
        "+a^4bd+c^6+2bc^5+2ac^5+2ab^2c^3+a^3c^3+b^4c^2+ab^3c^2+a^3bc^2+ab^4c"
        "+2a^3b^2c+a^4bc+a^2b^4+a^3b^3",
    ),
    (5, 2): (
        "e^2+ce+4be+d^2+3bd+2ad+c^2+3bc+3ac+2b^2",
    ),
    (5, 6): (
        "e^6+2de^5+2ce^5+be^5+2ae^5+4c^5e+b^5e+3c^5d+2b^5d+3c^6+4bc^5+3ac^5"
        "+2b^5c+b^6+2ab^5",
        "de^5+3ce^5+2be^5+4ae^5+c^2e^4+3bce^4+b^2e^4+2cd^2e^3+3bd^2e^3"
        "+ad^2e^3+3c^2de^3+4bcde^3+3acde^3+4b^2de^3+2abde^3+4a^2de^3+3c^3e^3"
        "+2bc^2e^3+ac^2e^3+3b^2ce^3+abce^3+2a^2ce^3+2ab^2e^3+3a^2be^3+a^3e^3"
        "+2cd^3e^2+3bd^3e^2+ad^3e^2+c^2d^2e^2+bcd^2e^2+acd^2e^2+4b^2d^2e^2"
        "+3abd^2e^2+3c^3de^2+3bc^2de^2+2ac^2de^2+3abcde^2+3a^2cde^2+b^3de^2"
        "+3a^2bde^2+4c^4e^2+4ac^3e^2+4a^2c^2e^2+2b^3ce^2+ab^2ce^2+3a^2bce^2"
        "+3a^3ce^2+b^4e^2+4ab^3e^2+2a^2b^2e^2+a^3be^2+3a^4e^2+d^5e+3cd^4e"
        "+2bd^4e+4ad^4e+2bcd^3e+4b^2d^3e+abd^3e+3a^2d^3e+3c^3d^2e+2bc^2d^2e"
        "+2ac^2d^2e+b^2cd^2e+2abcd^2e+2b^3d^2e+3ab^2d^2e+4a^3d^2e+2c^4de"
        "+4ac^3de+4b^2c^2de+2a^2c^2de+4b^3cde+4ab^2cde+4a^2bcde+2a^3cde"
        "+3b^4de+2ab^3de+2a^2b^2de+3a^3bde+3a^4de+4c^5e+4bc^4e+2b^2c^3e"
        "+4abc^3e+2a^2c^3e+4b^3c^2e+4ab^3ce+a^3bce+3b^5e+4a^2b^3e+3a^4be+4d^6"
        "+4cd^5+4bd^5+2ad^5+2c^2d^4+2acd^4+4b^2d^4+2a^2d^4+3c^3d^3+bc^2d^3"
        "+2ac^2d^3+2b^2cd^3+abcd^3+2a^2cd^3+3b^3d^3+ab^2d^3+2a^2bd^3+3a^3d^3"
        "+4c^4d^2+3bc^3d^2+3ac^3d^2+b^2c^2d^2+2abc^2d^2+2b^3cd^2+ab^2cd^2"
        "+3a^3cd^2+b^4d^2+ab^3d^2+4a^3bd^2+c^5d+bc^4d+3b^2c^3d+2abc^3d"
        "+a^2c^3d+b^3c^2d+2ab^2c^2d+3a^2bc^2d+a^3c^2d+ab^3cd+3a^2b^2cd"
        "+4a^3bcd+2a^4cd+2b^5d+a^2b^3d+2a^4bd+2c^6+4ac^5+ab^2c^3+a^2bc^3"
        "+3a^3c^3+3ab^3c^2+3a^2b^2c^2+2a^3bc^2+2a^4c^2+3b^5c+2a^2b^3c+4a^4bc"
        "+4b^6+2ab^5",
    ),
}

# Degrees (within the catalogued range) where the cohomology vanishes.
_EMPTY = {(2, 1), (3, 1), (3, 3), (5, 1), (5, 3), (5, 4), (5, 5)}

# The characteristic-zero degree-2 cocycle, with integer coefficients.
CHAR0_DEGREE2 = "4e^2-6ce+6be-d^2+2bd-2ad+4c^2-8bc+2ac+3b^2"


@dataclass(frozen=True)
class Cocycle:
    name: str
    p: int
    kappa: int
    poly: Poly

    def __post_init__(self):
        if self.poly.nvars != 5:
            raise ValueError("a 4-cocycle is a polynomial in the five variables a..e")
        if not self.poly.is_homogeneous() or (self.poly and self.poly.degree != self.kappa):
            raise ValueError(f"{self.name}: not homogeneous of degree {self.kappa}")

    def __add__(self, other: "Cocycle") -> "Cocycle":
        if (self.p, self.kappa) != (other.p, other.kappa):
            raise ValueError("cocycles of different characteristic or degree")
        return Cocycle(f"{self.name}+{other.name}", self.p, self.kappa, self.poly + other.poly)

    def format(self) -> str:
        return self.poly.format()


def _entry(p: int, kappa: int, i: int, text: str) -> Cocycle:
    return Cocycle(f"p{p}k{kappa}c{i}", p, kappa, Poly.parse(text, p=p))


def catalogue() -> dict[str, Cocycle]:
    out = {}
    for (p, kappa), texts in _PRINTED.items():
        for i, text in enumerate(texts, start=1):
            c = _entry(p, kappa, i, text)
            out[c.name] = c
    return out


def catalogue_keys() -> list[tuple[int, int]]:
    return sorted(set(_PRINTED) | _EMPTY)


def catalogue_lookup(p: int, kappa: int) -> list[Cocycle]:
    """The printed basis for (p, kappa); empty where the cohomology vanishes."""
    if (p, kappa) in _EMPTY:
        return []
    if (p, kappa) not in _PRINTED:
        raise KeyError(f"no catalogue entry for p={p}, kappa={kappa}")
    return [_entry(p, kappa, i, t) for i, t in enumerate(_PRINTED[(p, kappa)], start=1)]


def char0_cocycle(p: int = 0) -> Cocycle:
    """The integer degree-2 cocycle, optionally reduced mod p."""
    return Cocycle("p0k2c1" if not p else f"p0k2c1 mod {p}", p, 2, Poly.parse(CHAR0_DEGREE2, p=p))


def get_cocycle(name: str) -> Cocycle:
    """Look up a catalogue name; ``a+b`` sums catalogue entries."""
    cat = catalogue()
    parts = [s.strip() for s in name.split("+")]
    missing = [s for s in parts if s not in cat]
    if missing or not parts:
        raise KeyError(f"unknown cocycle {missing[0] if missing else name!r}")
    total = cat[parts[0]]
    for s in parts[1:]:
        total = total + cat[s]
    return total


def frobenius(c: Cocycle) -> Cocycle:
    return Cocycle(f"frob({c.name})", c.p, c.p * c.kappa, c.poly.frobenius())
