"""Generator expressions and the registry of named test manifolds.

Generator grammar (whitespace separated, parentheses group)::

    expr    := atom | "product" expr expr {expr} | "(" expr ")"
    atom    := "boundary-simplex" | "boundary-simplex<n>" | "circle<n>" | "rp2"

``boundary-simplex`` alone is the 4-sphere (boundary of the 5-simplex);
``product`` folds from the left with the staircase construction.  A bare
``product`` consumes every expression that follows it, so nested products
need parentheses: ``product (product rp2 circle3) circle3``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .triangulation import (Triangulation, TriangulationError, boundary_of_simplex, circle,
                            ingest, simplex_boundary, staircase_product)

# Six-vertex real projective plane.
RP2_6 = ((1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
         (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6))


class GeneratorError(ValueError):
    pass


def _tokens(text: str) -> list[str]:
    return re.findall(r"\(|\)|[^\s()]+", text)


def _atom(tok: str) -> Triangulation:
    if tok == "boundary-simplex":
        return boundary_of_simplex(5)
    m = re.fullmatch(r"boundary-simplex(\d+)", tok)
    if m:
        return simplex_boundary(int(m.group(1)))
    m = re.fullmatch(r"circle(\d+)", tok)
    if m:
        return circle(int(m.group(1)))
    if tok == "rp2":
        return Triangulation(RP2_6, name="rp2", dim=2)
    raise GeneratorError(f"unknown generator {tok!r}")


def generate(expr: str) -> Triangulation:
    """Evaluate a generator expression; the result keeps the expression as name."""
    toks = _tokens(expr)
    if not toks:
        raise GeneratorError("empty generator expression")
    pos = 0

    def parse(stop: set[str]) -> Triangulation:
        nonlocal pos
        if pos >= len(toks):
            raise GeneratorError("generator expression ends early")
        tok = toks[pos]
        pos += 1
        if tok == "(":
            t = parse({")"})
            if pos >= len(toks) or toks[pos] != ")":
                raise GeneratorError("missing ')'")
            pos += 1
            return t
        if tok == ")":
            raise GeneratorError("unexpected ')'")
        if tok != "product":
            try:
                return _atom(tok)
            except TriangulationError as e:
                raise GeneratorError(f"{tok}: {e}") from None
        factors = []
        while pos < len(toks) and toks[pos] not in stop:
            factors.append(parse(stop))
        if len(factors) < 2:
            raise GeneratorError("product needs at least two factors")
        t = factors[0]
        for f in factors[1:]:
            try:
                t = staircase_product(t, f)
            except TriangulationError as e:
                raise GeneratorError(str(e)) from None
        return t

    t = parse(set(")"))
    if pos != len(toks):
        raise GeneratorError(f"unexpected {toks[pos]!r}")
    return t.with_name(" ".join(expr.split()))


# -- shipped data --------------------------------------------------------------------

def data_path(filename: str) -> str:
    return str(resources.files("hextqft").joinpath("data").joinpath(filename))


def data_files() -> list[str]:
    d = resources.files("hextqft").joinpath("data")
    return sorted(p.name for p in d.iterdir() if p.name.endswith(".tri"))


@dataclass(frozen=True)
class Entry:
    name: str
    title: str
    source: str              # "gen:<expr>" or "data:<file>"
    orientable: bool
    chi: int

    @property
    def kind(self) -> str:
        return self.source.split(":", 1)[0]


REGISTRY: dict[str, Entry] = {e.name: e for e in (
    Entry("s4", "S^4", "gen:boundary-simplex", True, 2),
    Entry("t4", "T^4", "gen:product circle3 circle3 circle3 circle3", True, 0),
    Entry("s2xs2", "S^2 x S^2", "gen:product boundary-simplex3 boundary-simplex3", True, 4),
    Entry("s2_twisted_s2", "S^2 ~x S^2", "data:s2_twisted_s2.tri", True, 4),
    Entry("cp2", "CP^2", "data:cp2_9.tri", True, 3),
    Entry("s2xt2", "S^2 x T^2", "gen:product boundary-simplex3 circle3 circle3", True, 0),
    Entry("s3xs1", "S^3 x S^1", "gen:product boundary-simplex4 circle3", True, 0),
    Entry("rp3xs1", "RP^3 x S^1", "data:rp3xs1.tri", True, 0),
    Entry("rp2xs2", "RP^2 x S^2", "data:rp2xs2.tri", False, 2),
    Entry("rp2xt2", "RP^2 x T^2", "data:rp2xt2.tri", False, 0),
    Entry("rp2xrp2", "RP^2 x RP^2", "data:rp2xrp2.tri", False, 1),
    Entry("rp4", "RP^4", "data:rp4.tri", False, 1),
)}

# Twisted tori T~_n^4 (n = 1..4) are recognised names without shipped data.
UNAVAILABLE = {f"twisted_t4_{n}": "no triangulation file for this twisted torus is shipped"
               for n in range(1, 5)}


@lru_cache(maxsize=None)
def load(name: str) -> Triangulation:
    """Triangulation of a registry entry, named after the entry."""
    if name in UNAVAILABLE:
        raise FileNotFoundError(f"{name}: {UNAVAILABLE[name]}")
    try:
        entry = REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown catalogue manifold {name!r}") from None
    kind, arg = entry.source.split(":", 1)
    if kind == "gen":
        t = generate(arg)
    else:
        t = ingest(data_path(arg))
    return t.with_name(name)


def resolve(source: str) -> Triangulation:
    """A registry name, a TRI file path, or a ``data/<file>`` shipped asset."""
    if source in REGISTRY or source in UNAVAILABLE:
        return load(source)
    if os.path.exists(source):
        return ingest(source)
    base = os.path.basename(source)
    if source in (f"data/{base}", base) and base in data_files():
        return ingest(data_path(base))
    raise FileNotFoundError(f"no such triangulation file or catalogue name: {source}")
