"""Hexagon-relation invariants of triangulated 4-manifolds over finite fields.

Submodules:

* :mod:`hextqft.fields`, :mod:`hextqft.linalg` -- GF(p^k) arithmetic and matrices
* :mod:`hextqft.triangulation`, :mod:`hextqft.catalogue` -- complexes, generators, data
* :mod:`hextqft.pachner` -- bistellar moves and a seeded fuzzer
* :mod:`hextqft.hexagon` -- permitted colorings, edge vectors, hexagon checks
* :mod:`hextqft.cocycles`, :mod:`hextqft.cohomology` -- the cocycle catalogue and H^4
* :mod:`hextqft.invariants` -- rough and refined invariants
"""

from .catalogue import generate, load, resolve
from .cocycles import Cocycle, get_cocycle
from .fields import FieldSpec, make_field
from .invariants import (BudgetExceeded, InvariantReport, refined_invariant, rough_invariant,
                         sampled_invariant)
from .triangulation import Triangulation, TriangulationError, ingest, emit

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "Cocycle", "FieldSpec", "InvariantReport", "Triangulation",
    "TriangulationError", "emit", "generate", "get_cocycle", "ingest", "load",
    "make_field", "refined_invariant", "resolve", "rough_invariant", "sampled_invariant",
]
