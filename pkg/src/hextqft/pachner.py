"""Four-dimensional Pachner moves and a seeded move fuzzer.

A k-move site is a set of k pentachora forming k facets of the boundary of
a 5-simplex on vertex set V.  Writing S for the k vertices omitted by those
facets and A = V - S, the pentachora are exactly the star of the face A and
its link is the boundary of the simplex S.  The move replaces them by the
6-k facets V - {w}, w in A, all of which contain S.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .triangulation import Triangulation, TriangulationError


@dataclass(frozen=True)
class MoveSite:
    kind: int
    lhs: tuple[tuple[int, ...], ...]
    core: tuple[int, ...]        # the face A shared by all l.h.s. pentachora
    opposite: tuple[int, ...]    # S, the vertices completing A to V
    applicable: bool = True      # False when S is already a face elsewhere

    @property
    def correspondence(self) -> dict[int, int]:
        """Vertices of V onto the model vertices 1..6 (in increasing order).

        For k=1 the fresh vertex is not known yet and maps from 0.
        """
        verts = sorted(set(self.core) | set(self.opposite))
        if self.kind == 1:
            verts = sorted(self.core) + [0]
        return {v: i for i, v in enumerate(verts, start=1)}

    def rhs(self, new_label: int | None = None) -> tuple[tuple[int, ...], ...]:
        opposite = self.opposite
        if self.kind == 1:
            if new_label is None:
                raise ValueError("a 1-5 move needs the fresh vertex label")
            opposite = (new_label,)
        V = set(self.core) | set(opposite)
        return tuple(sorted(tuple(sorted(V - {w})) for w in self.core))


def _faces_of_size(t: Triangulation, size: int) -> set[tuple[int, ...]]:
    return set(t.faces(size - 1))


def find_sites(t: Triangulation, k: int) -> list[MoveSite]:
    """All k-move sites, sorted by their l.h.s."""
    if not 1 <= k <= 5:
        raise ValueError(f"Pachner move kind must be 1..5, got {k}")
    if t.dim != 4 or not t.is_closed:
        raise TriangulationError("Pachner moves need a closed 4-dimensional triangulation")
    if k == 1:
        return [MoveSite(1, (f,), f, ()) for f in t.facets]
    size = 6 - k
    star: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for f in t.facets:
        for a in itertools.combinations(f, size):
            star.setdefault(a, []).append(f)
    existing = _faces_of_size(t, k) if k < 5 else set(t.facets)
    sites = []
    for a, fs in star.items():
        if len(fs) != k:
            continue
        S = sorted(set().union(*fs) - set(a))
        if len(S) != k:
            continue
        expected = {tuple(sorted(set(a) | (set(S) - {s}))) for s in S}
        if set(fs) != expected:
            continue
        sites.append(MoveSite(k, tuple(sorted(fs)), a, tuple(S), tuple(S) not in existing))
    sites.sort(key=lambda s: s.lhs)
    return sites


def apply(t: Triangulation, site: MoveSite, new_label: int | None = None) -> Triangulation:
    """Replace the l.h.s. of ``site`` by its r.h.s."""
    facets = set(t.facets)
    if not all(f in facets for f in site.lhs):
        raise TriangulationError("stale move site: l.h.s. pentachora are not all present")
    if site.kind == 1:
        label = max(t.vertices) + 1 if new_label is None else new_label
        if label in t.vertices:
            raise TriangulationError(f"vertex label {label} is already in use")
        if not isinstance(label, int) or label <= 0:
            raise TriangulationError("vertex labels must be positive integers")
        rhs = site.rhs(label)
    else:
        current = {s.lhs: s for s in find_sites(t, site.kind)}
        now = current.get(site.lhs)
        if now is None:
            raise TriangulationError("stale move site: the l.h.s. is no longer a star")
        if not now.applicable:
            raise TriangulationError(f"move would create the existing face {site.opposite}")
        rhs = site.rhs()
    out = (facets - set(site.lhs)) | set(rhs)
    return Triangulation(out, name=t.name)


def inverse_site(t: Triangulation, site: MoveSite, new_label: int | None = None) -> MoveSite:
    """The site in ``t`` (after the move) whose move undoes ``site``."""
    if site.kind == 1:
        target = tuple(sorted(site.rhs(new_label)))
    else:
        target = tuple(sorted(site.rhs()))
    for s in find_sites(t, 6 - site.kind):
        if s.lhs == target:
            return s
    raise TriangulationError("no inverse site found")


def format_move(site: MoveSite, new_label: int | None) -> str:
    lhs = ",".join("(" + ",".join(map(str, f)) + ")" for f in site.lhs)
    return f"move k={site.kind} lhs={lhs} new={new_label if new_label is not None else '-'}"


@dataclass
class FuzzResult:
    triangulation: Triangulation
    log: list[str]
    stopped_early: str | None = None


def default_cap(t: Triangulation) -> int:
    return max(2 * len(t.facets), len(t.facets) + 60)


def fuzz(t: Triangulation, moves: int, seed: int, cap: int | None = None,
         kinds: Sequence[int] = (1, 2, 3, 4, 5)) -> FuzzResult:
    """Apply ``moves`` random moves; the sequence is a function of ``seed``."""
    if moves < 0:
        raise ValueError("move count must be non-negative")
    if not t.is_closed:
        raise TriangulationError("fuzzing needs a closed triangulation")
    cap = default_cap(t) if cap is None else cap
    rng = random.Random(seed)
    log: list[str] = []
    cur = t
    for _ in range(moves):
        options: dict[int, list[MoveSite]] = {}
        for k in kinds:
            if k < 3 and len(cur.facets) + 6 - 2 * k > cap:
                continue
            sites = [s for s in find_sites(cur, k) if s.applicable]
            if sites:
                options[k] = sites
        if not options:
            return FuzzResult(cur, log, f"no applicable move below the cap of {cap} pentachora")
        k = rng.choice(sorted(options))
        site = rng.choice(options[k])
        label = max(cur.vertices) + 1 if k == 1 else None
        cur = apply(cur, site, label)
        log.append(format_move(site, label))
    return FuzzResult(cur, log)
