"""Regenerate the triangulation data files shipped in src/hextqft/data.

Run from the repository root::

    python tools/build_catalogue.py [--check]

Every file is produced by an explicit construction, written with a
provenance comment, and (when the ``regina`` package is importable)
validated: vertex links are 3-spheres, homology and orientability are the
expected ones, and for the CP^2 pair the intersection form is checked.
``--check`` only compares the constructions with the files on disk.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

from hextqft.catalogue import generate
from hextqft.triangulation import (Triangulation, circle, emit, normalize_labels,
                                   parse_tri, simplex_boundary, staircase_product)

DATA = Path(__file__).resolve().parents[1] / "src" / "hextqft" / "data"



def rp2() -> Triangulation:
    return generate("rp2")


# -- nine-vertex CP^2 ---------------------------------------------------------------

def cp2_candidates() -> list[list[tuple[int, ...]]]:
    """Closed 36-facet complexes on AG(2,3) invariant under its translations.

    The nine points are labelled 1..9 in lexicographic order of (x, y).  The
    126 five-point subsets fall into 14 free translation orbits; a complex is
    a union of four orbits that is a pseudomanifold and contains all 84
    triangles.  All solutions turn out to be isomorphic.
    """
    pts = [(a, b) for a in range(3) for b in range(3)]
    lab = {p: i for i, p in enumerate(pts, start=1)}
    orbits, seen = [], set()
    for s in itertools.combinations(pts, 5):
        if frozenset(s) in seen:
            continue
        orb = {frozenset(((x + u) % 3, (y + v) % 3) for x, y in s) for u, v in pts}
        seen |= orb
        orbits.append(orb)
    out = []
    for combo in itertools.combinations(orbits, 4):
        facets = set().union(*combo)
        ridges: dict[tuple, int] = {}
        for f in facets:
            for r in itertools.combinations(sorted(f), 4):
                ridges[r] = ridges.get(r, 0) + 1
        if any(c != 2 for c in ridges.values()):
            continue
        triangles = {tr for f in facets for tr in itertools.combinations(sorted(f), 3)}
        if len(triangles) != 84:
            continue
        out.append(sorted(tuple(sorted(lab[p] for p in f)) for f in facets))
    return sorted(out)


def cp2() -> Triangulation:
    return Triangulation(cp2_candidates()[0], name="CP2")


def connected_sum(a: Triangulation, b: Triangulation, flip: bool, name: str) -> Triangulation:
    """Remove the first facet of each summand and identify their boundaries.

    ``flip`` composes the identification with a transposition, which
    switches between the two orientation classes of the sum.
    """
    fa, fb = a.facets[0], b.facets[0]
    shift = max(a.vertices)
    image = {v: v + shift for v in b.vertices}
    target = list(fa)
    if flip:
        target[0], target[1] = target[1], target[0]
    for v, w in zip(fb, target):
        image[v] = w
    used = sorted(set(image.values()) - set(fa))
    compact = {v: i for i, v in enumerate(used, start=shift + 1)}
    image = {v: compact.get(w, w) for v, w in image.items()}
    facets = [f for f in a.facets if f != fa]
    facets += [tuple(image[v] for v in f) for f in b.facets if f != fb]
    return normalize_labels(Triangulation(facets, name=name))


# -- antipodal quotients of subdivided cross-polytopes -----------------------------------

def projective_space(n: int, name: str) -> Triangulation:
    """RP^n from the barycentric subdivision of the (n+1)-cross-polytope boundary.

    Faces are the subsets of {+-e_i} without antipodal pairs, and a full
    flag of nested faces is a simplex of the subdivision.
    The antipodal map has no two vertices of a closed star in one orbit, so
    the quotient is again a simplicial complex.
    """
    m = n + 1
    faces = []
    for size in range(1, m + 1):
        for idx in itertools.combinations(range(m), size):
            for signs in itertools.product((1, -1), repeat=size):
                faces.append(frozenset(s * (i + 1) for s, i in zip(signs, idx)))
    neg = {f: frozenset(-x for x in f) for f in faces}
    reps = sorted({min(f, neg[f], key=lambda g: sorted(g)) for f in faces}, key=sorted)
    reps = sorted(reps, key=lambda g: (len(g), sorted(g)))
    label = {}
    for i, r in enumerate(reps, start=1):
        label[r] = label[neg[r]] = i
    facets = set()
    for top in (f for f in faces if len(f) == m):
        for order in itertools.permutations(sorted(top)):
            chain = [frozenset(order[:k]) for k in range(1, m + 1)]
            facets.add(tuple(sorted(label[c] for c in chain)))
    return Triangulation(facets, name=name, dim=n)


# -- the catalogue ----------------------------------------------------------------------

def build() -> dict[str, tuple[Triangulation, list[str]]]:
    s2 = simplex_boundary(3)
    c = circle(3)
    cp = cp2()
    rp3 = projective_space(3, "rp3")
    out = {
        "cp2_9.tri": (cp, [
            "CP^2, 9 vertices, f = (9,36,84,90,36).",
            "source: the translation-invariant 3-neighborly complex on AG(2,3);",
            "by the uniqueness of 9-vertex combinatorial 4-manifolds with chi = 3",
            "this is the Kuehnel-Banchoff triangulation of CP^2 (relabelled).",
        ]),
        "s2_twisted_s2.tri": (None, [
            "S^2 twisted-times S^2 = CP^2 # (-CP^2), 13 vertices, 70 facets.",
            "source: connected sum of two copies of cp2_9.tri along a facet,",
            "identification chosen so the intersection form is odd of signature 0.",
        ]),
        "rp4.tri": (projective_space(4, "RP4"), [
            "RP^4, 121 vertices, 1920 facets.",
            "source: antipodal quotient of the barycentric subdivision of the",
            "boundary of the 5-dimensional cross-polytope.",
        ]),
        "rp3xs1.tri": (staircase_product(rp3, c, name="RP3xS1"), [
            "RP^3 x S^1, 2304 facets.",
            "source: staircase product of RP^3 (antipodal quotient of the",
            "subdivided 4-cross-polytope boundary, 192 tetrahedra) with circle3.",
        ]),
        "rp2xs2.tri": (staircase_product(rp2(), s2, name="RP2xS2"), [
            "RP^2 x S^2, 240 facets.",
            "source: staircase product of the 6-vertex RP^2 with boundary-simplex3.",
        ]),
        "rp2xt2.tri": (staircase_product(staircase_product(rp2(), c), c, name="RP2xT2"), [
            "RP^2 x T^2, 1080 facets.",
            "source: staircase product of the 6-vertex RP^2 with circle3 twice.",
        ]),
        "rp2xrp2.tri": (staircase_product(rp2(), rp2(), name="RP2xRP2"), [
            "RP^2 x RP^2, 600 facets.",
            "source: staircase product of two copies of the 6-vertex RP^2.",
        ]),
    }
    out["s2_twisted_s2.tri"] = (_twisted(cp), out["s2_twisted_s2.tri"][1])
    return out


def _twisted(cp: Triangulation) -> Triangulation:
    try:
        import regina  # noqa: F401
    except ImportError:
        # without regina fall back to the parity recorded when the file was made
        return connected_sum(cp, cp, flip=True, name="S2~xS2")
    for flip in (False, True):
        t = connected_sum(cp, cp, flip, name="S2~xS2")
        T = to_regina(t)
        T.simplify()
        form = T.intersectionForm()
        if form.signature() == 0 and not form.even():
            return t
    raise RuntimeError("neither identification gives CP^2 # -CP^2")


# -- validation with regina ---------------------------------------------------------------

def to_regina(t: Triangulation):
    import regina
    T = regina.Triangulation4()
    simp = [T.newPentachoron() for _ in t.facets]
    seen: dict[tuple, tuple[int, int]] = {}
    for i, f in enumerate(t.facets):
        for j in range(5):
            ridge = f[:j] + f[j + 1:]
            if ridge not in seen:
                seen[ridge] = (i, j)
                continue
            k, l = seen.pop(ridge)
            g = t.facets[k]
            img = [g.index(v) if v in g else l for v in f]
            simp[i].join(j, simp[k], regina.Perm5(*img))
    return T


EXPECTED = {
    "cp2_9.tri": (True, "0", "Z"),
    "s2_twisted_s2.tri": (True, "0", "2 Z"),
    "rp4.tri": (False, "Z_2", "0"),
    "rp3xs1.tri": (True, "Z + Z_2", "Z_2"),
    "rp2xs2.tri": (False, "Z_2", "Z"),
    "rp2xt2.tri": (False, "2 Z + Z_2", "Z + 2 Z_2"),
    "rp2xrp2.tri": (False, "2 Z_2", "Z_2"),
}


def validate(name: str, t: Triangulation) -> list[str]:
    try:
        import regina  # noqa: F401
    except ImportError:
        return ["regina not installed; topological checks skipped"]
    T = to_regina(t)
    problems = []
    if not (T.isValid() and T.isClosed() and T.isConnected()):
        problems.append("regina reports an invalid, bounded or disconnected complex")
    if not all(T.vertex(i).buildLink().isSphere() for i in range(T.countVertices())):
        problems.append("some vertex link is not a 3-sphere")
    # homology of the raw complex is slow; simplification preserves topology
    T.simplify()
    orient, h1, h2 = EXPECTED[name]
    got = (T.isOrientable(), str(T.homology(1)), str(T.homology(2)))
    if got != (orient, h1, h2):
        problems.append(f"expected (orientable, H1, H2) = {(orient, h1, h2)}, got {got}")
    return problems


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare with the files on disk only")
    args = ap.parse_args(argv)
    status = 0
    for fname, (t, comments) in build().items():
        path = DATA / fname
        problems = validate(fname, t)
        for p in problems:
            print(f"{fname}: {p}")
        status |= bool(problems) and "skipped" not in problems[0]
        if args.check:
            same = path.exists() and parse_tri(path.read_text()) == t
            print(f"{fname}: {'up to date' if same else 'differs'}")
            status |= not same
            continue
        path.write_text(emit(t, comments), encoding="utf-8")
        print(f"{fname}: wrote f = {t.f_vector}, chi = {t.euler_characteristic}")
    return int(status)


if __name__ == "__main__":
    sys.exit(main())
