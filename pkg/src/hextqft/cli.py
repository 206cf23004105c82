"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 budget exceeded, 3 a verification
check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import catalogue as cat
from .cocycles import Cocycle, get_cocycle
from .fields import FieldError, make_field
from .invariants import (DEFAULT_BUDGET, BudgetExceeded, OrientationRequired, refined_invariant,
                         rough_invariant, sampled_invariant)
from .triangulation import Triangulation, TriangulationError, emit

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_FAILED = 0, 1, 2, 3


class InputError(Exception):
    pass


# -- argument helpers --------------------------------------------------------------------

def parse_field(text: str):
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"field must be 'p,k' (e.g. 2,2), got {text!r}") from None
    if len(parts) == 1:
        parts.append(1)
    if len(parts) != 2:
        raise InputError(f"field must be 'p,k', got {text!r}")
    try:
        return make_field(*parts)
    except FieldError as e:
        raise InputError(str(e)) from None


def parse_cocycle(name: str) -> Cocycle:
    try:
        return get_cocycle(name)
    except (KeyError, ValueError) as e:
        raise InputError(e.args[0] if e.args else f"unknown cocycle {name!r}") from None


def load_source(args) -> Triangulation:
    given = [s for s in (args.gen, args.tri, args.manifold) if s]
    if len(given) != 1:
        raise InputError("give exactly one of --gen, --tri or --manifold")
    try:
        if args.gen:
            t = cat.generate(args.gen)
        elif args.manifold:
            t = cat.load(args.manifold)
        else:
            t = cat.resolve(args.tri)
    except (cat.GeneratorError, TriangulationError, FileNotFoundError, KeyError) as e:
        raise InputError(e.args[0] if e.args else str(e)) from None
    if t.dim != 4:
        raise InputError(f"expected a 4-dimensional triangulation, got dimension {t.dim}")
    return t


def _add_source(p: argparse.ArgumentParser):
    g = p.add_argument_group("triangulation (choose one)")
    g.add_argument("--gen", metavar="EXPR", help="generator expression, e.g. 'product circle3 circle3'")
    g.add_argument("--tri", metavar="PATH", help="TRI file, or data/<file> for a shipped one")
    g.add_argument("--manifold", metavar="NAME", help="catalogue name: " + ", ".join(cat.REGISTRY))


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands -----------------------------------------------------------------------------

def cmd_invariant(args) -> int:
    t = load_source(args)
    field = parse_field(args.field)
    cocycles = [parse_cocycle(n) for n in (args.cocycle or ["p2k3c1"])]
    for c in cocycles:
        if c.p != field.p:
            raise InputError(f"cocycle {c.name} has characteristic {c.p}, field has {field.p}")
    reports = []
    for c in cocycles:
        if args.sample:
            r = sampled_invariant(t, field, c, args.sample, args.seed)
        else:
            r = refined_invariant(t, field, c, budget=args.budget, threads=args.threads,
                                  method=args.method)
        reports.append(r)
    if args.format == "json":
        docs = [r.to_dict() for r in reports]
        doc = docs[0] if len(docs) == 1 else docs
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n\n".join(r.text() for r in reports))
    return EXIT_OK


def cmd_rough(args) -> int:
    t = load_source(args)
    value = rough_invariant(t, args.p)
    if args.format == "json":
        print(json.dumps({"manifold": t.name or "unnamed", "p": args.p,
                          "f_vector": list(t.f_vector), "i_rough": value}, sort_keys=True))
    else:
        print(f"{t.name or 'unnamed'}  f={t.f_vector}  p={args.p}  I_rough={value}")
    return EXIT_OK


def cmd_cohomology(args) -> int:
    from .cohomology import h4
    if args.p < 2 or any(args.p % d == 0 for d in range(2, int(args.p ** 0.5) + 1)):
        raise InputError(f"p must be prime, got {args.p}")
    kappas = args.kappa or list(range(1, 7))
    if any(k < 1 for k in kappas):
        raise InputError("kappa must be positive")
    for k in kappas:
        h = h4(args.p, k)
        listed = args.p in (2, 3, 5) and k <= 6
        flag = "" if listed else "  (non-catalogue)"
        print(f"H4 p={args.p} kappa={k} dim={h.dim}{flag}")
        if args.emit:
            for i, rep in enumerate(h.representatives, start=1):
                print(f"  basis {i}: {rep.format()}")
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = []
    if args.target == "hexagon":
        from .hexagon import verify_full_hexagon
        fields = [parse_field(f) for f in (args.field or ["2,1", "3,1", "2,2", "5,1"])]
        reports = [verify_full_hexagon(F) for F in fields]
    elif args.target == "cocycles":
        from .cohomology import catalogue_checks, char0_checks
        reports = [catalogue_checks(), char0_checks()]
    elif args.target == "appendix":
        reports = _verify_appendix(args)
    else:
        reports = _verify_pachner(args)
    ok = True
    for r in reports:
        print(r.text())
        ok &= r.passed
    return EXIT_OK if ok else EXIT_FAILED


class _Simple:
    def __init__(self, title: str, items: list[tuple[str, bool]]):
        self.title, self.items = title, items

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.items)

    def text(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        lines.extend(f"  [{'ok' if ok else 'FAIL'}] {label}" for label, ok in self.items)
        return "\n".join(lines)


def _verify_appendix(args) -> list:
    from .hexagon import appendix_A_of_M, appendix_psi_of_M, psi_table, r_matrix, \
        verify_edge_dependencies
    rng = np.random.default_rng(args.seed)
    items = []
    for p in (2, 3, 5, 7, 11):
        F = make_field(p)
        M = F.element(F.from_int(-1))
        items.append((f"GF({p}): psi(M=-1) equals the built-in psi table",
                      appendix_psi_of_M(M) == psi_table(F)))
        items.append((f"GF({p}): A(M=-1) equals the built-in R matrix",
                      appendix_A_of_M(M) == r_matrix(F)))
    for p in (7, 11):
        F = make_field(p)
        Ms = rng.integers(1, p, size=args.trials)
        bad = [int(m) for m in Ms if not verify_edge_dependencies(F.element(int(m))).passed]
        items.append((f"GF({p}): edge dependencies and R(M) membership for {args.trials} random M"
                      + (f" (failures at M={sorted(set(bad))})" if bad else ""), not bad))
    return [_Simple("M-parametric tables", items)]


def _verify_pachner(args) -> list:
    from .pachner import fuzz
    F4 = make_field(2, 2)
    c = get_cocycle("p2k3c1")
    items = []
    for name in args.manifolds:
        t = cat.load(name)
        before = (rough_invariant(t), refined_invariant(t, F4, c).histogram)
        for seed in range(args.seeds):
            res = fuzz(t, args.moves, seed)
            u = res.triangulation
            after = (rough_invariant(u), refined_invariant(u, F4, c).histogram)
            label = (f"{name} seed={seed}: {len(res.log)} moves, f={u.f_vector}, "
                     f"I_rough {before[0]} -> {after[0]}")
            items.append((label, after == before and len(res.log) == args.moves))
            if name == "s4":
                items.append((f"{name} seed={seed}: action vanishes on every coset",
                              after[1][0] == 1))
    return [_Simple("Pachner invariance (rough and GF(4) refined)", items)]


def cmd_generate(args) -> int:
    try:
        t = cat.generate(" ".join(args.expr))
    except (cat.GeneratorError, TriangulationError) as e:
        raise InputError(str(e)) from None
    if t.dim != 4:
        raise InputError(f"expression gives a {t.dim}-dimensional complex, TRI files are 4-dimensional")
    comments = [f"generated by: hextqft generate {t.name}", f"f-vector {t.f_vector}"]
    _emit(emit(t, comments), args.output)
    return EXIT_OK


def cmd_pachner_fuzz(args) -> int:
    from .pachner import fuzz
    t = load_source(args)
    res = fuzz(t, args.moves, args.seed, cap=args.cap)
    log = "\n".join(res.log) + ("\n" if res.log else "")
    if res.stopped_early:
        log += f"stopped early: {res.stopped_early}\n"
    comments = [f"pachner-fuzz moves={args.moves} seed={args.seed} from {t.name or 'input'}"]
    if args.output:
        _emit(emit(res.triangulation, comments), args.output)
        sys.stdout.write(log)
    else:
        sys.stderr.write(log)
        sys.stdout.write(emit(res.triangulation, comments))
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is the budget code here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hextqft", description="Hexagon-relation 4-manifold invariants")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariant", help="refined invariant (value histogram of the action)")
    _add_source(p)
    p.add_argument("--field", default="2,1", help="field as p,k (default 2,1)")
    p.add_argument("--cocycle", action="append", help="catalogue cocycle; repeatable; a+b sums")
    p.add_argument("--sample", type=int, metavar="N", help="Monte-Carlo with N cosets")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="exact-mode work cap")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--method", choices=["auto", "characters", "enumerate"], default="auto")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("rough", help="rough invariant dim L - 2 N0 - N4/2")
    _add_source(p)
    p.add_argument("--p", type=int, default=2, help="characteristic (default 2)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_rough)

    p = sub.add_parser("cohomology", help="dimension of H^4 of the polynomial hexagon complex")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--kappa", type=int, action="append", help="degree; repeatable (default 1..6)")
    p.add_argument("--emit", action="store_true", help="print basis cocycles in a..e")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("verify", help="built-in consistency checks")
    p.add_argument("target", choices=["hexagon", "cocycles", "appendix", "pachner"])
    p.add_argument("--field", action="append", help="hexagon: field p,k; repeatable")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20, help="appendix: random M per field")
    p.add_argument("--moves", type=int, default=20, help="pachner: moves per chain")
    p.add_argument("--seeds", type=int, default=3, help="pachner: chains per manifold")
    p.add_argument("--manifolds", nargs="+", default=["s4", "cp2"], help="pachner: catalogue names")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write the TRI file of a generator expression")
    p.add_argument("expr", nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("pachner-fuzz", help="apply seeded random Pachner moves")
    _add_source(p)
    p.add_argument("--moves", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=None, help="facet cap for expanding moves")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_pachner_fuzz)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (TriangulationError, FieldError, OrientationRequired, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
