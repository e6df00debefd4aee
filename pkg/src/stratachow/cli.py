"""Command-line front end.

Objects are looked up by name in the shipped catalog, or in a declaration file
given with --in (the file may refer to catalog rings only if it redeclares them).
Exit status: 0 success, 1 semantic failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import catalog
from .chowfile import Document, load_file
from .errors import HomogeneityViolation, InputError, StrataChowError, UnknownEntry
from .glue import reconstruct_class
from .groebner import (
    Ideal,
    MonomialOrder,
    groebner_basis,
    ideal_equal,
    is_member,
    is_nonzerodivisor,
    kernel_of_map,
)
from .poly import Polynomial, print_canonical
from .scenarios import run_scenario, scenario_names


class _Context:
    def __init__(self, path=None):
        self.doc: Document = load_file(path) if path else catalog.document()

    def get(self, name, kind=None):
        table = getattr(self.doc, kind) if kind else None
        if table is not None:
            if name not in table:
                raise UnknownEntry(f"no {_KIND_LABEL.get(kind, kind)} named {name!r} in {self.doc.source}")
            return self.doc.get(name)
        return self.doc.get(name)

    def ideal(self, name) -> Ideal:
        return self.get(name, "ideals")

    def poly(self, args, ring) -> Polynomial:
        if getattr(args, "cls", None):
            p = self.get(args.cls, "classes")
            if p.ring != ring:
                p = p.in_ring(ring)
            return p
        if getattr(args, "poly", None):
            return ring.parse(args.poly)
        raise InputError("give a polynomial with --poly EXPR or --class NAME")


def _order(spec, ring):
    if not spec or spec == "grevlex":
        return MonomialOrder.grevlex()
    if spec.startswith("elim:"):
        blocks = [b.split(",") for b in spec[5:].split("|")]
        named = {n for b in blocks for n in b}
        unknown = named - set(ring.names)
        if unknown:
            raise InputError(f"unknown variables in order: {sorted(unknown)}")
        rest = [n for n in ring.names if n not in named]
        if rest:
            blocks.append(rest)
        return MonomialOrder.elimination(*blocks)
    raise InputError(f"unknown monomial order {spec!r} (use grevlex or elim:x,y|z)")


def _emit(args, data: dict, text_lines):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _cert_json(cert):
    if cert is None:
        return None
    return {
        "cofactors": [print_canonical(c) for c in cert.cofactors],
        "remainder": print_canonical(cert.remainder),
        "denominators": sorted(int(d) for d in cert.denominators()),
        "smooth_over_Z16": cert.smooth,
    }


# ---------------------------------------------------------------------------


def cmd_gb(args, ctx):
    I = ctx.ideal(args.ideal)
    gb = groebner_basis(I, _order(args.order, I.ring))
    basis = [print_canonical(g) for g in gb.basis]
    _emit(args, {"ideal": args.ideal, "order": gb.order.describe(), "basis": basis},
          [f"# reduced Groebner basis of {args.ideal} ({len(basis)} elements, {gb.order.describe()})"] + basis)
    return 0


def cmd_reduce(args, ctx):
    I = ctx.ideal(args.ideal)
    p = ctx.poly(args, I.ring)
    rep = is_member(p, I, certify=True)
    nf = rep.remainder
    _emit(args, {"normal_form": print_canonical(nf), "certificate": _cert_json(rep.certificate)},
          [f"normal_form: {print_canonical(nf)}"])
    return 0


def cmd_member(args, ctx):
    I = ctx.ideal(args.ideal)
    p = ctx.poly(args, I.ring)
    rep = is_member(p, I, certify=True)
    lines = [f"member_over_Q: {'true' if rep.member_over_Q else 'false'}"]
    if rep.member_over_Q:
        lines.append(f"smooth_over_Z16: {'true' if rep.smooth_over_Z16 else 'false'}")
        for g, c in zip(I.generators, rep.certificate.cofactors):
            if not c.is_zero():
                lines.append(f"  ({print_canonical(c)}) * [{print_canonical(g)}]")
    else:
        lines.append(f"remainder: {print_canonical(rep.remainder)}")
    _emit(args, {"member_over_Q": rep.member_over_Q, "smooth_over_Z16": rep.smooth_over_Z16 if rep.member_over_Q else None,
                 "remainder": print_canonical(rep.remainder), "certificate": _cert_json(rep.certificate) if rep.member_over_Q else None},
          lines)
    if args.expect is not None and rep.member_over_Q != (args.expect == "true"):
        return 1
    return 0


def cmd_ideal_eq(args, ctx):
    I, J = ctx.ideal(args.first), ctx.ideal(args.second)
    if I.ring != J.ring:
        raise InputError("the two ideals live in different rings")
    eq = ideal_equal(I, J)
    _emit(args, {"equal_over_Q": eq}, [f"equal_over_Q: {'true' if eq else 'false'}"])
    return 0 if eq or not args.assert_equal else 1


def cmd_kernel(args, ctx):
    rmap = ctx.get(args.map, "maps")
    K = kernel_of_map(rmap)
    gens = [print_canonical(g) for g in K.generators]
    _emit(args, {"map": args.map, "kernel": gens}, [f"# kernel of {args.map} ({len(gens)} generators)"] + gens)
    return 0


def cmd_nzd(args, ctx):
    I = ctx.ideal(args.ideal)
    f = ctx.poly(args, I.ring)
    ok = is_nonzerodivisor(f, I)
    _emit(args, {"nonzerodivisor": ok}, [f"nonzerodivisor: {'true' if ok else 'false'}"])
    return 0 if ok or not args.assert_true else 1


def cmd_glue(args, ctx):
    strat = ctx.get(args.name, "glues")
    stages = strat.run(check=True)
    final = stages[-1][2]
    data = {
        "stages": [
            {"closed": d.closed_side.name, "nonzerodivisor": rep["nonzerodivisor"], "surjective": rep["surjective"],
             "relations": len(p.relations.generators)}
            for d, rep, p in stages
        ],
        "relations": [{"label": lab, "poly": print_canonical(g)} for lab, g in zip(final.labels, final.relations.generators)],
    }
    lines = [f"stage {i + 1}: {s['closed']} nzd={s['nonzerodivisor']} surjective={s['surjective']} ({s['relations']} relations)"
             for i, s in enumerate(data["stages"])]
    lines += [f"{r['label']}: {r['poly']}" for r in data["relations"]]
    if args.compare:
        eq = ideal_equal(final.relations, ctx.ideal(args.compare))
        data["equal_to"] = {args.compare: eq}
        lines.append(f"equal_over_Q to {args.compare}: {'true' if eq else 'false'}")
        if not eq:
            _emit(args, data, lines)
            return 1
    _emit(args, data, lines)
    return 0


def cmd_reconstruct(args, ctx):
    doc = ctx.doc
    if args.name not in doc.reconstructs:
        raise UnknownEntry(f"no reconstruct block named {args.name!r}")
    spec = doc.reconstructs[args.name]
    X = reconstruct_class(doc.stratification(spec["glue"]), spec["at"])
    data = {"class": print_canonical(X)}
    lines = [f"class: {print_canonical(X)}"]
    status = 0
    if "expect" in spec and "modulo" in spec:
        ok = is_member(X - spec["expect"], doc.ideals[spec["modulo"]], certify=False).member_over_Q
        data["matches_expected"] = ok
        lines.append(f"matches expected modulo {spec['modulo']}: {'true' if ok else 'false'}")
        status = 0 if ok else 1
    _emit(args, data, lines)
    return status


def cmd_verify(args, ctx):
    names = scenario_names() if args.suite == "all" else [args.suite]
    status = 0
    for name in names:
        report = run_scenario(name, oracle=args.oracle)
        if args.json:
            print(json.dumps(report.to_json(), sort_keys=True))
        else:
            print(report.to_text())
        if not report.passed:
            status = 1
    return status


_KIND_LABEL = {
    "rings": "ring",
    "ideals": "ideal",
    "classes": "class",
    "maps": "map",
    "strata": "stratum",
    "glues": "glue",
    "reconstructs": "reconstruct",
    "scenarios": "scenario",
}


def cmd_catalog(args, ctx):
    rows = sorted(ctx.doc.names())
    if args.json:
        print(json.dumps([{"kind": _KIND_LABEL.get(k, k), "name": n} for k, n in rows], sort_keys=True))
    else:
        for kind, name in rows:
            print(f"{_KIND_LABEL.get(kind, kind):12s} {name}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # options accepted both before and after the subcommand; the subcommand copy
    # must not overwrite a value given earlier, hence SUPPRESS defaults there
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="path", default=argparse.SUPPRESS, help="declaration file (default: shipped catalog)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = argparse.ArgumentParser(prog="stratachow", description="Exact Chow-ring presentation checks.")
    parser.add_argument("--in", dest="path", default=None, help="declaration file (default: shipped catalog)")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def poly_opts(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--poly", help="polynomial expression")
        g.add_argument("--class", dest="cls", help="catalog class name")

    p = sub.add_parser("gb", parents=[common], help="reduced Groebner basis")
    p.add_argument("--ideal", required=True)
    p.add_argument("--order", default="grevlex")
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("reduce", parents=[common], help="normal form modulo an ideal")
    p.add_argument("--ideal", required=True)
    poly_opts(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("member", parents=[common], help="ideal membership with certificate")
    p.add_argument("--ideal", required=True)
    poly_opts(p)
    p.add_argument("--expect", choices=["true", "false"], help="exit 1 unless the answer matches")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("ideal-eq", parents=[common], help="equality of two ideals over Q")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--assert", dest="assert_equal", action="store_true")
    p.set_defaults(func=cmd_ideal_eq)

    p = sub.add_parser("kernel", parents=[common], help="kernel of a ring map")
    p.add_argument("--map", required=True)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("nzd", parents=[common], help="non-zero-divisor test")
    p.add_argument("--ideal", required=True)
    poly_opts(p)
    p.add_argument("--assert", dest="assert_true", action="store_true")
    p.set_defaults(func=cmd_nzd)

    p = sub.add_parser("glue", parents=[common], help="run a gluing pipeline")
    p.add_argument("name", nargs="?", default="m3tilde")
    p.add_argument("--compare", help="ideal to compare the result with")
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("reconstruct", parents=[common], help="reconstruct a class from its restrictions")
    p.add_argument("name")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("verify", parents=[common], help="run a verification scenario")
    p.add_argument("--suite", required=True, help="scenario name or 'all'")
    p.add_argument("--oracle", action="store_true", help="cross-check memberships by linear algebra")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", parents=[common], help="inspect the catalog")
    p.add_argument("action", choices=["list"])
    p.set_defaults(func=cmd_catalog)
    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "verify" and args.suite != "all" and args.suite not in scenario_names():
            raise InputError(f"unknown scenario {args.suite!r}; known: {', '.join(scenario_names())}")
        ctx = _Context(args.path)
        return args.func(args, ctx)
    except (InputError, HomogeneityViolation) as exc:
        # a non-homogeneous declaration is a defect of the input file
        print(f"stratachow: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"stratachow: error: {exc}", file=sys.stderr)
        return 2
    except StrataChowError as exc:
        print(f"stratachow: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
