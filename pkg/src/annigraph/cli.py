"""Command-line entry point: ``annigraph <command> ...``.

Exit status is 0 when every requested check passes, 1 when a counterexample
turns up, and 2 for usage errors.
"""
import argparse
import re
import sys


from .corpus import KINDS, CorpusSpec, parse_kind
from .errors import AnnigraphError
from .export import export_graph
from .graphs import Flavor, build_graph, is_isomorphic
from .localization import fraction_module, zero_divisors_on_module
from .modules import Module
from .report import bundle, dumps
from .rings import (
    Integers,
    Product,
    ZMod,
    enumerate_ideals,
    is_essential_ideal,
    maximal_ideals,
    minimal_ideals,
    radical_ideals,
)
from .suites import ALL_SUITES, describe_suites, run_suites

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2


class UsageError(AnnigraphError):
    pass


def parse_ring(text):
    """``Z``, ``Z/n`` or ``Z/n1 x Z/n2 x ...``."""
    parts = [p.strip() for p in re.split(r"\s*[x×]\s*", text.strip())]
    if parts == ["Z"]:
        return Integers()
    moduli = []
    for p in parts:
        m = re.fullmatch(r"Z/(\d+)", p)
        if not m or int(m.group(1)) < 2:
            raise UsageError(f"cannot parse ring {text!r}; expected Z, Z/n or Z/n1 x Z/n2")
        moduli.append(int(m.group(1)))
    return ZMod(moduli[0]) if len(moduli) == 1 else Product(*moduli)


def parse_factors(text):
    """Comma-separated factors; ``d@k`` pins a factor to ring component k."""
    factors, tags = [], []
    for item in filter(None, (s.strip() for s in text.split(","))):
        m = re.fullmatch(r"(\d+)(?:@(\d+))?", item)
        if not m:
            raise UsageError(f"bad factor {item!r}")
        factors.append(int(m.group(1)))
        tags.append(None if m.group(2) is None else int(m.group(2)))
    if any(t is not None for t in tags) and any(t is None for t in tags):
        raise UsageError("tag either every factor or none")
    return factors, (tags if tags and tags[0] is not None else None)


def make_module(ring_text, factor_text):
    factors, tags = parse_factors(factor_text)
    return Module(parse_ring(ring_text), factors, tags)


def _fmt(label):
    if isinstance(label, tuple):
        return "(" + ",".join(_fmt(c) for c in label) + ")"
    return str(label)


# ---------------------------------------------------------------- commands


def cmd_graph(args, out):
    M = make_module(args.ring, args.factors)
    data = export_graph(build_graph(M, args.flavor), args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        out.write(data.decode())
    return EXIT_OK


def cmd_verify(args, out):
    names = args.suites
    if "all" in names and len(names) > 1:
        raise UsageError("'all' cannot be combined with suite names")
    kinds = tuple(parse_kind(k) for k in args.ring_kinds) if args.ring_kinds else KINDS
    spec = CorpusSpec(kinds, args.max_order, args.max_ring_order)
    reports = run_suites(names, spec)
    for r in reports:
        verdict = "FAIL" if r.failed else "ok"
        extra = ""
        if r.reproduced is not None:
            extra = " documented" if r.reproduced else " undocumented"
        out.write(f"{verdict:4} {r.suite:30} {r.status:26} checked={r.instances_checked} "
                  f"hypothesis={r.hypothesis_satisfied} counterexamples={r.counterexamples}{extra}\n")
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(dumps(bundle(reports, spec.as_dict())))
    return EXIT_COUNTEREXAMPLE if any(r.failed for r in reports) else EXIT_OK


def cmd_essential(args, out):
    M = make_module(args.ring, args.factors)
    G = build_graph(M, "full")
    out.write(f"{M}: {G.n} vertices\n")
    for i, x in zip(G.index, G.labels):
        I = M.lift_ideal(M.colon[i])
        out.write(f"  {_fmt(x):16} [x:M] = {str(I):10} essential={is_essential_ideal(I)}\n")
    return EXIT_OK


def cmd_localize(args, out):
    M = make_module(args.ring, args.factors)
    C, T = zero_divisors_on_module(M)
    F = fraction_module(M)
    out.write(f"module: {M} (acting ring {M.acting})\n")
    out.write(f"C(M) = {{{', '.join(sorted(C, key=_natural))}}}\n")
    out.write(f"T    = {{{', '.join(sorted(T, key=_natural))}}}\n")
    out.write(f"fraction ring order {F.ring.size}, fraction module order {F.size}\n")
    code = EXIT_OK
    for f in Flavor:
        G, H = build_graph(M, f), build_graph(F, f)
        iso = is_isomorphic(G, H) is not None
        out.write(f"  {f.value:5} original {G.n}/{len(G.edges())}  localized {H.n}/{len(H.edges())}  "
                  f"isomorphic={iso}\n")
        if not iso:
            code = EXIT_COUNTEREXAMPLE
    return code


def _natural(label):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", str(label))]


def cmd_ideals(args, out):
    R = parse_ring(args.ring)
    nil, jac, soc = radical_ideals(R)
    if not R.is_finite:
        out.write("Z: ideals are nZ for n >= 0 (the lattice is infinite)\n")
        out.write(f"nilradical {nil}, Jacobson radical {jac}, socle {soc}\n")
        return EXIT_OK
    ideals = sorted(enumerate_ideals(R), key=lambda I: (-len(I.indices), I.gens))
    out.write(f"{R}: {len(ideals)} ideals\n")
    for I in ideals:
        covers = [J for J in ideals if I < J and not any(I < K < J for K in ideals)]
        tag = " essential" if is_essential_ideal(I) else ""
        out.write(f"  {str(I):14} order {len(I.indices):3}  covered by {', '.join(map(str, covers)) or '-'}{tag}\n")
    out.write(f"maximal: {', '.join(map(str, maximal_ideals(R)))}\n")
    out.write(f"minimal: {', '.join(map(str, minimal_ideals(R)))}\n")
    out.write(f"nilradical {nil}, Jacobson radical {jac}, socle {soc}\n")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="annigraph", description="Annihilating graphs of finite modules.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", help="export an annihilating graph")
    g.add_argument("ring")
    g.add_argument("factors")
    g.add_argument("--flavor", default="f", type=Flavor.parse, help="f, s or t")
    g.add_argument("--format", default="json", choices=("dot", "json"))
    g.add_argument("--out")
    g.set_defaults(func=cmd_graph)

    v = sub.add_parser("verify", help="run property suites over the corpus",
                       epilog="suites: " + ", ".join(ALL_SUITES))
    v.add_argument("suites", nargs="+", metavar="suite|all")
    v.add_argument("--ring-kinds", nargs="+", metavar="KIND")
    v.add_argument("--max-order", type=int, default=64, help="largest module order")
    v.add_argument("--max-ring-order", type=int, default=36)
    v.add_argument("--report", metavar="FILE")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("essential", help="colon ideals of the vertices and their essentiality")
    e.add_argument("ring")
    e.add_argument("factors")
    e.set_defaults(func=cmd_essential)

    loc = sub.add_parser("localize", help="compare graphs before and after localization")
    loc.add_argument("ring")
    loc.add_argument("factors")
    loc.set_defaults(func=cmd_localize)

    i = sub.add_parser("ideals", help="ideal lattice and structural ideals of a ring")
    i.add_argument("ring")
    i.set_defaults(func=cmd_ideals)

    sub.add_parser("suites", help="list suites").set_defaults(func=cmd_suites)
    return p


def cmd_suites(args, out):
    for name, text in describe_suites().items():
        out.write(f"{name:30} {text}\n")
    return EXIT_OK


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except (AnnigraphError, ValueError) as exc:
        sys.stderr.write(f"annigraph: error: {exc}\n")
        return EXIT_USAGE
