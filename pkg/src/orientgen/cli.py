"""Command-line interface.

Subcommands parse instance files, stream Gray-code listings one line per
visit, optionally certify them against the brute-force oracles, and
export flip graphs as DOT.  Exit codes: 0 success, 1 invalid input or
failed certification, 2 size cap exceeded.
"""

import argparse
import sys

from . import chordal, hypergen
from .errors import CapExceeded, InputError
from .fileio import (format_hypergraph, parse_congruence, parse_digraph,
                     parse_graph, parse_hypergraph, parse_seed_pairs)
from .graphs import (find_peo, is_acyclic, orientation_mask, relabel_digraph,
                     relabel_graph)
from .hypergraphs import find_heo, graphical_building_set, relabel_hypergraph
from .jumps import LanguageOracle, algorithm_J
from .oracle import (ArcListingCertifier, PairListingCertifier,
                     build_flip_graph, certify_hamilton_path,
                     enumerate_ao_graph, enumerate_ao_hyper, flip_graph_dot,
                     one_arc_flip, pair_flip_relation, quotient_cover_graph)
from .quotients import (Congruence, build_ar_poset, classify,
                        forcing_closure, generate_quotient_path,
                        identity_congruence, is_identity_peo_consistent,
                        peo_consistent_order)


def _read(path):
    try:
        with open(path) as handle:
            return handle.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror or exc))


def _perm_line(pi):
    # single digits concatenate; wider alphabets get spaces
    if len(pi) <= 9:
        return "".join(map(str, pi))
    return " ".join(map(str, pi))


def _arcs_line(d):
    return " ".join("%d %d" % a for a in d.arcs)


def _no_dot_combo(args, *flags):
    if args.output == "dot":
        for flag in flags:
            if getattr(args, flag.replace("-", "_")):
                raise InputError("--output dot cannot be combined with --%s"
                                 % flag)


def _cmd_ao_graph(args, out):
    _no_dot_combo(args, "count-only", "counters", "certify")
    g = parse_graph(_read(args.file))
    order = tuple(range(1, g.n + 1)) if args.peo == "given" else None
    if args.output == "dot":
        nodes = enumerate_ao_graph(g)
        fg = build_flip_graph(nodes, one_arc_flip)
        run = chordal.generate(g, order)
        path = [run.digraph() for _ in run]
        out.write(flip_graph_dot(
            fg, path=path, name="aograph",
            labeler=lambda d: format(orientation_mask(g, d), "x")))
        return 0
    run = chordal.generate(g, order)
    cert = ArcListingCertifier(g) if args.certify else None
    listing = not args.count_only
    for step in run:
        if cert is not None:
            cert.visit(run.mask())
        if not listing:
            continue
        if args.output == "arcs":
            out.write(_arcs_line(run.digraph()) + "\n")
        elif args.output == "perm":
            d = relabel_digraph(run.digraph(), run.order)
            out.write(_perm_line(chordal.encode(d)) + "\n")
        elif step is not None:
            out.write("%d %d\n" % step)
    if args.count_only:
        out.write("%d\n" % run.visits)
    if cert is not None:
        out.write("certified %d orientations\n" % cert.finish())
    if args.counters:
        out.write("visits=%d comparisons=%d flips=%d "
                  "max-step-comparisons=%d\n"
                  % (run.visits, run.comparisons, run.flips,
                     run.max_step_comparisons))
    return 0


def _check_jump_trace(h, order, trace):
    """The permutation trace of a hypergraph run must be the jump listing
    of the full encoding language."""
    rh = relabel_hypergraph(h, order)
    lang = {hypergen.encode(rh, o) for o in enumerate_ao_hyper(rh)}
    expect = list(algorithm_J(LanguageOracle.from_set(lang)))
    if list(trace) != expect:
        raise InputError("permutation trace differs from the jump listing")


def _cmd_ao_hyper(args, out):
    _no_dot_combo(args, "count-only", "certify")
    h = parse_hypergraph(_read(args.file))
    order = tuple(range(1, h.n + 1)) if args.order == "given" else None
    if args.output == "dot":
        nodes = enumerate_ao_hyper(h)
        fg = build_flip_graph(nodes, pair_flip_relation(h))
        run = hypergen.generate(h, order)
        path = [run.heads() for _ in run]
        out.write(flip_graph_dot(
            fg, path=path, name="aohyper",
            labeler=lambda o: ",".join(map(str, o))))
        return 0
    run = hypergen.generate(h, order)
    cert = PairListingCertifier(h) if args.certify else None
    trace = []
    for step in run:
        if cert is not None:
            cert.visit(run.heads())
            trace.append(run.permutation())
        if args.count_only:
            continue
        if args.output == "heads":
            out.write(" ".join(map(str, run.heads())) + "\n")
        elif args.output == "perm":
            out.write(_perm_line(run.permutation()) + "\n")
        elif step is not None:
            out.write("%d %d\n" % step)
    if args.count_only:
        out.write("%d\n" % run.visits)
    if cert is not None:
        count = cert.finish()
        _check_jump_trace(h, run.order, trace)
        out.write("certified %d orientations\n" % count)
    return 0


def _cmd_elim_trees(args, out):
    g = parse_graph(_read(args.file))
    count = 0
    if args.output == "perm":
        order = find_peo(g)
        if order is None:
            raise InputError("graph is not chordal")
        bg = graphical_building_set(relabel_graph(g, order))
        run = hypergen.HyperRun(bg, tuple(range(1, g.n + 1)))
        for _ in run:
            count += 1
            if not args.count_only:
                out.write(_perm_line(run.permutation()) + "\n")
    else:
        for parent in hypergen.generate_elim_forests(g):
            count += 1
            if not args.count_only:
                out.write(" ".join(map(str, parent)) + "\n")
    if args.count_only:
        out.write("%d\n" % count)
    return 0


def _cmd_quotient(args, out):
    if args.output == "dot" and args.count_only:
        raise InputError("--output dot cannot be combined with --count-only")
    d = parse_digraph(_read(args.file))
    if not is_acyclic(d):
        raise InputError("digraph is not acyclic")
    if not is_identity_peo_consistent(d):
        order = peo_consistent_order(d)
        if order is None:
            raise InputError("digraph is not peo-consistent")
        d = relabel_digraph(d, order)
    p = build_ar_poset(d)
    if args.congruence is not None:
        c = Congruence(p, parse_congruence(_read(args.congruence)))
    elif args.seed_pairs is not None:
        c = forcing_closure(p, parse_seed_pairs(_read(args.seed_pairs)))
    else:
        c = identity_congruence(p)
    trail = []
    for mask, cls in generate_quotient_path(d, c):
        trail.append(cls)
        if args.count_only or args.output == "dot":
            continue
        if args.output == "classes":
            members = [mask] + [m for m in c.classes[cls] if m != mask]
            out.write(" ".join(format(m, "x") for m in members) + "\n")
        else:
            out.write(_perm_line(p.permutation_of(mask)) + "\n")
    fg = None
    if args.output == "dot" or args.certify:
        fg = quotient_cover_graph(c.classes)
    if args.output == "dot":
        out.write(flip_graph_dot(
            fg, path=trail, name="quotient",
            labeler=lambda k: format(c.classes[k][0], "x")))
    if args.count_only:
        out.write("%d\n" % len(trail))
    if args.certify:
        if sorted(trail) != list(range(len(c.classes))):
            raise InputError("listing misses or repeats a congruence class")
        res = certify_hamilton_path(fg, trail)
        if not res:
            raise InputError(
                "listing is not a Hamilton path of the quotient cover "
                "graph: %s" % res.reason)
        out.write("certified %d classes\n" % len(trail))
    return 0


def _cmd_classify(args, out):
    d = parse_digraph(_read(args.file))
    out.write(classify(d) + "\n")
    return 0


def _cmd_peo(args, out):
    g = parse_graph(_read(args.file))
    order = find_peo(g)
    if order is None:
        raise InputError("graph is not chordal")
    out.write(" ".join(map(str, order)) + "\n")
    return 0


def _cmd_heo(args, out):
    h = parse_hypergraph(_read(args.file))
    order = find_heo(h)
    if order is None:
        raise InputError("hypergraph has no hyperfect elimination order")
    out.write(" ".join(map(str, order)) + "\n")
    return 0


def _cmd_flipgraph(args, out):
    text = _read(args.file)
    if args.hyper:
        h = parse_hypergraph(text)
        fg = build_flip_graph(enumerate_ao_hyper(h), pair_flip_relation(h))
        path = None
        if find_heo(h) is not None:
            run = hypergen.generate(h)
            path = [run.heads() for _ in run]
        out.write(flip_graph_dot(
            fg, path=path, labeler=lambda o: ",".join(map(str, o))))
    else:
        g = parse_graph(text)
        fg = build_flip_graph(enumerate_ao_graph(g), one_arc_flip)
        path = None
        if find_peo(g) is not None:
            run = chordal.generate(g)
            path = [run.digraph() for _ in run]
        out.write(flip_graph_dot(
            fg, path=path,
            labeler=lambda d: format(orientation_mask(g, d), "x")))
    return 0


def _cmd_building_set(args, out):
    g = parse_graph(_read(args.file))
    out.write(format_hypergraph(graphical_building_set(g)))
    return 0


def _cmd_selftest(args, out):
    from .selftest import run_selftest
    return run_selftest(quick=args.quick, out=out)


class _Parser(argparse.ArgumentParser):
    """Argument errors exit 1 with a single-line diagnostic; exit code 2
    stays reserved for exceeded size caps."""

    def error(self, message):
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


def build_parser():
    parser = _Parser(
        prog="orientgen",
        description="Gray-code listings of acyclic orientations and "
                    "lattice quotients, with oracle certification.")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="COMMAND")

    pa = sub.add_parser(
        "ao-graph",
        help="arc-flip listing of the acyclic orientations of a chordal "
             "graph")
    pa.add_argument("file", help="graph file: 'n m' header, one edge per "
                                 "line")
    pa.add_argument("--peo", choices=("auto", "given"), default="auto",
                    help="elimination order: computed, or the identity "
                         "labeling of the file")
    pa.add_argument("--output", choices=("arcs", "perm", "flips", "dot"),
                    default="arcs",
                    help="per visit: all arcs, the permutation encoding, "
                         "the flipped arc, or one DOT flip graph")
    pa.add_argument("--count-only", action="store_true",
                    help="print only the number of orientations")
    pa.add_argument("--counters", action="store_true",
                    help="append a visits/comparisons/flips summary line")
    pa.add_argument("--certify", action="store_true",
                    help="check the listing against the brute-force oracle")
    pa.set_defaults(func=_cmd_ao_graph)

    ph = sub.add_parser(
        "ao-hyper",
        help="pair-flip listing of the acyclic orientations of a "
             "hypergraph with a hyperfect elimination order")
    ph.add_argument("file", help="hypergraph file: 'n m' header, then "
                                 "'k v1 .. vk' per hyperedge")
    ph.add_argument("--order", choices=("auto", "given"), default="auto",
                    help="elimination order: computed, or the identity "
                         "labeling of the file")
    ph.add_argument("--output", choices=("heads", "perm", "flips", "dot"),
                    default="heads",
                    help="per visit: all heads, the permutation encoding, "
                         "the flipped pair, or one DOT flip graph")
    ph.add_argument("--count-only", action="store_true",
                    help="print only the number of orientations")
    ph.add_argument("--certify", action="store_true",
                    help="check the listing against the brute-force oracle")
    ph.set_defaults(func=_cmd_ao_hyper)

    pe = sub.add_parser(
        "elim-trees",
        help="rotation listing of the elimination forests of a chordal "
             "graph")
    pe.add_argument("file", help="graph file")
    pe.add_argument("--output", choices=("forest", "perm"),
                    default="forest",
                    help="per visit: the parent array (0 marks roots) or "
                         "the permutation encoding")
    pe.add_argument("--count-only", action="store_true",
                    help="print only the number of forests")
    pe.set_defaults(func=_cmd_elim_trees)

    pq = sub.add_parser(
        "quotient",
        help="Hamilton path in the cover graph of a lattice quotient of "
             "an acyclic digraph's reorientation lattice")
    pq.add_argument("file", help="digraph file: 'n m' header, one arc per "
                                 "line")
    group = pq.add_mutually_exclusive_group()
    group.add_argument("--congruence", metavar="FILE",
                       help="congruence file: one class per line of hex "
                            "flipped-arc masks")
    group.add_argument("--seed-pairs", metavar="FILE",
                       help="force the smallest congruence identifying the "
                            "mask pairs listed one per line")
    group.add_argument("--identity", action="store_true",
                       help="use the identity congruence (the default)")
    pq.add_argument("--output", choices=("classes", "perm", "dot"),
                    default="classes",
                    help="per visit: the class led by its representative "
                         "mask, the representative's permutation, or one "
                         "DOT cover graph")
    pq.add_argument("--count-only", action="store_true",
                    help="print only the number of classes")
    pq.add_argument("--certify", action="store_true",
                    help="check the listing against the brute-force cover "
                         "graph")
    pq.set_defaults(func=_cmd_quotient)

    pc = sub.add_parser(
        "classify",
        help="print the reorientation class of a digraph: not_acyclic, "
             "acyclic, vertebrate, peo_consistent, or skeletal")
    pc.add_argument("file", help="digraph file")
    pc.set_defaults(func=_cmd_classify)

    pp = sub.add_parser("peo",
                        help="print a perfect elimination order of a "
                             "chordal graph")
    pp.add_argument("file", help="graph file")
    pp.set_defaults(func=_cmd_peo)

    pho = sub.add_parser("heo",
                         help="print a hyperfect elimination order of a "
                              "hypergraph")
    pho.add_argument("file", help="hypergraph file")
    pho.set_defaults(func=_cmd_heo)

    pf = sub.add_parser(
        "flipgraph",
        help="DOT flip graph over all acyclic orientations, generator "
             "path highlighted when one exists")
    pf.add_argument("file", help="graph file, or hypergraph file with "
                                 "--hyper")
    pf.add_argument("--hyper", action="store_true",
                    help="read a hypergraph and use pair flips")
    pf.set_defaults(func=_cmd_flipgraph)

    pb = sub.add_parser(
        "building-set",
        help="print the graphical building set of a graph as a "
             "hypergraph file")
    pb.add_argument("file", help="graph file")
    pb.set_defaults(func=_cmd_building_set)

    ps = sub.add_parser("selftest",
                        help="run the embedded acceptance corpus")
    ps.add_argument("--quick", action="store_true",
                    help="small subset, finishes in a few seconds")
    ps.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        code = args.func(args, sys.stdout)
        sys.stdout.flush()
        return 0 if code is None else code
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except CapExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
