"""Command line front end.

Deterministic text or CSV reports; exit code 0 when all checks pass, 1 on a
verified mathematical-check failure, 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys

from . import fileio, hibi, monomials, sheaves, toric
from .exactlin import QQ, PrimeField
from .gradings import box_window, line_window, total_degree_window


def _parse_field(text):
    if text == "q":
        return QQ
    if text.startswith("p:"):
        try:
            return PrimeField(int(text[2:]))
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e))
    raise argparse.ArgumentTypeError(f"bad field {text!r}; use q or p:<prime>")


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise fileio.ParseError(0, f"cannot read {path}: {e.strerror}")


def _emit_tables(tables, fmt, out):
    if fmt == "csv":
        out.write(fileio.hilbert_csv(tables))
        return
    for i in sorted(tables):
        hf = tables[i]
        rows = hf.table_rows()
        if not rows:
            out.write(f"H^{i}: zero on the window\n")
            continue
        for a, d in rows:
            out.write(f"H^{i} at ({','.join(str(x) for x in a)}): {d}\n")


def _emit_hf(hf, fmt, out, label="dim"):
    if fmt == "csv":
        out.write(fileio.hilbert_csv(hf))
        return
    for a, d in ((a, hf[a]) for a in hf.window):
        out.write(f"{label} at ({','.join(str(x) for x in a)}): {d}\n")


def _print_report(report, out):
    out.write(report.render() + "\n")
    return 0 if report.ok else 1


def cmd_poset_analyze(args, out):
    poset = fileio.parse_poset(_read(args.file))
    total, ranks, graded = poset.rank_info()
    out.write(f"elements: {' '.join(poset.labels)}\n")
    for a, b in poset.cover_pairs():
        out.write(f"cover: {a} < {b}\n")
    out.write(f"rank: {total}\n")
    for x in poset.labels:
        out.write(f"rank {x}: {ranks[x]}\n")
    out.write(f"locally graded: {graded}\n")
    ld, witness = poset.is_locally_distributive()
    out.write(f"locally distributive: {ld}")
    if witness:
        out.write(f" (witness interval [{witness[0]}, {witness[1]}])")
    out.write("\n")
    out.write(f"maximal elements: {' '.join(poset.maximal_elements())}\n")
    return 0


def cmd_monomial_decompose(args, out):
    ideal = monomials.parse_mono(_read(args.file))
    comps = monomials.irreducible_decomposition(ideal)
    out.write(f"components: {len(comps)}\n")
    for b in comps:
        gens = [f"x{j + 1}^{e}" for j, e in enumerate(b) if e]
        out.write("component: (" + ", ".join(gens) + ")  exponents "
                  + " ".join(str(e) for e in b) + "\n")
    return 0


def cmd_monomial_locoh(args, out):
    ideal = monomials.parse_mono(_read(args.file))
    radius = args.box if args.box is not None else args.window
    box = box_window(ideal.n, -radius, radius)
    try:
        hfs, depth, dim, note = monomials.decomposition_local_cohomology(
            ideal, args.field, box)
    except monomials.HypothesisError as e:
        out.write(f"[FAIL] dimension-drop hypothesis: {e}\n")
        return 1
    out.write("checked: dimension-drop hypothesis of the decomposition poset\n")
    if note:
        out.write(f"note: {note}\n")
    out.write(f"depth: {depth}\ndim: {dim}\n")
    _emit_tables(hfs, args.format, out)
    return 0


def cmd_hibi_present(args, out):
    poset = fileio.parse_poset(_read(args.file))
    bound = args.window
    try:
        gens = hibi.straightening_presentation(poset, args.field)
    except hibi.NotLocallyDistributive as e:
        out.write(f"input error: {e}\n")
        return 2
    for g in gens:
        out.write(f"relation ({g.pair[0]}, {g.pair[1]}): "
                  f"{g.polynomial.format()}\n")
    hf = hibi.presented_hilbert(poset, bound, args.field)
    _emit_hf(hf, args.format, out, label="HF")
    algebra = hibi.hibi_algebra(poset, args.field)
    lim = algebra.limit_hilbert(line_window(bound))
    counts = [hibi.multichain_count(poset, d) for d in range(bound + 1)]
    ok = all(hf[(d,)] == lim[(d,)] == counts[d] for d in range(bound + 1))
    out.write(f"presented HF == limit HF == multichain count: {ok}\n")
    return 0 if ok else 1


def cmd_hibi_check(args, out):
    poset = fileio.parse_poset(_read(args.file))
    try:
        algebra = hibi.hibi_algebra(poset, args.field)
    except hibi.NotLocallyDistributive as e:
        out.write(f"input error: {e}\n")
        return 2
    code = _print_report(hibi.asl_check(algebra, args.window), out)
    code |= _print_report(hibi.cm_report(poset, args.field), out)
    return code


def cmd_fan_analyze(args, out):
    fan = toric.parse_fan(_read(args.file))
    report = fan.validate()
    code = _print_report(report, out)
    if code:
        return code
    poset = fan.face_poset()
    out.write(f"face poset rank: {poset.rank()}\n")
    for name in sorted(fan.cones):
        hb = toric.hilbert_basis(fan.cones[name])
        out.write(f"hilbert basis {name}: "
                  + "; ".join("(" + " ".join(str(x) for x in g) + ")"
                              for g in hb) + "\n")
    algebra = toric.toric_algebra(fan, args.field,
                                  monoid_generators=fan.monoid_overrides)
    window = box_window(fan.ambient, -args.window, args.window)
    hf = algebra.limit_hilbert(window)
    _emit_hf(hf, args.format, out, label="HF")
    return 0


def cmd_fan_skeleton_depth(args, out):
    fan = toric.parse_fan(_read(args.file))
    depth, max_cm, report = toric.skeleton_depth(fan, args.field,
                                                 window_radius=args.window)
    out.write("checked: poset locally graded; stalk dimensions equal ranks\n")
    out.write("assumed: normal monoid stalks are Cohen-Macaulay\n")
    return _print_report(report, out)


def _load_kp(args):
    return fileio.parse_kp(_read(args.file), args.field)


def _kp_window(algebra, radius):
    if algebra.grading_rank == 1 and all(
            all(c >= 0 for c in d)
            for s in algebra.stalks.values() for d in s.degrees):
        return line_window(radius)
    return box_window(algebra.grading_rank, -radius, radius)


def cmd_kp_limit(args, out):
    algebra = _load_kp(args)
    window = _kp_window(algebra, args.window)
    code = _print_report(algebra.validate(window), out)
    if code:
        return code
    _emit_hf(algebra.limit_hilbert(window), args.format, out, label="HF")
    return 0


def cmd_kp_flasque(args, out):
    algebra = _load_kp(args)
    window = _kp_window(algebra, args.window)
    result = algebra.is_flasque(window, opens_policy=args.opens,
                                seed=args.seed)
    code = _print_report(result.report, out)
    if result.witness:
        u, x, a = result.witness
        out.write(f"witness: open set {{{', '.join(u)}}}, element {x}, "
                  f"degree ({','.join(str(c) for c in a)})\n")
    return code


def cmd_kp_present(args, out):
    algebra = _load_kp(args)
    try:
        presented = fileio.as_presented(algebra)
    except sheaves.SheafError as e:
        out.write(f"input error: {e}\n")
        return 2
    window = _kp_window(presented, args.window)
    for x in sorted(presented.poset.labels):
        for r, _ in getattr(presented.stalks[x], "relations", []):
            out.write(f"generator from {x}: {r.format()}\n")
    cx = presented.variable_system.support_complex()
    from .simplicial import sr_ideal
    ideal = sr_ideal(cx, list(presented.variable_system.global_vars))
    for g in ideal.generators:
        names = [v for v, e in zip(presented.variable_system.global_vars, g)
                 if e]
        out.write("generator non-face: " + "*".join(names) + "\n")
    return _print_report(sheaves.presentation_check(presented, window), out)


def _parse_weights(text):
    weights = {}
    if not text:
        return weights
    for item in text.split(","):
        if "=" not in item:
            raise fileio.ParseError(0, f"bad weight {item!r}; use name=value")
        name, val = item.split("=", 1)
        try:
            weights[name.strip()] = int(val)
        except ValueError:
            raise fileio.ParseError(0, f"bad weight value {val!r}")
    return weights


def cmd_kp_initial(args, out):
    algebra = _load_kp(args)
    try:
        presented = fileio.as_presented(algebra)
    except sheaves.SheafError as e:
        out.write(f"input error: {e}\n")
        return 2
    weights = _parse_weights(args.weights)
    for v in presented.variable_system.global_vars:
        weights.setdefault(v, 0)
    window = _kp_window(presented, args.window)
    try:
        in_alg, report = sheaves.initial_degeneration(presented, weights,
                                                      window)
    except sheaves.SheafError as e:
        out.write(f"input error: {e}\n")
        return 2
    code = _print_report(report, out)
    _emit_hf(in_alg.limit_hilbert(window), args.format, out, label="HF")
    return code


def cmd_kp_rank_select(args, out):
    algebra = _load_kp(args)
    subset = [s for s in args.subset.split(",") if s]
    for x in subset:
        if x not in algebra.poset.index:
            out.write(f"input error: unknown element {x!r}\n")
            return 2
    window = _kp_window(algebra, args.window)
    code = _print_report(
        sheaves.hereditary_check(algebra.poset, subset, args.field), out)
    try:
        report = sheaves.rank_selection_check(algebra, subset, args.field,
                                              window)
    except sheaves.SheafError as e:
        out.write(f"input error: {e}\n")
        return 2
    return code | _print_report(report, out)


def _add_common(leaf):
    """Shared flags, accepted either before or after the subcommand."""
    leaf.add_argument("--field", type=_parse_field,
                      default=argparse.SUPPRESS,
                      help="q (rationals) or p:<prime>")
    leaf.add_argument("--window", type=int, default=argparse.SUPPRESS,
                      help="total-degree bound or box radius")
    leaf.add_argument("--format", choices=["text", "csv"],
                      default=argparse.SUPPRESS)
    leaf.add_argument("--opens", choices=["all", "sampled"],
                      default=argparse.SUPPRESS)
    leaf.add_argument("--seed", type=int, default=argparse.SUPPRESS)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="posetalg",
        description="exact computations with algebra systems on finite posets")
    parser.add_argument("--field", type=_parse_field, default=QQ,
                        help="q (rationals) or p:<prime>")
    parser.add_argument("--window", type=int, default=None,
                        help="total-degree bound or box radius")
    parser.add_argument("--format", choices=["text", "csv"], default="text")
    parser.add_argument("--opens", choices=["all", "sampled"], default="all")
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poset")
    ps = p.add_subparsers(dest="subcommand", required=True)
    q = ps.add_parser("analyze")
    q.add_argument("file")
    q.set_defaults(handler=cmd_poset_analyze, default_window=6)
    _add_common(q)

    p = sub.add_parser("monomial")
    ps = p.add_subparsers(dest="subcommand", required=True)
    q = ps.add_parser("decompose")
    q.add_argument("file")
    q.set_defaults(handler=cmd_monomial_decompose, default_window=6)
    _add_common(q)
    q = ps.add_parser("locoh")
    q.add_argument("file")
    q.add_argument("--box", type=int, default=None)
    q.set_defaults(handler=cmd_monomial_locoh, default_window=4)
    _add_common(q)

    p = sub.add_parser("hibi")
    ps = p.add_subparsers(dest="subcommand", required=True)
    q = ps.add_parser("present")
    q.add_argument("file")
    q.set_defaults(handler=cmd_hibi_present, default_window=6)
    _add_common(q)
    q = ps.add_parser("check")
    q.add_argument("file")
    q.set_defaults(handler=cmd_hibi_check, default_window=4)
    _add_common(q)

    p = sub.add_parser("fan")
    ps = p.add_subparsers(dest="subcommand", required=True)
    q = ps.add_parser("analyze")
    q.add_argument("file")
    q.set_defaults(handler=cmd_fan_analyze, default_window=4)
    _add_common(q)
    q = ps.add_parser("skeleton-depth")
    q.add_argument("file")
    q.set_defaults(handler=cmd_fan_skeleton_depth, default_window=4)
    _add_common(q)

    p = sub.add_parser("kp")
    ps = p.add_subparsers(dest="subcommand", required=True)
    q = ps.add_parser("limit")
    q.add_argument("file")
    q.set_defaults(handler=cmd_kp_limit, default_window=6)
    _add_common(q)
    q = ps.add_parser("flasque")
    q.add_argument("file")
    q.set_defaults(handler=cmd_kp_flasque, default_window=4)
    _add_common(q)
    q = ps.add_parser("present")
    q.add_argument("file")
    q.set_defaults(handler=cmd_kp_present, default_window=4)
    _add_common(q)
    q = ps.add_parser("initial")
    q.add_argument("file")
    q.add_argument("--weights", default="")
    q.set_defaults(handler=cmd_kp_initial, default_window=5)
    _add_common(q)
    q = ps.add_parser("rank-select")
    q.add_argument("file")
    q.add_argument("--subset", required=True)
    q.set_defaults(handler=cmd_kp_rank_select, default_window=4)
    _add_common(q)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    if args.window is None:
        args.window = args.default_window
    if args.window < 0:
        out.write("input error: window must be nonnegative\n")
        return 2
    try:
        return args.handler(args, out)
    except (fileio.ParseError, ValueError) as e:
        out.write(f"input error: {e}\n")
        return 2


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
