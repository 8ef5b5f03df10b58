"""Command-line front end.

Exit codes: 0 success, 1 a verification cross-check disagreed, 2 bad
input (parse or validation errors), 3 an enumeration or term bound was
exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .embedding import plane_dual
from .errors import (
    BoundExceeded,
    EmbeddingError,
    GraphFormatError,
    PreconditionError,
    VerificationError,
)
from .flows import (
    ZpMap,
    count_conformal_dual_flows,
    count_conformal_flows,
    enumerate_dual_flows,
    enumerate_flows,
    find_nz_flow,
    has_nz_flow_brute,
    has_nz_flow_conformal,
    coefficient_table,
    coloring_from_dual_flow,
    is_p_colorable,
)
from .formats import (
    dump_json,
    graph_to_text,
    klein_map_to_json,
    load_graph,
    pair_poly_to_json,
    pair_poly_to_text,
    parse_zp_map,
    quotient_poly_to_json,
    quotient_poly_to_text,
    zp_map_to_json,
    zp_map_to_text,
)
from .fourflow import (
    four_flow_coefficient_table,
    four_flow_polynomial_normal_form,
    conformal_pair_normal_form,
    find_nz_four_flow,
    has_nz_four_flow,
)
from .graphs import cyclomatic_number, kappa
from .quotient import (
    conformal_normal_form,
    flow_polynomial_normal_form,
    flow_poly_eval,
    has_nz_flow_membership,
    surplus_eval,
)
from .structure import (
    chordal_orientation,
    check_coloring_correspondence,
    check_planar_duality,
)


def _color(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _yes(flag: bool) -> str:
    return _color("YES", "32") if flag else _color("NO", "31")


def _read_psi(args, g, p) -> ZpMap:
    with open(args.psi, encoding="utf-8") as fh:
        psi = parse_zp_map(fh.read())
    if psi.p != p:
        raise PreconditionError(f"psi has p={psi.p}, command uses p={p}")
    psi.check_domain(g)
    return psi


def cmd_normal_form(args) -> int:
    g = load_graph(args.file).as_digraph()
    nf = flow_polynomial_normal_form(g, args.p, max_terms=args.bound)
    if args.json:
        sys.stdout.write(dump_json(quotient_poly_to_json(nf)))
    else:
        print(quotient_poly_to_text(nf))
    return 0


def cmd_nz_flow(args) -> int:
    g = load_graph(args.file).as_digraph()
    witness = None
    if args.method == "membership":
        answer = has_nz_flow_membership(g, args.p, max_terms=args.bound)
    elif args.method == "conformal":
        answer = has_nz_flow_conformal(g, args.p, max_states=args.bound)
    else:
        witness = find_nz_flow(g, args.p, max_states=args.bound)
        answer = witness is not None
    if args.json:
        payload = {"answer": answer, "method": args.method}
        if witness is not None:
            payload["witness"] = zp_map_to_json(witness)
        sys.stdout.write(dump_json(payload))
    else:
        print(_yes(answer))
        if witness is not None:
            print(f"witness: {zp_map_to_text(witness)}")
    return 0


def cmd_conformal(args) -> int:
    g = load_graph(args.file).as_digraph()
    psi = _read_psi(args, g, args.p)
    if args.dual:
        counts = count_conformal_dual_flows(g, psi, args.p, max_states=args.bound)
    else:
        counts = count_conformal_flows(g, psi, args.p, max_states=args.bound)
    if args.json:
        sys.stdout.write(
            dump_json(
                {
                    "dual": bool(args.dual),
                    "even": counts.even,
                    "odd": counts.odd,
                    "c": counts.coefficient,
                }
            )
        )
    else:
        kind = "dual flows" if args.dual else "flows"
        print(
            f"{counts.even} even, {counts.odd} odd conformal {kind}; "
            f"c(psi) = {counts.coefficient}"
        )
    return 0


def cmd_coeff_table(args) -> int:
    g = load_graph(args.file).as_digraph()
    ids = g.sorted_arc_ids
    table = coefficient_table(g, args.p, max_states=args.bound)
    entries = [
        {"psi": dict(zip(ids, key)), "c": c}
        for key, c in sorted(table.items())
    ]
    if args.json:
        sys.stdout.write(dump_json({"p": args.p, "entries": entries}))
    else:
        if not entries:
            print("(all coefficients are zero)")
        for entry in entries:
            psi = "; ".join(f"{a}={entry['psi'][a]}" for a in ids)
            print(f"c({psi}) = {entry['c']}")
    return 0


def cmd_four_flow(args) -> int:
    g = load_graph(args.file).as_undirected()
    nf = four_flow_polynomial_normal_form(g, max_terms=args.bound)
    answer = has_nz_four_flow(g, "all", max_states=args.bound, max_terms=args.bound)
    payload = {
        "normal_form": pair_poly_to_json(nf),
        "nz_four_flow": answer,
    }
    witness = find_nz_four_flow(g, max_states=args.bound)
    if witness is not None:
        payload["witness"] = klein_map_to_json(witness)
    if args.table:
        ids = g.sorted_edge_ids
        table = four_flow_coefficient_table(g, max_states=args.bound)
        payload["table"] = [
            {"psi": {e: list(v) for e, v in zip(ids, key)}, "c": c}
            for key, c in sorted(table.items())
        ]
    if args.json:
        sys.stdout.write(dump_json(payload))
    else:
        print(f"nowhere-zero four-flow: {_yes(answer)}")
        print(f"normal form: {pair_poly_to_text(nf)}")
        if witness is not None:
            pairs = "; ".join(
                f"{e}=({v[0]},{v[1]})" for e, v in sorted(witness.values.items())
            )
            print(f"witness: {pairs}")
        if args.table:
            for entry in payload["table"]:
                psi = "; ".join(
                    f"{e}=({v[0]},{v[1]})"
                    for e, v in sorted(entry["psi"].items())
                )
                print(f"c({psi}) = {entry['c']}")
    return 0


def cmd_chordal_orient(args) -> int:
    g = load_graph(args.file).as_undirected()
    cert = chordal_orientation(g)
    sys.stdout.write(dump_json(cert.as_dict()))
    return 0


def cmd_planar_check(args) -> int:
    parsed = load_graph(args.file)
    if parsed.rotation is None:
        raise PreconditionError("planar-check needs rot records in the file")
    g = parsed.as_digraph()
    report = check_planar_duality(
        g, parsed.rotation, args.p, max_states=args.bound, max_terms=args.bound
    )
    sys.stdout.write(dump_json(report.as_dict()))
    return 0 if (report.agrees and report.bijection_ok) else 1


def cmd_dual(args) -> int:
    parsed = load_graph(args.file)
    if parsed.rotation is None:
        raise PreconditionError("dual needs rot records in the file")
    g = parsed.as_digraph()
    result = plane_dual(g, parsed.rotation)
    sys.stdout.write(graph_to_text(result.dual, result.rotation))
    return 0


def cmd_color(args) -> int:
    parsed = load_graph(args.file)
    g = parsed.as_undirected()
    if args.from_dual_flow:
        with open(args.from_dual_flow, encoding="utf-8") as fh:
            phi = parse_zp_map(fh.read())
        d = parsed.as_digraph()
        omega = coloring_from_dual_flow(d, phi)
        if args.json:
            sys.stdout.write(dump_json({"coloring": omega}))
        else:
            print("; ".join(f"{v}={omega[v]}" for v in sorted(omega)))
        return 0
    answer = is_p_colorable(g, args.p, max_states=args.bound)
    if args.json:
        sys.stdout.write(dump_json({"colorable": answer, "p": args.p}))
    else:
        print(_yes(answer))
    return 0


def _verify_checks(args):
    parsed = load_graph(args.file)
    g = parsed.as_digraph()
    p = args.p
    bound = args.bound

    nf = flow_polynomial_normal_form(g, p, max_terms=bound)
    by_membership = not nf.is_zero
    by_conformal = has_nz_flow_conformal(g, p, max_states=bound)
    by_brute = has_nz_flow_brute(g, p, max_states=bound)
    yield (
        "deciders-agree",
        by_membership == by_conformal == by_brute,
        f"membership={by_membership} conformal={by_conformal} brute={by_brute}",
    )

    flows = enumerate_flows(g, p, max_states=bound)
    tensions = enumerate_dual_flows(g, p, max_states=bound)
    ok_counts = len(flows) == p ** cyclomatic_number(g) and len(
        tensions
    ) == p ** (len(g.vertices) - kappa(g))
    yield ("enumeration-counts", ok_counts, f"{len(flows)} flows, {len(tensions)} tensions")

    identity = conformal_normal_form(g, p, max_states=bound)
    yield (
        "normal-form-identity",
        nf == identity,
        "polynomial route vs conformal route",
    )

    n_assignments = (p - 1) ** len(g.arcs)
    if n_assignments <= 4096:
        from itertools import product as _product

        ids = g.sorted_arc_ids
        ok = True
        pv = p ** len(g.vertices)
        for combo in _product(range(1, p), repeat=len(ids)):
            phi = ZpMap.from_tuple(p, ids, combo)
            value = flow_poly_eval(g, dict(phi.values), p).as_int()
            if value not in (0, pv) or value != surplus_eval(g, phi):
                ok = False
                break
        yield ("evaluation-dichotomy", ok, f"{n_assignments} points")
    else:
        yield ("evaluation-dichotomy", True, "skipped (too many points)")

    ids = g.sorted_arc_ids
    if n_assignments <= 256:
        from itertools import product as _product

        ok = True
        for combo in _product(range(p - 1), repeat=len(ids)):
            psi = ZpMap.from_tuple(p, ids, combo)
            a = count_conformal_dual_flows(g, psi, p, "subset", bound)
            b = count_conformal_dual_flows(g, psi, p, "tension", bound)
            if (a.even, a.odd) != (b.even, b.odd):
                ok = False
                break
        yield ("conformal-count-methods", ok, f"{n_assignments} psi checked")
    else:
        psi = ZpMap(p, {a: 0 for a in ids})
        a = count_conformal_dual_flows(g, psi, p, "subset", bound)
        b = count_conformal_dual_flows(g, psi, p, "tension", bound)
        yield (
            "conformal-count-methods",
            (a.even, a.odd) == (b.even, b.odd),
            "psi = 0 only",
        )

    report = check_coloring_correspondence(g.underlying(), p, max_states=bound)
    yield (
        "coloring-correspondence",
        report.agrees,
        f"colorable={report.colorable} dually_flowing={report.dually_flowing}",
    )

    if parsed.rotation is not None and parsed.kind == "digraph":
        planar = check_planar_duality(
            g, parsed.rotation, p, max_states=bound, max_terms=bound
        )
        yield (
            "planar-duality",
            planar.agrees and planar.bijection_ok,
            f"nz_flow={planar.nz_flow} bijection_ok={planar.bijection_ok}",
        )

    if p == 4:
        u = parsed.as_undirected()
        klein = has_nz_four_flow(u, "all", max_states=bound, max_terms=bound)
        yield (
            "four-flow-group-independence",
            klein == by_membership,
            f"klein={klein} z4={by_membership}",
        )
        nf4 = four_flow_polynomial_normal_form(u, max_terms=bound)
        identity4 = conformal_pair_normal_form(u, max_states=bound)
        yield ("four-flow-identity", nf4 == identity4, "pair normal form")


def cmd_verify(args) -> int:
    failures = 0
    for name, ok, detail in _verify_checks(args):
        status = _color("ok", "32") if ok else _color("FAIL", "31")
        print(f"{status:4s} {name}: {detail}" if detail else f"{status:4s} {name}")
        if not ok:
            failures += 1
    if failures:
        print(f"{failures} check(s) failed")
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowpoly",
        description=(
            "Exact nowhere-zero flow computations: flow polynomials, ideal "
            "normal forms, conformal dual-flow counts, plane duality, and "
            "the chordal orientation construction."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, p_required=True, **extra):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        if p_required:
            sp.add_argument("-p", type=int, required=True, help="modulus, at least 2")
        sp.add_argument(
            "--bound",
            type=int,
            default=None,
            help="override the enumeration/term bounds",
        )
        sp.add_argument("file", help="graph file")
        return sp

    sp = add("normal-form", cmd_normal_form, "normal form of the flow polynomial")
    sp.add_argument("--json", action="store_true")

    sp = add("nz-flow", cmd_nz_flow, "decide nowhere-zero p-flow existence")
    sp.add_argument(
        "--method",
        choices=("membership", "conformal", "brute"),
        default="membership",
    )
    sp.add_argument("--json", action="store_true")

    sp = add("conformal", cmd_conformal, "even/odd conformal counts for a psi")
    sp.add_argument("--psi", required=True, help="map file (text or JSON)")
    sp.add_argument(
        "--dual", action="store_true", help="count dual flows instead of flows"
    )
    sp.add_argument("--json", action="store_true")

    sp = add("coeff-table", cmd_coeff_table, "nonzero conformal coefficients")
    sp.add_argument("--json", action="store_true")

    sp = add("four-flow", cmd_four_flow, "Klein four-flow analysis", p_required=False)
    sp.add_argument("--table", action="store_true", help="include the c(psi) table")
    sp.add_argument("--json", action="store_true")

    add(
        "chordal-orient",
        cmd_chordal_orient,
        "orientation certificate for a bridgeless chordal graph",
        p_required=False,
    )

    add("planar-check", cmd_planar_check, "plane-duality cross check")

    add("dual", cmd_dual, "plane dual in graph text format", p_required=False)

    sp = add("color", cmd_color, "p-colorability, or a coloring from a tension")
    sp.add_argument(
        "--from-dual-flow",
        metavar="MAPFILE",
        help="construct the coloring induced by this nowhere-zero tension",
    )
    sp.add_argument("--json", action="store_true")

    add("verify", cmd_verify, "run every applicable cross-check")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "p", None) is not None and args.p < 2:
        print("error: p must be at least 2", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GraphFormatError, EmbeddingError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
