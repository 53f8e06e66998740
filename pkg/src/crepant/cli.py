"""Command-line interface: every subsystem behind one entry point.

Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.  All
output is deterministic for fixed arguments and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import crystal, geometry, mckay, quiver, reps, roots, toric
from .compare import compare as run_compare
from .errors import CrepantError
from .vertex import gv_extract, gw_partition_function


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _parse_theta(text: str) -> dict:
    out = {}
    for piece in text.split(","):
        key, _, value = piece.partition("=")
        if not _ or not key:
            raise CrepantError(f"bad theta entry {piece!r}; use vertex=value")
        out[key.strip()] = Fraction(value.strip())
    return out


def _parse_variable_map(text: str) -> dict:
    """Parse "q0=-Q0*t^2,q1=Q0" into {var: (coeff, {target: exp})}."""
    out = {}
    for piece in text.split(","):
        key, _, value = piece.partition("=")
        if not _:
            raise CrepantError(f"bad map entry {piece!r}")
        coeff = 1
        exps: dict[str, int] = {}
        value = value.strip()
        if value.startswith("-"):
            coeff = -1
            value = value[1:]
        for factor in value.split("*"):
            factor = factor.strip()
            if not factor:
                continue
            if factor.lstrip("-").isdigit():
                coeff *= int(factor)
                continue
            name, _, power = factor.partition("^")
            exps[name] = exps.get(name, 0) + (int(power) if power else 1)
        out[key.strip()] = (coeff, exps)
    return out


def _load_quiver(args):
    if getattr(args, "quiver", None):
        with open(args.quiver, encoding="utf-8") as fh:
            return quiver.quiver_from_json(fh.read())
    if getattr(args, "mckay", None):
        act = mckay.parse_action(args.mckay)
        return mckay.mckay_quiver(act), mckay.mckay_superpotential(act)
    name = getattr(args, "builtin", None) or "conifold"
    if name.startswith("laufer"):
        n = getattr(args, "n", None) or 1
        return quiver.laufer_quiver(n)
    try:
        return quiver.BUILTIN_QUIVERS[name]()
    except KeyError:
        raise CrepantError(f"unknown builtin quiver {name!r}") from None


def _polygon_from_args(args) -> toric.LatticePolygon:
    if args.square:
        return toric.unit_square()
    if args.triangle:
        return toric.unit_triangle()
    if args.triangle2:
        return toric.double_triangle()
    if args.p2:
        return toric.p2_triangle()
    if args.trapezoid:
        n0, n1 = (int(x) for x in args.trapezoid.split(","))
        return toric.trapezoid(n0, n1)
    if args.zn is not None:
        return toric.zn_triangle(args.zn)
    if args.polygon:
        with open(args.polygon, encoding="utf-8") as fh:
            return toric.LatticePolygon.from_json(fh.read())
    raise CrepantError("no polygon selected")


def _add_polygon_flags(p):
    p.add_argument("--square", action="store_true")
    p.add_argument("--triangle", action="store_true")
    p.add_argument("--triangle2", action="store_true",
                   help="the (0,0),(2,0),(0,2) triangle")
    p.add_argument("--p2", action="store_true")
    p.add_argument("--trapezoid", metavar="N0,N1")
    p.add_argument("--zn", type=int, metavar="N",
                   help="the (1,0),(0,1),(-N,-N) triangle")
    p.add_argument("--polygon", metavar="FILE", help="polygon JSON file")


def cmd_mckay(args) -> int:
    act = mckay.parse_action(args.action)
    q = mckay.mckay_quiver(act)
    w = mckay.mckay_superpotential(act) if args.potential else None
    _emit(quiver.quiver_to_json(q, w))
    return 0


def cmd_relations(args) -> int:
    q, w = _load_quiver(args)
    if w is None:
        raise CrepantError("the selected quiver carries no potential")
    rels = quiver.relations_from_potential(q, w)
    if args.json:
        data = [[{"coeff": c, "path": list(p.arrows), "source": p.source,
                  "target": p.target} for p, c in r.sorted_terms()]
                for r in rels]
        _emit(json.dumps(data, sort_keys=True, indent=2))
    else:
        for r in rels:
            _emit(str(r))
    return 0


def cmd_frame(args) -> int:
    q, w = _load_quiver(args)
    framed = quiver.frame(q, w or quiver.Superpotential(), args.v0)
    data = json.loads(quiver.quiver_to_json(framed.quiver, framed.potential))
    data["framing_vertex"] = framed.framing_vertex
    data["framing_arrow"] = framed.framing_arrow
    data["base_vertex"] = framed.base_vertex
    _emit(json.dumps(data, sort_keys=True, indent=2))
    return 0


def cmd_stability(args) -> int:
    q, w = _load_quiver(args)
    framed = None
    if args.framed_v0 is not None:
        framed = quiver.frame(q, w or quiver.Superpotential(), args.framed_v0)
        q = framed.quiver
    with open(args.rep, encoding="utf-8") as fh:
        rep = reps.rep_from_json(fh.read(), q, framed=framed)
    theta = _parse_theta(args.theta)
    report = reps.is_semistable(rep, theta)
    _emit(report.to_json())
    return 0


def _cartan_from_args(args) -> roots.CartanMatrix:
    if args.cartan:
        rows = json.loads(args.cartan)
        names = tuple(str(i) for i in range(len(rows)))
        return roots.CartanMatrix(names, tuple(tuple(r) for r in rows))
    q, _ = _load_quiver(args)
    return roots.cartan_matrix(q)


def cmd_roots(args) -> int:
    cartan = _cartan_from_args(args)
    out = roots.positive_roots(cartan, args.height)
    if args.json:
        data = [{"vector": list(r.vector), "kind": r.kind} for r in out]
        _emit(json.dumps(data, sort_keys=True, indent=2))
    else:
        for r in out:
            _emit(" ".join(map(str, r.vector)) + "\t" + r.kind)
    return 0


def cmd_walls(args) -> int:
    cartan = _cartan_from_args(args)
    rts = roots.positive_roots(cartan, args.height)
    theta1 = [Fraction(x) for x in args.theta1.split(",")]
    theta2 = [Fraction(x) for x in args.theta2.split(",")]
    report = roots.walls_between(theta1, theta2, rts)
    data = {
        "separating": [{"vector": list(r.vector), "kind": r.kind}
                       for r in report.separating],
        "on_wall": [{"vector": list(r.vector), "kind": r.kind}
                    for r in report.on_wall],
    }
    _emit(json.dumps(data, sort_keys=True, indent=2))
    return 0


def cmd_ncdt(args) -> int:
    if args.family in ("c3", "conifold"):
        family = crystal.family_for(args.family)
    elif args.family.startswith("mckay:"):
        family = crystal.family_for(mckay.parse_action(args.family[6:]))
    else:
        raise CrepantError(f"unknown family {args.family!r}")
    series = crystal.ncdt_series(family, args.order, sign=args.sign)
    if args.json:
        data = {"vars": list(series.vars), "order": series.order,
                "terms": [{"exponents": list(e), "coeff": c}
                          for e, c in series.sorted_terms()]}
        _emit(json.dumps(data, sort_keys=True, indent=2))
    else:
        _emit(series.to_text())
    return 0


def cmd_triangulate(args) -> int:
    polygon = _polygon_from_args(args)
    tris = toric.unit_triangulations(polygon)
    if args.json:
        data = {"count": len(tris),
                "triangulations": [[[list(p) for p in t]
                                    for t in tri.sorted_triangles()]
                                   for tri in tris]}
        _emit(json.dumps(data, sort_keys=True, indent=2))
    else:
        _emit(f"{len(tris)} triangulations")
        for i, tri in enumerate(tris):
            body = "; ".join(",".join(f"({p[0]},{p[1]})" for p in t)
                             for t in tri.sorted_triangles())
            _emit(f"[{i}] {body}")
    return 0


def cmd_flops(args) -> int:
    polygon = _polygon_from_args(args)
    tris = toric.unit_triangulations(polygon)
    edges = [(i, j) for i in range(len(tris)) for j in range(i + 1, len(tris))
             if toric.flop_adjacent(tris[i], tris[j])]
    _emit(json.dumps({"triangulations": len(tris),
                      "flops": [list(e) for e in edges]},
                     sort_keys=True, indent=2))
    return 0


def cmd_web(args) -> int:
    polygon = _polygon_from_args(args)
    tris = toric.unit_triangulations(polygon)
    _emit(toric.dual_web(tris[args.index]).to_json())
    return 0


def cmd_gw(args) -> int:
    polygon = _polygon_from_args(args)
    tris = toric.unit_triangulations(polygon)
    web = toric.dual_web(tris[args.index])
    series = gw_partition_function(web, args.order, t_cutoff=args.t_order)
    _emit(series.to_text())
    return 0


def cmd_gv(args) -> int:
    polygon = _polygon_from_args(args)
    tris = toric.unit_triangulations(polygon)
    web = toric.dual_web(tris[args.index])
    series = gw_partition_function(web, args.order, t_cutoff=args.t_order)
    table = gv_extract(series, genus_cap=args.genus)
    if args.json:
        data = [{"genus": g, "degree": d, "n": int(v)}
                for (g, d), v in table.rows()]
        _emit(json.dumps(data, sort_keys=True, indent=2))
    else:
        _emit(table.to_text())
    return 0


def cmd_verify_geometry(args) -> int:
    overrides = {}
    for item in args.override or ():
        key, _, value = item.partition("=")
        if not _:
            raise CrepantError(f"bad override {item!r}; use key=expression")
        overrides[key] = value
    geo = geometry.builtin_geometry(args.geometry, k=args.k, n=args.n,
                                    overrides=overrides or None)
    reports = [geometry.verify_transition(geo, args.trials, seed=args.seed,
                                          jobs=args.jobs),
               geometry.verify_contraction(geo, args.trials, seed=args.seed,
                                           jobs=args.jobs)]
    if geo.action is not None:
        reports.append(geometry.verify_equivariance(geo, args.trials,
                                                    seed=args.seed,
                                                    jobs=args.jobs))
    merged = geometry.VerificationReport(
        geo.label(), args.seed,
        tuple(r for rep in reports for r in rep.identities))
    _emit(merged.to_json())
    return 0 if merged.holds() or args.report_only else 1


def cmd_compare(args) -> int:
    geom = args.geometry
    if geom.startswith("mckay:"):
        geom = mckay.parse_action(geom[6:])
    theta = _parse_theta(args.theta)
    vmap = _parse_variable_map(args.map) if args.map else None
    sheet = run_compare(geom, args.order, theta, variable_map=vmap,
                                t_cutoff=args.t_order, sign=args.sign,
                                wall_radius=args.wall_radius)
    _emit(sheet.to_json() if args.json else sheet.to_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crepant",
        description="quivers with potentials, crystal counting, and the"
                    " topological vertex")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for all sampling (default 0)")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for trial evaluation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mckay", help="McKay quiver of a cyclic action")
    p.add_argument("action", help='descriptor "n:w1,w2,w3"')
    p.add_argument("--potential", action="store_true")
    p.set_defaults(func=cmd_mckay)

    def quiver_source(p):
        p.add_argument("--builtin", choices=["conifold", "c3", "p2", "laufer"])
        p.add_argument("--mckay", metavar="N:W1,W2,W3")
        p.add_argument("--quiver", metavar="FILE")
        p.add_argument("--n", type=int, help="parameter for the laufer quiver")

    p = sub.add_parser("relations", help="cyclic-derivative relations")
    quiver_source(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("frame", help="attach a framing vertex")
    quiver_source(p)
    p.add_argument("--v0", required=True)
    p.set_defaults(func=cmd_frame)

    p = sub.add_parser("stability", help="classify a monomial representation")
    quiver_source(p)
    p.add_argument("--rep", required=True, metavar="FILE")
    p.add_argument("--theta", required=True, metavar="V=Q,...")
    p.add_argument("--framed-v0", metavar="V0",
                   help="frame the quiver at V0 before reading the"
                        " representation; theta must then include the"
                        " framing vertex")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("roots", help="positive roots of a Cartan matrix")
    quiver_source(p)
    p.add_argument("--cartan", metavar="JSON_ROWS")
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("walls", help="walls separating two parameters")
    quiver_source(p)
    p.add_argument("--cartan", metavar="JSON_ROWS")
    p.add_argument("--height", type=int, default=6)
    p.add_argument("--theta1", required=True)
    p.add_argument("--theta2", required=True)
    p.set_defaults(func=cmd_walls)

    p = sub.add_parser("ncdt", help="crystal partition function")
    p.add_argument("family", help='"c3", "conifold", or "mckay:n:w1,w2,w3"')
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--sign", choices=["unsigned", "dimension"],
                   default="unsigned")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ncdt)

    p = sub.add_parser("triangulate", help="unit triangulations of a polygon")
    _add_polygon_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_triangulate)

    p = sub.add_parser("flops", help="flop adjacency between triangulations")
    _add_polygon_flags(p)
    p.set_defaults(func=cmd_flops)

    p = sub.add_parser("web", help="dual web of a triangulation")
    _add_polygon_flags(p)
    p.add_argument("--index", type=int, default=0)
    p.set_defaults(func=cmd_web)

    p = sub.add_parser("gw", help="vertex partition function of a web")
    _add_polygon_flags(p)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--order", type=int, required=True, help="Q truncation")
    p.add_argument("--t-order", type=int, default=16)
    p.set_defaults(func=cmd_gw)

    p = sub.add_parser("gv", help="Gopakumar-Vafa extraction")
    _add_polygon_flags(p)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--t-order", type=int, default=24)
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gv)

    p = sub.add_parser("verify-geometry", help="exact chart verification")
    p.add_argument("geometry", choices=["conifold", "laufer1", "laufer2"])
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--override", action="append", metavar="KEY=EXPR")
    p.add_argument("--report-only", action="store_true",
                   help="exit 0 even when identities fail")
    p.set_defaults(func=cmd_verify_geometry)

    p = sub.add_parser("compare", help="crystal versus vertex sheet")
    p.add_argument("geometry", help='"c3", "conifold", or "mckay:n:w1,w2,w3"')
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--theta", required=True, metavar="V=Q,...")
    p.add_argument("--map", metavar="q0=-Q0*t^2,...")
    p.add_argument("--t-order", type=int, default=12)
    p.add_argument("--sign", choices=["unsigned", "dimension"],
                   default="unsigned")
    p.add_argument("--wall-radius", type=int, default=5)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CrepantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
