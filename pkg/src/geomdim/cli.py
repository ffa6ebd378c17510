"""Command-line interface.

Exit codes (stable contract): 0 success / affirmative verdict; 1 negative
verdict (not resolving, certificate refuted, check failed); 2 usage or module
error; 3 search budget exhausted.  All reports are deterministic key=value
lines, independent of the thread count.
"""

from __future__ import annotations

import argparse
import sys

from . import blocking as blocking_mod
from . import bounds as bounds_mod
from . import constructions, formats, geometry, metric, search


def _build_family(family: str, q: int | None, s: int | None):
    """Returns (inc, ctx_or_none, kind_or_none) for a generatable family."""
    if family == "grid":
        if s is None:
            raise ValueError("--s is required for the grid family")
        return geometry.grid_gq(s), None, "gq"
    if q is None:
        raise ValueError(f"--q is required for family {family!r}")
    if family == "pg2":
        inc, ctx = geometry.projective_plane(q)
        return inc, ctx, "projective"
    if family == "ag2":
        inc, ctx = geometry.affine_plane(q)
        return inc, ctx, "affine"
    if family == "bg2":
        inc, ctx = geometry.biaffine_plane(q)
        return inc, ctx, "biaffine"
    if family == "pg3":
        return geometry.pg3(q), None, None
    if family == "wq":
        return geometry.w_q(q).wq, None, "gq"
    if family == "q4":
        return geometry.dual(geometry.w_q(q).wq), None, "gq"
    raise ValueError(f"unknown family {family!r}")


def _load_structure(args) -> formats.LoadedStructure:
    if getattr(args, "structure", None):
        with open(args.structure, encoding="ascii") as fh:
            return formats.load_incidence(fh.read())
    inc, ctx, kind = _build_family(args.family, getattr(args, "q", None), getattr(args, "s", None))
    return formats.LoadedStructure(inc=inc, kind=kind, ctx=ctx)


def _emit(pairs) -> None:
    for k, v in pairs:
        if isinstance(v, bool):
            v = "true" if v else "false"
        print(f"{k}={v}")


def _set_to_str(inc, S: metric.VertexSet) -> str:
    return ",".join([f"P{i}" for i in S.point_part] + [f"L{j}" for j in S.line_part])


def cmd_gen(args) -> int:
    inc, ctx, kind = _build_family(args.family, args.q, args.s)
    text = formats.dump_incidence(inc, kind=kind, ctx=ctx)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    loaded = _load_structure(args)
    with open(args.set, encoding="ascii") as fh:
        S = formats.load_set(fh.read())
    inc = loaded.inc
    results = {}
    if args.mode in ("generic", "both"):
        results["generic"] = metric.is_resolving(inc, S, threads=args.threads)
    if args.mode in ("conditions", "both"):
        if loaded.ctx is None or loaded.ctx.kind not in ("projective", "affine", "biaffine"):
            print("error: condition verification needs an annotated plane", file=sys.stderr)
            return 2
        from .characterizations import verify_conditions

        results["conditions"] = verify_conditions(loaded.ctx, S)
    verdicts = []
    pairs = []
    if "generic" in results:
        v = results["generic"]
        verdicts.append(bool(v))
        pairs.append(("generic_resolving", bool(v)))
        if not v:
            u, w = v.witness
            pairs.append(("witness", f"{metric.vertex_name(inc, u)},{metric.vertex_name(inc, w)}"))
    if "conditions" in results:
        rep = results["conditions"]
        verdicts.append(rep.all_ok)
        pairs.append(("conditions_resolving", rep.all_ok))
        if not rep.all_ok:
            name, check = rep.first_failure()
            pairs.append(("failed_condition", name))
            pairs.append(("condition_witness", str(check.witness)))
    _emit(pairs)
    if args.mode == "both" and verdicts[0] != verdicts[1]:
        print("error: generic and condition verdicts disagree", file=sys.stderr)
        return 2
    return 0 if all(verdicts) else 1


def cmd_construct(args) -> int:
    name, q = args.name, args.q
    pairs = [("name", name)]
    if name == "affine-basis":
        inc, ctx = geometry.affine_plane(q)
        S = constructions.affine_basis(q, args.variant, ctx)
        pairs += [("q", q), ("variant", args.variant)]
    elif name == "lift-affine":
        inc, ctx = geometry.affine_plane(q)
        S0 = constructions.affine_basis(q, args.variant, ctx)
        S = constructions.lift_affine(ctx, S0)
        inc = ctx.ambient
        pairs += [("q", q), ("variant", args.variant)]
    elif name == "biaffine-3q6":
        inc, ctx = geometry.biaffine_plane(q)
        S = constructions.biaffine_3q6(q, args.t_size, ctx)
        pairs += [("q", q), ("t_size", args.t_size)]
    elif name == "grid":
        inc = geometry.grid_gq(args.s)
        S = constructions.grid_resolving(args.s, inc)
        pairs += [("s", args.s)]
    elif name == "wq-point-srs":
        space = geometry.w_q(q)
        inc = space.wq
        S = constructions.wq_point_srs(q, space)
        pairs += [("q", q)]
    elif name == "gq-line-srs":
        space = geometry.w_q(q)
        inc = geometry.dual(space.wq)
        S = constructions.gq_line_srs_odd(q, space)
        pairs += [("q", q)]
    elif name == "wq-full":
        space = geometry.w_q(q)
        inc = space.wq
        S = constructions.wq_resolving(q, space)
        pairs += [("q", q)]
    else:
        raise ValueError(f"unknown construction {name!r}")
    pairs += [
        ("size", len(S)),
        ("points", len(S.point_part)),
        ("lines", len(S.line_part)),
        ("verified", True),
    ]
    _emit(pairs)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(formats.dump_set(S))
    return 0


def cmd_mu(args) -> int:
    loaded = _load_structure(args)
    res = search.exact_mu(
        loaded.inc,
        max_k=args.max_k,
        budget_seconds=args.budget_seconds,
        budget_nodes=args.budget_nodes,
        threads=args.threads,
    )
    if res.mu is None:
        _emit([("mu", "unknown"), ("lower_bound", res.lower_bound), ("exhausted", res.exhausted)])
        return 3 if res.exhausted else 0
    _emit([("mu", res.mu), ("basis", _set_to_str(loaded.inc, res.basis))])
    return 0


def cmd_certify(args) -> int:
    loaded = _load_structure(args)
    try:
        ok = search.certify_lower(
            loaded.inc,
            args.k,
            budget_seconds=args.budget_seconds,
            budget_nodes=args.budget_nodes,
            threads=args.threads,
        )
    except search.BudgetExceededError:
        _emit([("k", args.k), ("certified", "unknown")])
        return 3
    _emit([("k", args.k), ("certified", ok)])
    return 0 if ok else 1


def cmd_bounds(args) -> int:
    entry = bounds_mod.bounds_for(args.family, args.q)
    pairs = [("family", entry.family), ("n", entry.n)]
    for key in ("lower", "upper", "exact"):
        val = getattr(entry, key)
        if val is not None:
            pairs.append((key, val))
    for cond in entry.conditions:
        pairs.append(("condition", cond))
    for prov in entry.provenance:
        pairs.append(("provenance", prov))
    _emit(pairs)
    return 0


def cmd_blocking(args) -> int:
    if args.blocking_cmd == "tau":
        inc, ctx = geometry.affine_plane(args.q)
        tau, witness = blocking_mod.min_blocking(ctx)
        _emit([("q", args.q), ("tau", tau), ("witness", ",".join(f"P{p}" for p in witness))])
        return 0
    loaded = _load_structure(args)
    with open(args.set, encoding="ascii") as fh:
        S = formats.load_set(fh.read())
    if S.line_part:
        print("error: blocking analysis takes a point set", file=sys.stderr)
        return 2
    pts = S.point_part
    if args.blocking_cmd == "extend":
        ext = blocking_mod.k_extendable(loaded.inc, pts, args.k)
        if ext is None:
            _emit([("k", args.k), ("extendable", False)])
            return 1
        _emit([("k", args.k), ("extendable", True), ("extender", ",".join(f"P{p}" for p in ext))])
        return 0
    if args.blocking_cmd == "metsch":
        rep = blocking_mod.metsch_check(loaded.inc, pts)
        _emit([("ok", rep.ok), ("failures", len(rep.failures))])
        return 0 if rep.ok else 1
    if args.blocking_cmd == "tangents":
        rep = blocking_mod.tangent_bound_check(loaded.inc, pts)
        _emit([("ok", rep.ok), ("failures", len(rep.failures))])
        return 0 if rep.ok else 1
    raise ValueError(f"unknown blocking subcommand {args.blocking_cmd!r}")


def _add_structure_args(p, families=("pg2", "ag2", "bg2", "pg3", "wq", "q4", "grid")):
    p.add_argument("--structure", help="path to an 'incidence v1' file")
    p.add_argument("--family", choices=families, help="generate the structure instead")
    p.add_argument("--q", type=int)
    p.add_argument("--s", type=int)


def _add_budget_args(p):
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="geomdim", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="write a structure in 'incidence v1' format")
    p.add_argument("--family", required=True, choices=("pg2", "ag2", "bg2", "pg3", "wq", "q4", "grid"))
    p.add_argument("--q", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check whether a set file resolves a structure")
    _add_structure_args(p)
    p.add_argument("--set", required=True)
    p.add_argument("--mode", choices=("generic", "conditions", "both"), default="generic")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build one of the explicit resolving sets")
    p.add_argument(
        "--name",
        required=True,
        choices=(
            "affine-basis",
            "lift-affine",
            "biaffine-3q6",
            "grid",
            "wq-point-srs",
            "gq-line-srs",
            "wq-full",
        ),
    )
    p.add_argument("--q", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--variant", type=int, default=1)
    p.add_argument("--t-size", type=int, default=1, dest="t_size")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("mu", help="exact metric dimension by pruned search")
    _add_structure_args(p)
    p.add_argument("--max-k", type=int, default=None)
    _add_budget_args(p)
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("certify", help="certify that no k-subset resolves")
    _add_structure_args(p)
    p.add_argument("--k", type=int, required=True)
    _add_budget_args(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("bounds", help="query the bounds table")
    p.add_argument("--family", required=True, choices=bounds_mod.FAMILIES)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("blocking", help="blocking-set analysis")
    bsub = p.add_subparsers(dest="blocking_cmd", required=True)
    pt = bsub.add_parser("tau", help="minimum affine blocking set (q <= 4)")
    pt.add_argument("--q", type=int, required=True)
    for name in ("extend", "metsch", "tangents"):
        pb = bsub.add_parser(name)
        _add_structure_args(pb)
        pb.add_argument("--set", required=True)
        if name == "extend":
            pb.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_blocking)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except blocking_mod.CombinatorialBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, constructions.ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
