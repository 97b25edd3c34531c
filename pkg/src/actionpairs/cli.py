"""Command-line front end: batch verification with machine-readable reports.

Exit codes: 0 pass, 1 verification failure, 2 bad input, 3 enumeration
budget exceeded.  Reports are schema "v1" and embed the run configuration,
including the seed and the node cap (overridable through the
ACTIONPAIR_NODE_CAP environment variable).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import fmonoid, indalg, presentations, registry
from .actionpair import (OMEGA_RULES, check_pair_from_plus, classify_proper,
                         embed_central, omega_check, proper_cover, semidirect,
                         theta_and_friends)
from .ptrans import BadParams

SCHEMA = "v1"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_BOUND = 3

PRESENTATION_FAMILIES = presentations.FAMILIES
ALGEBRA_INSTANCES = indalg.BUILTIN_ALGEBRAS


def _config(args) -> dict:
    cap = os.environ.get("ACTIONPAIR_NODE_CAP")
    if cap:
        fmonoid.set_node_cap(int(cap))
    if getattr(args, "bound", None):
        fmonoid.set_node_cap(args.bound)
    return {
        "node_cap": fmonoid.NODE_CAP,
        "table_cap": fmonoid.FULL_TABLE_CAP,
        "seed": getattr(args, "seed", 0),
        "bound": getattr(args, "bound", None),
    }


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    def walk(d, indent=0):
        for k, v in d.items():
            if isinstance(v, dict):
                print(" " * indent + f"{k}:")
                walk(v, indent + 2)
            else:
                print(" " * indent + f"{k}: {v}")
    walk(report)


def _algebra(name: str):
    if name.endswith(".json"):
        return registry.load_custom_algebra(name)
    return indalg.builtin_algebra(name)


def cmd_verify_presentation(args) -> int:
    t0 = time.time()
    cfg = _config(args)
    report = {"schema": SCHEMA, "command": "verify-presentation",
              "config": cfg, "family": args.family}
    try:
        kwargs = {}
        if args.family in ("En", "Gn", "Tn"):
            if args.n is None:
                raise ValueError("--n is required")
            kwargs["n"] = args.n
        elif args.family in ("Mn", "M0n", "MwrSingTn", "MwrSingPTn",
                             "MwrPTn", "MwrGn", "MwrTn", "MwrIn"):
            if args.n is None:
                raise ValueError("--n is required")
            kwargs["n"] = args.n
            kwargs["base"] = registry.monoid_table(args.monoid or "c1")
        elif args.family in ("SubA", "SubA_enlarged"):
            kwargs["algebra"] = _algebra(args.instance or "fl93")
        elif args.family in ("PX_truncated", "LX_truncated"):
            kwargs["alphabet"] = args.alphabet
            kwargs["length"] = args.length
        bundle = presentations.build_catalog(args.family, **kwargs)
    except (KeyError, ValueError, BadParams) as e:
        report["error"] = str(e)
        _emit(report, args.format)
        return EXIT_BAD_INPUT

    report["provenance"] = bundle.provenance
    report["letters"] = len(bundle.pres.alphabet)
    report["relations"] = len(bundle.pres.relations)
    if args.show_relations:
        report["relation_list"] = [
            [" ".join(bundle.pres.alphabet[i] for i in u) or "1",
             " ".join(bundle.pres.alphabet[i] for i in v) or "1"]
            for u, v in bundle.pres.relations]

    if bundle.target is None:
        ok = presentations.lrm_model_check(bundle)
        report["model_check"] = ok
        report["elapsed"] = round(time.time() - t0, 3)
        _emit(report, args.format)
        return EXIT_PASS if ok else EXIT_FAIL

    try:
        ver = bundle.verify()
    except fmonoid.BoundExceeded as e:
        report["error"] = f"enumeration budget exhausted ({e.nodes} nodes)"
        _emit(report, args.format)
        return EXIT_BOUND
    report["target_size"] = bundle.target.size
    report["verdicts"] = ver.to_dict()
    report["elapsed"] = round(time.time() - t0, 3)
    _emit(report, args.format)
    if ver.inconclusive:
        return EXIT_BOUND
    return EXIT_PASS if ver.ok else EXIT_FAIL


def _normalize_kind(spec: str, kinds, n: int) -> str:
    """Accept bare kinds, degree-suffixed forms (E2) and generic n-suffixed
    forms (Tn); a numeric suffix must agree with the ambient degree."""
    if spec in kinds:
        return spec
    stem = spec.rstrip("0123456789")
    digits = spec[len(stem):]
    if digits and int(digits) != n:
        raise ValueError(f"{spec!r} disagrees with the ambient degree {n}")
    if stem in kinds:
        return stem
    if stem.endswith("n") and stem[:-1] in kinds:
        return stem[:-1]
    raise ValueError(f"unknown kind {spec!r} (choose from {', '.join(kinds)})")


def _resolve_pair(args):
    base = args.M or "c1"
    amb_name = args.ambient
    for prefix in ("MwrPT", "PT"):
        if amb_name.startswith(prefix):
            n = int(amb_name[len(prefix):])
            if prefix == "PT" and args.M:
                raise ValueError("plain PT ambients take no base monoid")
            break
    else:
        raise ValueError(f"unknown ambient {amb_name!r} (use PTn or MwrPTn)")
    u_kind = _normalize_kind(args.U, registry.U_KINDS, n)
    s_kind = _normalize_kind(args.S, registry.S_KINDS, n)
    return registry.catalogue_pair(base, n, u_kind, s_kind), n


def cmd_classify_pair(args) -> int:
    t0 = time.time()
    cfg = _config(args)
    report = {"schema": SCHEMA, "command": "classify-pair", "config": cfg,
              "ambient": args.ambient, "U": args.U, "S": args.S}
    try:
        ctx, n = _resolve_pair(args)
    except (KeyError, ValueError) as e:
        report["error"] = str(e)
        _emit(report, args.format)
        return EXIT_BAD_INPUT
    try:
        rep, act = check_pair_from_plus(ctx)
        if act is not None and rep.weak:
            classify_proper(ctx, act, rep)
            sd = semidirect(ctx, act)
            rep.mid_identity_ok = sd.mid_identity_ok
            th = theta_and_friends(ctx, act, sd)
            report["theta_classes"] = len(th.theta.classes())
            report["product_size"] = len(ctx.product_set())
            if args.omega:
                res = omega_check(ctx, act, sd, th, args.omega)
                report["omega"] = {"rule": res.rule,
                                   "hypotheses_ok": res.hypotheses_ok,
                                   "matches_theta": res.matches_theta,
                                   "failures": res.failures}
            if args.cover:
                cov = proper_cover(ctx, act,
                                   ambient_plus=registry.ambient_plus_map(ctx.m))
                report["cover"] = {
                    "carrier_size": cov.cover_table.size,
                    "sigma_trivial": cov.sigma_trivial,
                    "proper": cov.proper,
                    "surjective": cov.surjective,
                    "projection_separating": cov.projection_separating,
                }
            if args.embed:
                emb = embed_central(ctx, act)
                report["embed"] = {
                    "hypotheses_ok": emb.hypotheses_ok,
                    "injective": emb.injective,
                    "homomorphic": emb.homomorphic,
                    "failures": emb.failures,
                }
        report["pair"] = rep.to_dict(ctx)
    except fmonoid.SizeBoundExceeded as e:
        report["error"] = str(e)
        _emit(report, args.format)
        return EXIT_BOUND
    report["elapsed"] = round(time.time() - t0, 3)
    _emit(report, args.format)
    return EXIT_PASS if rep.weak else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="actionpairs",
                                description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    vp = sub.add_parser("verify-presentation",
                        help="build a catalogued presentation and verify it")
    vp.add_argument("--family", required=True,
                    help=f"one of {', '.join(PRESENTATION_FAMILIES)}")
    vp.add_argument("--n", type=int)
    vp.add_argument("--monoid", help="base monoid name or CayleyTable .json path")
    vp.add_argument("--instance",
                    help=f"algebra instance ({', '.join(ALGEBRA_INSTANCES)}) "
                         "or a .json algebra path")
    vp.add_argument("--alphabet", default="xy")
    vp.add_argument("--length", type=int, default=3)
    vp.add_argument("--bound", type=int,
                    help="override the enumeration node budget")
    vp.add_argument("--show-relations", action="store_true")
    vp.add_argument("--format", choices=("json", "text"), default="text")
    vp.add_argument("--seed", type=int, default=0)
    vp.set_defaults(func=cmd_verify_presentation)

    cp = sub.add_parser("classify-pair",
                        help="classify a catalogued pair inside a wreath ambient")
    cp.add_argument("--ambient", required=True, help="PTn or MwrPTn")
    cp.add_argument("--M", help="base monoid for MwrPT ambients")
    cp.add_argument("--U", required=True,
                    help="E, SingE, M0n or Mn (optionally suffixed by n)")
    cp.add_argument("--S", required=True,
                    help=f"one of {', '.join(registry.S_KINDS)}")
    cp.add_argument("--cover", action="store_true")
    cp.add_argument("--embed", action="store_true")
    cp.add_argument("--omega", choices=list(OMEGA_RULES))
    cp.add_argument("--format", choices=("json", "text"), default="text")
    cp.add_argument("--seed", type=int, default=0)
    cp.set_defaults(func=cmd_classify_pair)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as e:          # surface anything unexpected as bad input
        print(json.dumps({"schema": SCHEMA, "error": str(e)}))
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
