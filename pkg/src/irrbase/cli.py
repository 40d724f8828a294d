"""Command-line surface: build chains, run the oracle, verify certificates, report bounds.

Exit codes are a stable contract: 0 success/verified, 1 mathematical
verification failure, 2 usage or limit error.  JSON output is byte-stable
for identical inputs.  No environment variable affects results; IRRBASE_VERBOSE
only turns on progress chatter on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import bounds as bounds_mod
from .affine import build_agl, affine_chain
from .certificate import CertificateFormatError, ChainCertificate
from .group import (
    LimitExceeded,
    PermutationGroup,
    alternating_group,
    intersect,
    read_generator_file,
    symmetric_group,
)
from .oracle import OracleLimits, build_coset_action, mibs, verify_certificate
from .wreath import build_wreath, wreath_chain

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2


def _log(msg: str) -> None:
    if os.environ.get("IRRBASE_VERBOSE"):
        print(msg, file=sys.stderr)


class UsageError(Exception):
    pass


def _write_output(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cert_text_table(cert: ChainCertificate) -> str:
    lines = [
        f"degree        {cert.degree}",
        f"ambient       {cert.ambient}",
        f"subgroup      {cert.family} {json.dumps(dict(sorted(cert.params.items())))}",
        f"claimed_length {cert.claimed_length}",
        f"{'level':>5}  {'#conjugators':>12}  order",
    ]
    for i, lvl in enumerate(cert.levels):
        lines.append(f"{i:>5}  {len(lvl.conjugators):>12}  {lvl.order}")
    return "\n".join(lines) + "\n"


def _build_subgroup(args, ambient: str):
    """Returns (G, H, family, params, degree) for the oracle subcommands."""
    family = args.subgroup
    if family == "natural":
        if args.n is None:
            raise UsageError("--subgroup natural requires --n")
        n = args.n
        if n < 3:
            raise UsageError("natural action needs n >= 3")
        g = symmetric_group(n) if ambient == "S" else alternating_group(n)
        h = g.point_stabilizer(n)
        return g, h, "natural", {"n": n}, n
    if family == "agl":
        if args.p is None or args.d is None:
            raise UsageError("--subgroup agl requires --p and --d")
        ctx = build_agl(args.p, args.d)
        n = ctx.n
        g = symmetric_group(n) if ambient == "S" else alternating_group(n)
        h = ctx.H if ambient == "S" else intersect(ctx.H, g, args.limit_enum)
        return g, h, "agl", {"p": args.p, "d": args.d}, n
    if family == "wreath":
        if args.m is None or args.k is None:
            raise UsageError("--subgroup wreath requires --m and --k")
        ctx = build_wreath(args.m, args.k)
        n = ctx.n
        g = symmetric_group(n) if ambient == "S" else alternating_group(n)
        h = ctx.M if ambient == "S" else intersect(ctx.M, g, args.limit_enum)
        return g, h, "wreath", {"m": args.m, "k": args.k}, n
    if family == "explicit":
        if not args.gens_file:
            raise UsageError("--subgroup explicit requires --gens-file")
        with open(args.gens_file) as fh:
            degree, gens = read_generator_file(fh.read())
        g = symmetric_group(degree) if ambient == "S" else alternating_group(degree)
        h = PermutationGroup(gens, degree)
        if not h.is_subgroup_of(g):
            raise UsageError("supplied generators do not lie in the ambient group")
        return g, h, "explicit", {}, degree
    raise UsageError(f"unknown subgroup family {family!r}")


def cmd_chain(args) -> int:
    if args.family == "affine":
        if args.p is None or args.d is None:
            raise UsageError("--family affine requires --p and --d")
        if args.p == 2:
            raise UsageError("odd p required")
        ctx = build_agl(args.p, args.d)
        if ctx.n < 7:
            raise UsageError(f"p^d = {ctx.n} < 7 is out of range")
        _log(f"building affine chain for p={args.p}, d={args.d}")
        cert = affine_chain(ctx, limit=args.limit_enum)
        h = ctx.H
    elif args.family == "wreath":
        if args.m is None or args.k is None:
            raise UsageError("--family wreath requires --m and --k")
        ctx = build_wreath(args.m, args.k)
        _log(f"building wreath chain for m={args.m}, k={args.k}")
        cert = wreath_chain(ctx, limit=args.limit_enum)
        h = ctx.M
    else:
        raise UsageError(f"unknown chain family {args.family!r}")

    report = verify_certificate(cert, h, limit=args.limit_enum)
    if not report.ok:
        print(report.summary(), file=sys.stderr)
        print("internal error: built certificate failed self-verification", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    if args.format == "json":
        _write_output(cert.to_json(), args.out)
    else:
        _write_output(_cert_text_table(cert), args.out)
    _log(f"certificate of length {cert.claimed_length} written")
    return EXIT_OK


def cmd_oracle(args) -> int:
    ambient = args.ambient
    g, h, family, params, degree = _build_subgroup(args, ambient)
    t, rem = divmod(g.order(), h.order())
    if rem != 0:
        raise UsageError("subgroup order does not divide group order")
    limits = OracleLimits(
        max_index=args.limit_t, max_enum=args.limit_enum, max_memo=args.limit_memo
    )
    if t > limits.max_index:
        print(
            f"refused: coset index {g.order()}/{h.order()} = {t} exceeds "
            f"limit --limit-t {limits.max_index}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    action = build_coset_action(g, h, limit_t=limits.max_index, limit_enum=limits.max_enum)
    value, cert = mibs(action, limits=limits, prune=not args.no_prune, ambient=ambient)
    cert.family = family
    cert.params = params
    result = {
        "ambient": ambient,
        "degree": degree,
        "subgroup": {"family": family, "params": dict(sorted(params.items()))},
        "index": str(t),
        "mibs": value,
    }
    if args.format == "json":
        print(json.dumps(result, indent=2))
    else:
        print(f"mibs = {value}  (ambient {ambient}, degree {degree}, index {t})")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(cert.to_json())
        _log(f"witness certificate written to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.cert) as fh:
            cert = ChainCertificate.from_json(fh.read())
    except OSError as e:
        print(f"cannot read certificate: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CertificateFormatError as e:
        print(f"malformed certificate: {e}", file=sys.stderr)
        return EXIT_USAGE
    h = PermutationGroup(cert.generators, cert.degree)
    if cert.family == "agl":
        ctx = build_agl(cert.params["p"], cert.params["d"])
        expected = ctx.H.order() if cert.ambient == "S" else ctx.H.order() // 2
        if h.order() != expected:
            print(
                f"subgroup order {h.order()} does not match the affine family "
                f"order {expected}",
                file=sys.stderr,
            )
            return EXIT_VERIFY_FAIL
    elif cert.family == "wreath":
        m, k = cert.params["m"], cert.params["k"]
        expected = math.factorial(m) ** k * math.factorial(k)
        if cert.ambient == "A":
            expected //= 2
        if h.order() != expected:
            print(
                f"subgroup order {h.order()} does not match the wreath family "
                f"order {expected}",
                file=sys.stderr,
            )
            return EXIT_VERIFY_FAIL
    report = verify_certificate(cert, h, limit=args.limit_enum)
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_VERIFY_FAIL


def cmd_bounds(args) -> int:
    if args.lemma52:
        if args.order_h is None:
            raise UsageError("--lemma52 requires --order-h")
        rep = bounds_mod.index_growth_check(
            args.n, args.order_h, require_proof_range=args.n > 100
        )
        result = {
            "n": rep.n,
            "order_h": str(rep.order_h),
            "log2_t": rep.log_t,
            "log2_log2_t": rep.log_log_t,
            "mode": rep.mode,
            "milestone_ok": rep.milestone_ok,
            "loglog_ok": rep.loglog_ok,
            "ratio_ok": rep.ratio_ok,
            "constants": bounds_mod.CONSTANTS,
        }
        if rep.mode == "table":
            result["note"] = (
                "constants checked only on this instance; the range n <= 100 "
                "relies on external enumeration (partial check)"
            )
        if args.format == "json":
            print(json.dumps(result, indent=2))
        else:
            for k, v in result.items():
                print(f"{k}: {v}")
        ok = all(v for v in (rep.milestone_ok, rep.loglog_ok, rep.ratio_ok) if v is not None)
        return EXIT_OK if ok else EXIT_VERIFY_FAIL

    n = args.n
    if n is None:
        raise UsageError("bounds requires --n")
    if n < 7:
        raise UsageError(f"these bounds require n >= 7, got {n}")
    result = {
        "n": n,
        "binary_weight": bounds_mod.binary_weight(n),
        "epsilon": {"S": 1, "A": 0},
        "length": {"S": bounds_mod.length_sym(n, "S"), "A": bounds_mod.length_sym(n, "A")},
        "upper_bound_generic": bounds_mod.mibs_upper_bound(n, large=False),
        "upper_bound_large": bounds_mod.mibs_upper_bound(n, large=True),
        "constants": bounds_mod.CONSTANTS,
    }
    if n in bounds_mod.MATHIEU_LENGTHS:
        result["mathieu_length"] = bounds_mod.MATHIEU_LENGTHS[n]
    order_h = None
    if args.family == "agl":
        if args.p is None or args.d is None:
            raise UsageError("--family agl requires --p and --d")
        if args.p ** args.d != n:
            raise UsageError(f"p^d = {args.p ** args.d} does not match --n {n}")
        ab = bounds_mod.affine_mibs_bounds(args.p, args.d, args.ambient)
        result["family"] = {
            "name": "agl",
            "p": args.p,
            "d": args.d,
            "exact": ab.exact,
            "lower": ab.lower,
            "upper": ab.upper,
            "maximal": bounds_mod.maximality_affine(args.p, args.d, args.ambient),
        }
        order_h = n
        for i in range(args.d):
            order_h *= n - args.p**i
        if args.ambient == "A":
            order_h //= 2
    elif args.family == "wreath":
        if args.m is None or args.k is None:
            raise UsageError("--family wreath requires --m and --k")
        if args.m ** args.k != n:
            raise UsageError(f"m^k = {args.m ** args.k} does not match --n {n}")
        lo, hi = bounds_mod.wreath_mibs_bounds(args.m, args.k, args.ambient)
        result["family"] = {
            "name": "wreath",
            "m": args.m,
            "k": args.k,
            "lower": lo,
            "upper": hi,
            "maximal": bounds_mod.maximality_wreath(args.m, args.k, args.ambient),
        }
        order_h = math.factorial(args.m) ** args.k * math.factorial(args.k)
        if args.ambient == "A":
            order_h //= 2
    elif args.order_h is not None:
        order_h = args.order_h
    if order_h is not None:
        mar = bounds_mod.maroti_check(n, order_h)
        result["order_h"] = str(order_h)
        result["maroti"] = {
            "global_bound": mar.global_bound,
            "global_ok": mar.global_ok,
            "small_bound": mar.small_bound,
            "small_ok": mar.small_ok,
        }
    comparisons = []
    overall_ok = True
    if args.computed is not None:
        v = args.computed
        result["computed_mibs"] = v
        result["relational_complexity_upper"] = bounds_mod.relational_complexity_upper(v)
        lg = result["length"][args.ambient]
        comparisons.append({"formula": "mibs <= length(G)", "lhs": v, "rhs": lg, "ok": v <= lg})
        fam = result.get("family")
        if fam and fam["name"] == "agl":
            if fam["exact"]:
                comparisons.append(
                    {"formula": "mibs == exact", "lhs": v, "rhs": fam["lower"], "ok": v == fam["lower"]}
                )
            else:
                comparisons.append(
                    {
                        "formula": "lower <= mibs < upper",
                        "lhs": v,
                        "rhs": [fam["lower"], fam["upper"]],
                        "ok": fam["lower"] <= v < fam["upper"],
                    }
                )
        if fam and fam["name"] == "wreath":
            comparisons.append(
                {
                    "formula": "lower <= mibs <= upper",
                    "lhs": v,
                    "rhs": [fam["lower"], fam["upper"]],
                    "ok": fam["lower"] <= v <= fam["upper"],
                }
            )
        large = bool(fam and fam["name"] == "wreath")
        ub = result["upper_bound_large"] if large else result["upper_bound_generic"]
        comparisons.append(
            {"formula": "mibs < general upper bound", "lhs": v, "rhs": ub, "ok": v < ub}
        )
        overall_ok = all(c["ok"] for c in comparisons)
        result["comparisons"] = comparisons
    text = json.dumps(result, indent=2)
    if args.format == "json":
        _write_output(text + "\n", args.out)
    else:
        lines = []

        def flatten(prefix, obj):
            if isinstance(obj, dict):
                for k, v in obj.items():
                    flatten(f"{prefix}{k}.", v) if isinstance(v, (dict, list)) else lines.append(
                        f"{prefix}{k:<28} {v}"
                    )
            elif isinstance(obj, list):
                for i, v in enumerate(obj):
                    flatten(f"{prefix}{i}.", v) if isinstance(v, (dict, list)) else lines.append(
                        f"{prefix}{i:<28} {v}"
                    )

        flatten("", result)
        _write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK if overall_ok else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="irrbase",
        description="irredundant-base chains, exact maximum base sizes, and bound checks",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--limit-enum", type=int, default=2_000_000, metavar="N",
                       help="cap on enumerated group elements (default 2000000)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", metavar="PATH", help="write output to a file")

    pc = sub.add_parser("chain", help="build and self-verify a chain certificate")
    pc.add_argument("--family", required=True, choices=("affine", "wreath"))
    pc.add_argument("--p", type=int)
    pc.add_argument("--d", type=int)
    pc.add_argument("--m", type=int)
    pc.add_argument("--k", type=int)
    add_common(pc)
    pc.set_defaults(func=cmd_chain)

    po = sub.add_parser("oracle", help="exact maximum irredundant base size of an action")
    po.add_argument("--ambient", required=True, choices=("S", "A"))
    po.add_argument("--subgroup", required=True,
                    choices=("natural", "agl", "wreath", "explicit"))
    po.add_argument("--n", type=int)
    po.add_argument("--p", type=int)
    po.add_argument("--d", type=int)
    po.add_argument("--m", type=int)
    po.add_argument("--k", type=int)
    po.add_argument("--gens-file", metavar="PATH")
    po.add_argument("--limit-t", type=int, default=20_000, metavar="N",
                    help="cap on the coset index (default 20000)")
    po.add_argument("--limit-memo", type=int, default=1_000_000, metavar="N",
                    help="cap on memoized subgroups (default 1000000)")
    po.add_argument("--no-prune", action="store_true",
                    help="disable orbit pruning (regression flag; same results)")
    po.add_argument("--threads", type=int, default=1,
                    help="worker threads (results are identical for any value)")
    add_common(po)
    po.set_defaults(func=cmd_oracle)

    pv = sub.add_parser("verify", help="independently verify a certificate file")
    pv.add_argument("cert", metavar="CERT.json")
    pv.add_argument("--limit-enum", type=int, default=2_000_000, metavar="N")
    pv.set_defaults(func=cmd_verify)

    pb = sub.add_parser("bounds", help="evaluate closed-form bounds and criteria")
    pb.add_argument("--n", type=int)
    pb.add_argument("--ambient", choices=("S", "A"), default="S")
    pb.add_argument("--family", choices=("agl", "wreath"))
    pb.add_argument("--p", type=int)
    pb.add_argument("--d", type=int)
    pb.add_argument("--m", type=int)
    pb.add_argument("--k", type=int)
    pb.add_argument("--order-h", type=int, metavar="ORDER")
    pb.add_argument("--computed", type=int, metavar="MIBS",
                    help="a computed mibs value to compare against the bounds")
    pb.add_argument("--lemma52", action="store_true",
                    help="index-growth relation checks (requires --n and --order-h)")
    add_common(pb)
    pb.set_defaults(func=cmd_bounds)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("--threads must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LimitExceeded as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"invalid parameters: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
