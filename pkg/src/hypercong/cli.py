"""Command-line front end.

Subcommands expose each layer of the pipeline — truncated sums, unit
roots, finite-field tables, character sums, point counts, zeta slices,
eta expansions — plus ``verify``, which sweeps the claim registry and
writes a deterministic report.

Exit codes: 0 success, 1 a proved claim failed, 2 bad input or a domain
error (non-unit argument, table bounds, oversized field), 3 an internal
consistency check tripped.
"""

from __future__ import annotations

import argparse
import json
import sys

from .claims import CLAIMS, PROVED
from .config import DEFAULT_LIMITS
from .errors import HypercongError, InternalConsistencyError, MultipleUnitRoots, NoUnitRoot
from .etaq import EtaQuotient, eta_expand
from .ffield import build_field
from .hsums import h_value_count, h_value_gauss, h_value_gauss_auto, point_count
from .report import write_report
from .sweep import run_sweep
from .truncsum import HyperParams, truncated_sum, unit_root_limit
from .zeta import compute_zeta, slope_multiset, unit_root_of_zeta

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypercong",
        description="Truncated hypergeometric congruences and their zeta-side checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_trunc = sub.add_parser("trunc", help="truncated sum F_{p^s}(z) mod p^k")
    p_trunc.add_argument("--d", type=int, required=True)
    p_trunc.add_argument("--p", type=int, required=True)
    p_trunc.add_argument("--s", type=int, default=1)
    p_trunc.add_argument("--z", type=int, default=1, choices=(1, -1))
    p_trunc.add_argument("--mod-exp", type=int, default=2, dest="mod_exp")

    p_root = sub.add_parser("unitroot", help="Dwork quotient limit mod p^N")
    p_root.add_argument("--d", type=int, required=True)
    p_root.add_argument("--p", type=int, required=True)
    p_root.add_argument("--z", type=int, default=1, choices=(1, -1))
    p_root.add_argument("--precision", type=int, default=2)

    p_field = sub.add_parser("field", help="finite-field log/trace tables")
    p_field.add_argument("--p", type=int, required=True)
    p_field.add_argument("--k", type=int, default=1)
    p_field.add_argument("--dump", action="store_true")

    p_hq = sub.add_parser("hq", help="character sum H_q(t) by either route")
    p_hq.add_argument("--p", type=int, required=True)
    p_hq.add_argument("--k", type=int, default=1)
    p_hq.add_argument("--d", type=int, required=True)
    p_hq.add_argument("--t", type=int, required=True)
    p_hq.add_argument("--method", choices=("gauss", "count"), default="count")
    p_hq.add_argument("--precision-bits", type=int, default=None, dest="precision_bits")

    p_count = sub.add_parser("pointcount", help="affine point count behind H_q(t)")
    p_count.add_argument("--p", type=int, required=True)
    p_count.add_argument("--k", type=int, default=1)
    p_count.add_argument("--d", type=int, required=True)
    p_count.add_argument("--t", type=int, required=True)

    p_zeta = sub.add_parser("zeta", help="zeta slice as JSON")
    p_zeta.add_argument("--p", type=int, required=True)
    p_zeta.add_argument("--d", type=int, required=True)
    p_zeta.add_argument("--t", type=int, required=True)
    p_zeta.add_argument("--precision", type=int, default=2,
                        help="unit-root precision exponent")

    p_eta = sub.add_parser("eta", help="eta-quotient q-expansion")
    p_eta.add_argument("--quotient", required=True,
                       help='space-separated delta^e factors, e.g. "2^4 4^4"')
    p_eta.add_argument("--terms", type=int, required=True)

    p_verify = sub.add_parser("verify", help="sweep the claim registry")
    p_verify.add_argument("--claims", default="all",
                          help="comma-separated claim ids, or 'all'")
    p_verify.add_argument("--pmax", type=int, default=199)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--out", required=True)
    p_verify.add_argument("--format", choices=("json", "csv"), default="json")
    p_verify.add_argument("--list", action="store_true",
                          help="list claim ids and exit")
    return parser


def _cmd_trunc(args) -> int:
    value = truncated_sum(HyperParams(args.d, args.p), args.s, args.z, args.mod_exp)
    print(value.value.value)
    return 0


def _cmd_unitroot(args) -> int:
    approx = unit_root_limit(HyperParams(args.d, args.p), args.z, args.precision)
    print(approx.residue.value)
    return 0


def _cmd_field(args) -> int:
    field = build_field(args.p, args.k, limits=DEFAULT_LIMITS)
    mod = " ".join(str(c) for c in field.modulus)
    print(f"q={field.q} p={field.p} k={field.k} modulus=[{mod}] "
          f"generator={field.generator} rank={field.generator_rank}")
    if args.dump:
        for line in field.dump_lines():
            print(line)
    return 0


def _cmd_hq(args) -> int:
    field = build_field(args.p, args.k, limits=DEFAULT_LIMITS)
    if args.method == "count":
        hv = h_value_count(field, args.d, args.t)
    elif args.precision_bits is not None:
        hv = h_value_gauss(field, args.d, args.t, args.precision_bits)
    else:
        hv = h_value_gauss_auto(field, args.d, args.t)
    print(hv.value)
    print(f"method={hv.method} residual={hv.residual:.3g} "
          f"bits={hv.precision_bits}", file=sys.stderr)
    return 0


def _cmd_pointcount(args) -> int:
    field = build_field(args.p, args.k, limits=DEFAULT_LIMITS)
    print(point_count(field, args.d, args.t))
    return 0


def _cmd_zeta(args) -> int:
    zf = compute_zeta(args.p, args.d, args.t)
    doc = {
        "p": zf.p,
        "d": zf.d,
        "t": zf.t,
        "coefficients": list(zf.coefficients),
        "removed_factor": zf.removed_factor,
        "completed": zf.completed,
        "slopes": [str(s) for s in slope_multiset(zf.coefficients, zf.p)],
        "unit_root": None,
    }
    try:
        approx = unit_root_of_zeta(zf, args.precision)
        doc["unit_root"] = {"value": approx.residue.value,
                            "precision": approx.precision}
    except (NoUnitRoot, MultipleUnitRoots) as exc:
        doc["unit_root_error"] = type(exc).__name__
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_eta(args) -> int:
    expansion = eta_expand(EtaQuotient.parse(args.quotient), args.terms)
    for n, a in enumerate(expansion.coefficients, start=1):
        print(f"{n}\t{a}")
    return 0


def _cmd_verify(args) -> int:
    if args.list:
        for cid in sorted(CLAIMS):
            spec = CLAIMS[cid]
            tag = "proved" if cid in PROVED else spec.kind
            print(f"{cid:20s} {tag:11s} {spec.description}")
        return 0
    if args.claims == "all":
        ids = sorted(CLAIMS)
    else:
        ids = [c.strip() for c in args.claims.split(",") if c.strip()]
        unknown = [c for c in ids if c not in CLAIMS]
        if unknown:
            raise ValueError(f"unknown claim ids: {', '.join(unknown)}")
    result = run_sweep(ids, pmax=args.pmax, jobs=args.jobs)
    write_report(args.out, result.rows, args.format, incomplete=result.incomplete)

    per_claim: dict[str, dict[str, int]] = {}
    for row in result.rows:
        per_claim.setdefault(row.claim, {}).setdefault(row.status, 0)
        per_claim[row.claim][row.status] += 1
    for cid in ids:
        stats = per_claim.get(cid, {})
        summary = " ".join(f"{k}={v}" for k, v in sorted(stats.items())) or "no cells"
        print(f"{cid:20s} {summary}")
    print(f"wrote {args.out} ({len(result.rows)} rows, "
          f"{result.elapsed:.1f}s){' INCOMPLETE' if result.incomplete else ''}")
    if result.error:
        print(f"error: {result.error}", file=sys.stderr)
    return result.exit_code


_DISPATCH = {
    "trunc": _cmd_trunc,
    "unitroot": _cmd_unitroot,
    "field": _cmd_field,
    "hq": _cmd_hq,
    "pointcount": _cmd_pointcount,
    "zeta": _cmd_zeta,
    "eta": _cmd_eta,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 3
    except (HypercongError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
