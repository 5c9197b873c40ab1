"""Command-line entry point: ``zerofree <command> ...``.

Exit codes: 0 success, 1 verification or invariant failure, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .errors import (
    DomainError,
    InputError,
    InvariantError,
    NumericalError,
    ResourceError,
    SingularityError,
)
from .dynamics import orbit_explore
from .graphs import complete_dary_tree, dary_tree_size, format_edge_list, parse_edge_list
from .poly import independence_polynomial, tree_polynomial
from .regions import (
    DEFAULT_BOUNDARY_SAMPLES,
    RegionSpec,
    certificate_margins,
    new_domain_boundary,
    new_domain_contains,
    ud_contains,
)
from .roots import DEFAULT_TOL, polynomial_roots
from . import verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
EMIT_REGIONS = ("shearer", "pr", "ud", "new", "d1", "d2")
# degree cap for root finding on complete trees
TREE_ZEROS_MAX_VERTICES = 512


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse "re,im" into a complex number."""
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from None


def _num(x: float) -> str:
    return format(x, ".17g")


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    target = Path(out)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=".zerofree-")
    with os.fdopen(fd, "w", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, target)


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


# -- commands --------------------------------------------------------------------

def cmd_regions(args) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    spec = RegionSpec(args.region, args.delta)
    if args.format == "csv":
        if args.region == "new":
            rows = ["beta,t,s"] + [
                f"{_num(p.beta)},{_num(p.t_value)},{_num(p.s_value)}"
                for p in new_domain_boundary(spec.d, args.samples)
            ]
        else:
            rows = ["arg,modulus"] + [f"{_num(a)},{_num(m)}" for a, m in spec.boundary(args.samples)]
        _write("\n".join(rows) + "\n", args.out)
    else:
        pts = [{"arg": a, "modulus": m} for a, m in spec.boundary(args.samples)]
        _write(_dump({"kind": args.region, "delta": args.delta, "boundary": pts}), args.out)
    return EXIT_OK


def _roots_payload(poly, tol):
    return [r.to_dict() for r in polynomial_roots(poly, tol=tol)]


def cmd_poly(args) -> int:
    try:
        text = Path(args.graph).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc.strerror}") from None
    p = independence_polynomial(parse_edge_list(text))
    if args.mode == "compute":
        _write(p.to_json() + "\n", args.out)
    else:
        payload = {"degree": p.degree, "roots": _roots_payload(p, args.precision)}
        _write(_dump(payload), args.out)
    return EXIT_OK


def cmd_tree(args) -> int:
    if args.d < 1 or args.k < 0:
        raise UsageError("need --d >= 1 and --k >= 0")
    if args.mode == "gen":
        tree = complete_dary_tree(args.d, args.k)
        _write(format_edge_list(tree.underlying), args.out)
        return EXIT_OK
    size = dary_tree_size(args.d, args.k)
    if size > TREE_ZEROS_MAX_VERTICES:
        raise UsageError(f"T_(k={args.k}, d={args.d}) has {size} vertices; zeros are capped at {TREE_ZEROS_MAX_VERTICES}")
    p = tree_polynomial(complete_dary_tree(args.d, args.k))
    zeros = []
    for r in polynomial_roots(p, tol=args.precision):
        entry = r.to_dict()
        if args.d >= 2:
            entry["in_ud"] = ud_contains(r.value, args.d)
            entry["in_new"] = new_domain_contains(r.value, args.d)
        else:
            entry["in_ud"] = entry["in_new"] = None
        zeros.append(entry)
    _write(_dump({"d": args.d, "k": args.k, "degree": p.degree, "roots": zeros}), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    lam = args.lam
    if args.certificate:
        if args.beta is None or args.gamma is None:
            raise UsageError("--certificate needs --beta and --gamma")
        if args.delta < 3:
            raise UsageError("--delta must be at least 3")
        left, right = certificate_margins(lam, args.beta, args.gamma, args.delta - 1)
        certified = left >= -1e-12 and right >= -1e-12
        payload = {
            "lambda": {"re": lam.real, "im": lam.imag},
            "delta": args.delta,
            "beta": args.beta,
            "gamma": args.gamma,
            "certified": certified,
            "margins": [left, right],
        }
    else:
        if args.region is None:
            raise UsageError("give --region or --certificate")
        spec = RegionSpec(args.region, args.delta)
        payload = {
            "lambda": {"re": lam.real, "im": lam.imag},
            "delta": args.delta,
            "region": args.region,
            "inside": spec.contains(lam),
        }
    _write(_dump(payload), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        deltas = verify.parse_delta_range(args.delta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if deltas[0] < 3 or deltas[-1] > 65:
        raise UsageError("Delta range must lie within 3..65")
    names = verify.SUITES if args.suite == "all" else (args.suite,)
    results = []
    for name in names:
        if name == "s4":
            results.append(verify.s4_suite(deltas))
        elif name == "regions":
            results.append(verify.regions_suite(deltas, args.samples))
        elif name == "divisibility":
            results.append(verify.divisibility_suite(args.seed))
        else:
            results.append(verify.zerofree_suite(deltas, args.seed))
    ok = all(r["ok"] for r in results)
    _write(_dump({"ok": ok, "suites": results}), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_orbit(args) -> int:
    report = orbit_explore(args.lam, args.d, args.depth, args.budget, args.seed)
    _write(report.to_json() + "\n", args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zerofree", description="Zero-free regions of independence polynomials")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", default=None, help="write to this path instead of stdout")

    regions = sub.add_parser("regions", help="region boundary data")
    rsub = regions.add_subparsers(dest="action", required=True)
    emit = rsub.add_parser("emit", help="emit polar boundary samples")
    emit.add_argument("--delta", type=int, required=True)
    emit.add_argument("--region", choices=EMIT_REGIONS, required=True)
    emit.add_argument("--samples", type=int, default=DEFAULT_BOUNDARY_SAMPLES)
    emit.add_argument("--format", choices=("csv", "json"), default="csv")
    common(emit)
    emit.set_defaults(func=cmd_regions)

    poly = sub.add_parser("poly", help="independence polynomial of an edge-list graph")
    poly.add_argument("--graph", required=True, help="edge-list file")
    poly.add_argument("--mode", choices=("compute", "roots"), default="compute")
    poly.add_argument("--precision", type=float, default=DEFAULT_TOL, help="relative residual bound for roots")
    common(poly)
    poly.set_defaults(func=cmd_poly)

    tree = sub.add_parser("tree", help="complete d-ary trees T_{k,d}")
    tree.add_argument("--d", type=int, required=True)
    tree.add_argument("--k", type=int, required=True)
    tree.add_argument("--mode", choices=("gen", "zeros"), default="gen")
    tree.add_argument("--precision", type=float, default=DEFAULT_TOL)
    common(tree)
    tree.set_defaults(func=cmd_tree)

    check = sub.add_parser("check", help="region membership or sector certificate")
    check.add_argument("--lambda", dest="lam", type=parse_complex, required=True, help="re,im")
    check.add_argument("--delta", type=int, required=True)
    check.add_argument("--region", choices=EMIT_REGIONS)
    check.add_argument("--certificate", action="store_true")
    check.add_argument("--beta", type=float)
    check.add_argument("--gamma", type=float)
    common(check)
    check.set_defaults(func=cmd_check)

    ver = sub.add_parser("verify", help="run verification suites")
    ver.add_argument("--delta", default="3..12", help="range like 3..12")
    ver.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--samples", type=int, default=64, help="polar grid size for the regions suite")
    common(ver)
    ver.set_defaults(func=cmd_verify)

    orbit = sub.add_parser("orbit", help="explore the set generated from 0")
    orbit.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
    orbit.add_argument("--d", type=int, required=True)
    orbit.add_argument("--depth", type=int, default=8)
    orbit.add_argument("--budget", type=int, default=64)
    orbit.add_argument("--seed", type=int, default=0)
    common(orbit)
    orbit.set_defaults(func=cmd_orbit)
    return p


def _glue_negative_values(argv: list[str]) -> list[str]:
    # "--lambda -0.2,0" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for a in it:
        if a == "--lambda":
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-"):
                out.append(f"{a}={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, InputError, DomainError, ResourceError) as exc:
        print(f"zerofree: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantError, NumericalError, SingularityError) as exc:
        print(f"zerofree: failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
