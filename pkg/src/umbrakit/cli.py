"""Command-line front end: generation, verification, export.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage error,
3 invalid spec or parameters.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import multiindex as mi
from .families import (bernoulli, bernoulli_tsh_check, euler, euler_tsh_check,
                       hermite, poly_to_coeff_map)
from .harmonic import (decompose, expected_value_zero, tsh_from_json,
                       tsh_polynomial, tsh_to_json, tsh_to_latex,
                       verify_harmonicity)
from .polynomials import parse_poly
from .processes import ProcessSpec, build, ig_gf_check, moments_to_json

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_SPEC = 3

PROCESS_ALIASES = {
    "brownian": "brownian",
    "poisson": "poisson",
    "gamma": "gamma",
    "ig": "inverse_gaussian",
    "inverse_gaussian": "inverse_gaussian",
    "bernoulli": "bernoulli_neg",
    "euler": "euler_half",
}


def _max_order_cap() -> int:
    env = os.environ.get("UMBRA_MAX_ORDER")
    return int(env) if env else mi.MAX_TOTAL_ORDER


def _process_spec(args) -> ProcessSpec:
    name = args.process
    if name.startswith("custom:"):
        return ProcessSpec("custom", args.d, args.order,
                           {"path": name.split(":", 1)[1]})
    if name not in PROCESS_ALIASES:
        raise ValueError(f"unknown process {name!r} "
                         f"(choices: {', '.join(PROCESS_ALIASES)})")
    params = json.loads(args.params) if getattr(args, "params", None) else {}
    for key in ("rate", "shape", "scale", "a", "b"):
        if key in params:
            params[key] = Fraction(str(params[key]))
    if "C" in params:
        params["C"] = [[Fraction(str(x)) for x in row] for row in params["C"]]
    return ProcessSpec(PROCESS_ALIASES[name], args.d, args.order, params)


def _emit(payload: dict, args) -> None:
    payload = {"schema": SCHEMA_VERSION, **payload}
    text = json.dumps(payload, indent=2)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_partitions(args) -> int:
    v = mi.parse_index(args.v)
    items = []
    for lam in mi.partitions(v, max_order=_max_order_cap()):
        items.append({
            "columns": [mi.format_index(c) for c in lam.columns],
            "multiplicities": list(lam.multiplicities),
            "length": lam.length(),
            "weight": str(mi.partition_weight(lam, v)),
        })
    _emit({"v": mi.format_index(v), "count": len(items), "partitions": items}, args)
    return EXIT_OK


def cmd_moments(args) -> int:
    proc = build(_process_spec(args))
    _emit({"kind": proc.spec.kind,
           "moments": moments_to_json(proc.time_tuple, params=["t"])}, args)
    return EXIT_OK


def cmd_cumulants(args) -> int:
    proc = build(_process_spec(args))
    cum = proc.one_step.cumulant_tuple()
    _emit({"kind": proc.spec.kind, "cumulants": moments_to_json(cum)}, args)
    return EXIT_OK


def cmd_gen_tsh(args) -> int:
    v = mi.parse_index(args.v)
    args.order = max(args.order, mi.total(v))
    proc = build(_process_spec(args))
    q = tsh_polynomial(proc.one_step, v)
    _emit({"process": proc.spec.kind, "tsh": tsh_to_json(q)}, args)
    return EXIT_OK


def cmd_gen_family(args) -> int:
    v = mi.parse_index(args.v)
    t = Fraction(args.t) if args.t is not None else "t"
    if args.family == "hermite":
        C = json.loads(args.C) if args.C else None
        if C is None:
            C = [[1 if i == j else 0 for j in range(len(v))] for i in range(len(v))]
        p = hermite(v, C, t)
    elif args.family == "bernoulli":
        p = bernoulli(v, t)
    elif args.family == "euler":
        p = euler(v, t)
    else:
        raise ValueError(f"unknown family {args.family!r}")
    if args.latex:
        from .harmonic import TshPolynomial
        coeffs = poly_to_coeff_map(p, len(v))
        print(tsh_to_latex(TshPolynomial(len(v), v, coeffs)))
    else:
        _emit({"family": args.family, "v": mi.format_index(v),
               "polynomial": str(p)}, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.family:
        ok = {"bernoulli": bernoulli_tsh_check,
              "euler": euler_tsh_check}[args.family](args.max_order, args.d)
        print(f"family {args.family}: {'PASS' if ok else 'FAIL'}")
        return EXIT_OK if ok else EXIT_VERIFY_FAILED
    proc = build(_process_spec(args))
    if args.tsh:
        with open(args.tsh) as fh:
            data = json.load(fh)
        q = tsh_from_json(data["tsh"] if "tsh" in data else data)
        ok, cert = verify_harmonicity(proc.one_step, q.coeffs)
        print(f"{mi.format_index(q.index)}: {'PASS' if ok else 'FAIL'}")
        if not ok:
            print(json.dumps(cert), file=sys.stderr)
        return EXIT_OK if ok else EXIT_VERIFY_FAILED
    failures = 0
    for v in mi.iter_indices(args.d, args.max_order):
        if not any(v):
            continue
        q = tsh_polynomial(proc.one_step, v)
        ok, cert = verify_harmonicity(proc.one_step, q.coeffs)
        zero = expected_value_zero(proc.one_step, v)
        verdict = "PASS" if (ok and zero) else "FAIL"
        print(f"{mi.format_index(v)}: harmonic={ok} zero_mean={zero} {verdict}")
        if not (ok and zero):
            failures += 1
            if cert:
                print(json.dumps(cert), file=sys.stderr)
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


def cmd_ig_check(args) -> int:
    ok = ig_gf_check(Fraction(args.a), Fraction(args.b), args.order)
    print(f"inverse-Gaussian gf check (a={args.a}, b={args.b}, N={args.order}): "
          f"{'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_decompose(args) -> int:
    proc = build(_process_spec(args))
    with open(args.poly) as fh:
        data = json.load(fh)
    coeffs = {mi.parse_index(k): parse_poly(c) for k, c in data["coeffs"].items()}
    result = decompose(coeffs, proc.one_step)
    _emit({
        "exact": result.exact,
        "coefficients": {mi.format_index(k): str(c)
                         for k, c in result.coefficients.items()},
        "residual": {mi.format_index(k): str(p)
                     for k, p in result.residual.items()},
    }, args)
    return EXIT_OK if result.exact else EXIT_VERIFY_FAILED


def cmd_mc_verify(args) -> int:
    from .harmonic import tsh_polynomial as gen
    from .montecarlo import SimConfig, simulate_and_test
    spec = _process_spec(args)
    proc = build(spec)
    s_str, t_str = args.times.split(",")
    polys = [gen(proc.one_step, v)
             for v in mi.iter_indices(args.d, args.max_order) if any(v)]
    cfg = SimConfig(spec, args.paths, Fraction(s_str), Fraction(t_str),
                    args.seed, tuple(q.index for q in polys))
    report = simulate_and_test(cfg, polys)
    if args.json:
        _emit(report.to_json(), args)
    else:
        print(report.table(), file=sys.stderr)
        print(json.dumps({"passed": report.passed}))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="umbrakit",
        description="Exact time-space harmonic polynomials for symbolic "
                    "Levy processes")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, process=True):
        p.add_argument("--d", type=int, default=1)
        p.add_argument("--order", type=int, default=6)
        p.add_argument("--output")
        if process:
            p.add_argument("--process", default="brownian")
            p.add_argument("--params", help="process parameters as JSON")

    p = sub.add_parser("partitions", help="enumerate multi-index partitions")
    p.add_argument("--v", required=True)
    p.add_argument("--output")
    p.set_defaults(fn=cmd_partitions)

    p = sub.add_parser("moments", help="moments of X_t as polynomials in t")
    common(p)
    p.set_defaults(fn=cmd_moments)

    p = sub.add_parser("cumulants", help="cumulants of the one-step tuple")
    common(p)
    p.set_defaults(fn=cmd_cumulants)

    p = sub.add_parser("gen-tsh", help="generate a harmonic basis polynomial")
    common(p)
    p.add_argument("--v", required=True)
    p.set_defaults(fn=cmd_gen_tsh)

    p = sub.add_parser("gen-family", help="generate a classical family member")
    p.add_argument("--family", required=True,
                   choices=["hermite", "bernoulli", "euler"])
    p.add_argument("--v", required=True)
    p.add_argument("--t", help="numeric time value (default symbolic t)")
    p.add_argument("--C", help="matrix factor for hermite, JSON")
    p.add_argument("--latex", action="store_true")
    p.add_argument("--output")
    p.set_defaults(fn=cmd_gen_family)

    p = sub.add_parser("verify", help="verify harmonicity and zero expectation")
    common(p)
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--family", choices=["bernoulli", "euler"])
    p.add_argument("--tsh", help="re-verify a gen-tsh JSON file")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("ig-check", help="inverse-Gaussian gf cross-check")
    p.add_argument("--a", default="1")
    p.add_argument("--b", default="1")
    p.add_argument("--order", type=int, default=6)
    p.set_defaults(fn=cmd_ig_check)

    p = sub.add_parser("decompose", help="expand a polynomial in the harmonic basis")
    common(p)
    p.add_argument("--poly", required=True, help="JSON file with a coeffs map")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("mc-verify", help="Monte Carlo martingale checks")
    common(p)
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--paths", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--times", default="1/2,1")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_mc_verify)

    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
