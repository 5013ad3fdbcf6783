"""JSON-driven command line front end.

Subcommands: gen (deterministic instance files), check-axioms, norm, extend,
corollary, and selftest (the acceptance suite).  Reports are JSON on stdout;
exit code 0 means every configured check passed, 1 means a check failed, and
2 means the input could not be parsed or validated.  The HYP2_TOL environment
variable overrides a command's default tolerance; an explicit --tol wins over
both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import acceptance
from .dmodule import DSubmodule, DVector
from .hahn_banach import ExtensionProblem, corollary_functional, full_extend
from .hyperbolic import Hyperbolic
from .two_functional import (
    DBilinear2Functional,
    certificate_gap,
    is_bounded_check,
    norm_bruteforce,
    norm_spectral,
)
from .two_norm import D2Norm, axiom_check


class InstanceError(ValueError):
    """An instance file failed validation (reported with exit code 2)."""


def _tol(args, default: float) -> float:
    if getattr(args, "tol", None) is not None:
        return float(args.tol)
    env = os.environ.get("HYP2_TOL")
    return float(env) if env else default


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InstanceError(f"cannot read instance {path!r}: {exc}") from exc


def _parse_instance(blob: dict, need: tuple[str, ...]) -> dict:
    if not isinstance(blob, dict):
        raise InstanceError("instance file must hold a JSON object")
    out: dict = {}
    try:
        n = int(blob["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError("instance needs an integer dimension n") from exc
    if not 2 <= n <= 8:
        raise InstanceError(f"dimension n must satisfy 2 <= n <= 8, got {n}")
    out["n"] = n
    kind = blob.get("norm", {"kind": "gramdet"}).get("kind", "gramdet")
    if kind != "gramdet":
        raise InstanceError(f"unsupported 2-norm kind {kind!r}")
    out["norm"] = D2Norm()
    try:
        if "functional" in need:
            out["functional"] = DBilinear2Functional.from_json(blob["functional"])
            if out["functional"].n != n:
                raise ValueError("functional dimension differs from n")
        if "M" in need:
            out["M"] = DSubmodule.from_json(blob["M"])
            if out["M"].n != n:
                raise ValueError("submodule dimension differs from n")
        if "z" in need:
            out["z"] = DVector.from_json(blob["z"])
            if out["z"].n != n:
                raise ValueError("z dimension differs from n")
        for key in ("x0", "y0"):
            if key in need:
                out[key] = DVector.from_json(blob[key])
                if out[key].n != n:
                    raise ValueError(f"{key} dimension differs from n")
    except KeyError as exc:
        raise InstanceError(f"instance is missing the {exc.args[0]!r} field") from exc
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    return out


# -- gen ---------------------------------------------------------------------


def cmd_gen(args) -> int:
    n = args.n
    if not 2 <= n <= 8:
        raise InstanceError(f"dimension n must satisfy 2 <= n <= 8, got {n}")
    rng = np.random.default_rng(args.seed)
    if args.dims:
        try:
            k1, k2 = (int(v) for v in args.dims.split(","))
        except ValueError as exc:
            raise InstanceError("--dims expects two comma-separated integers") from exc
    else:
        k1, k2 = int(rng.integers(0, n)), int(rng.integers(0, n))
    if not (0 <= k1 <= n and 0 <= k2 <= n):
        raise InstanceError(f"component dims must lie in [0, {n}], got ({k1}, {k2})")
    basis1 = rng.standard_normal((k1, n))
    basis2 = rng.standard_normal((k2, n))
    z1 = rng.standard_normal(n)
    z2 = np.zeros(n) if args.degenerate_z else rng.standard_normal(n)
    a1 = rng.standard_normal((n, n))
    a2 = rng.standard_normal((n, n))
    instance = {
        "n": n,
        "seed": args.seed,
        "M": DSubmodule(n, basis1, basis2).to_json(),
        "z": DVector.from_components(z1, z2).to_json(),
        "functional": DBilinear2Functional((a1 - a1.T) / 2.0, (a2 - a2.T) / 2.0).to_json(),
        "norm": {"kind": "gramdet"},
    }
    text = json.dumps(instance, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


# -- check-axioms -------------------------------------------------------------


def cmd_check_axioms(args) -> int:
    inst = _parse_instance(_load_json(args.instance), need=())
    tol = _tol(args, 1e-9)
    report = axiom_check(inst["norm"], inst["n"], samples=args.samples, rng=args.seed)
    _emit(report.to_json(tol))
    return 0 if report.passed(tol) else 1


# -- norm ----------------------------------------------------------------------


def cmd_norm(args) -> int:
    inst = _parse_instance(_load_json(args.instance), need=("functional",))
    f = inst["functional"]
    norm = inst["norm"]
    tol = _tol(args, 1e-9)
    spectral = norm_spectral(f, norm)
    quot = norm_bruteforce(f, norm, budget=args.samples, seed=args.seed, formula="quotient")
    unit = norm_bruteforce(f, norm, budget=args.samples, seed=args.seed, formula="unit")
    gap = certificate_gap(spectral, quot)
    bounded = is_bounded_check(f, norm, spectral.value, samples=1000, seed=args.seed, tol=tol)
    scale = 1.0 + spectral.value.max_abs()
    checks = {
        "brute_not_above_spectral": gap.is_nonneg(tol),
        "brute_within_2pct": bool(
            quot.value.p >= 0.98 * spectral.value.p - tol
            and quot.value.q >= 0.98 * spectral.value.q - tol
        ),
        "sup_formulas_agree": (quot.value - unit.value).max_abs() <= 1e-4 * scale,
        "bounded_at_spectral": bool(bounded),
    }
    report = {
        "spectral": spectral.to_json(),
        "brute_force": quot.to_json(),
        "brute_force_unit": unit.to_json(),
        "gap": gap.to_json(),
        "max_excess": bounded.max_excess,
        "checks": checks,
        "passed": all(checks.values()),
    }
    _emit(report)
    return 0 if report["passed"] else 1


# -- extend ----------------------------------------------------------------------


def cmd_extend(args) -> int:
    inst = _parse_instance(_load_json(args.instance), need=("functional", "M", "z"))
    functional = inst["functional"]
    if args.swap_domain:
        # f on [z] x M evaluates as (alpha z, x) -> f(alpha z, x); transposing
        # the matrices turns it into the engine's M x [z] orientation
        functional = DBilinear2Functional(functional.C1.T, functional.C2.T)
    problem = ExtensionProblem(inst["n"], inst["M"], inst["z"], functional, inst["norm"])
    trace = full_extend(problem)
    audit = trace.audit(samples=args.samples, seed=args.seed, norm_rel_tol=_tol(args, 1e-5))
    report = trace.to_json()
    if args.swap_domain:
        # present F back in the caller's [z] x M orientation
        F = report["final"]["F"]
        report["final"]["F"] = {
            "C1": np.array(F["C1"]).T.tolist(),
            "C2": np.array(F["C2"]).T.tolist(),
        }
    report["domain_order"] = "z_first" if args.swap_domain else "m_first"
    report["audit"] = audit
    report["passed"] = audit["passed"]
    _emit(report)
    return 0 if audit["passed"] else 1


# -- corollary ----------------------------------------------------------------------


def cmd_corollary(args) -> int:
    inst = _parse_instance(_load_json(args.instance), need=("x0", "y0"))
    x0, y0, norm = inst["x0"], inst["y0"], inst["norm"]
    tol = _tol(args, 1e-9)
    try:
        f0, trace = corollary_functional(x0, y0, norm)
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    one = Hyperbolic(1.0, 1.0)
    target = norm(x0, y0)
    rng = np.random.default_rng(args.seed)
    cases = acceptance.corollary_case_table(f0, x0, y0, norm, rng)
    checks = {
        "f0_norm_one": (f0.norm() - one).max_abs() <= tol,
        "f_norm_one": (trace.final.norm() - one).max_abs() <= tol,
        "value_attained": (trace.final.evaluate(x0, y0) - target).max_abs() <= 1e-10,
        "case_table_ok": all(row["bounded"] and row["matched"] for row in cases),
    }
    report = {
        "f0": f0.as_functional().to_json(),
        "f": trace.final.as_functional().to_json(),
        "norm_f0": f0.norm().to_json(),
        "norm_f": trace.final.norm().to_json(),
        "value": trace.final.evaluate(x0, y0).to_json(),
        "target": target.to_json(),
        "cases": cases,
        "checks": checks,
        "passed": all(checks.values()),
    }
    _emit(report)
    return 0 if report["passed"] else 1


# -- selftest ----------------------------------------------------------------------


def cmd_selftest(args) -> int:
    results = acceptance.run_all(only=args.only)
    if not results:
        print(f"no acceptance criterion matches {args.only!r}", file=sys.stderr)
        return 2
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyp2",
        description="Hyperbolic-valued 2-norms, bounded 2-functionals and "
        "norm-preserving extensions on D^n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a deterministic instance file")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--n", type=int, default=3, help="module dimension (2..8)")
    gen.add_argument("--dims", type=str, default="", help="component dims of M, e.g. 1,2")
    gen.add_argument("--degenerate-z", action="store_true", help="draw z as a zero divisor")
    gen.add_argument("--out", type=str, default="", help="write to a file instead of stdout")
    gen.set_defaults(func=cmd_gen)

    axioms = sub.add_parser("check-axioms", help="probe the 2-norm axioms on an instance")
    axioms.add_argument("instance")
    axioms.add_argument("--samples", type=int, default=1000)
    axioms.add_argument("--seed", type=int, default=0)
    axioms.add_argument("--tol", type=float, default=None)
    axioms.set_defaults(func=cmd_check_axioms)

    norm = sub.add_parser("norm", help="spectral and brute-force functional norms")
    norm.add_argument("instance")
    norm.add_argument("--samples", type=int, default=20000, help="brute-force budget")
    norm.add_argument("--seed", type=int, default=0)
    norm.add_argument("--tol", type=float, default=None)
    norm.set_defaults(func=cmd_norm)

    extend = sub.add_parser("extend", help="run the full norm-preserving extension")
    extend.add_argument("instance")
    extend.add_argument("--samples", type=int, default=1000, help="audit sample count")
    extend.add_argument("--seed", type=int, default=0)
    extend.add_argument("--tol", type=float, default=None, help="norm audit relative tolerance")
    extend.add_argument(
        "--swap-domain", action="store_true", help="treat the domain as [z] x M"
    )
    extend.set_defaults(func=cmd_extend)

    cor = sub.add_parser("corollary", help="norm-attaining functional for a pair x0, y0")
    cor.add_argument("instance", help="JSON file with n, x0 and y0")
    cor.add_argument("--seed", type=int, default=0)
    cor.add_argument("--tol", type=float, default=None)
    cor.set_defaults(func=cmd_corollary)

    selftest = sub.add_parser("selftest", help="run the acceptance suite")
    selftest.add_argument("--only", type=str, default=None, help="substring filter")
    selftest.set_defaults(func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
