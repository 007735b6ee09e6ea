"""``age-lab``: command-line front end.

Exit codes: 0 verified, 1 configuration error, 2 a check failed or an
obstruction was found, 3 a descent ran out of budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import lie_core
from .cohomology import cocycle_space_dim
from .module_zoo import load_spec, SubalgebraTriple
from .pbw_engine import parse_element, render
from .selftest import SCHEMA, dumps, selftest
from .simplicity_lab import (
    check_induction_conditions, compute_N_subspace, descend_to_vacuum, find_singular, least_admissible_l, replay,
)

EXIT_OK, EXIT_CONFIG, EXIT_FAILED, EXIT_BUDGET = 0, 1, 2, 3


class ConfigError(Exception):
    pass


def _ints(text: str, n: int) -> List[int]:
    try:
        vals = [int(s) for s in text.split(",")]
    except ValueError:
        raise ConfigError(f"expected {n} comma-separated integers, got {text!r}")
    if len(vals) != n:
        raise ConfigError(f"expected {n} comma-separated integers, got {text!r}")
    return vals


def _spec(path):
    try:
        return load_spec(path)
    except (OSError, json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"cannot load spec {path}: {exc}")


def _positive(name, value):
    if value is not None and value < 1:
        raise ConfigError(f"--{name} must be positive")


def cmd_jacobi(args):
    _positive("window", args.window)
    bad = lie_core.jacobi_violations(args.window)
    anti = lie_core.antisymmetry_violations(args.window)
    report = {
        "anchor": "bracket table: antisymmetry and Jacobi identity",
        "params": {"window": args.window},
        "violations": len(bad),
        "antisymmetry_violations": len(anti),
        "examples": [[str(g) for g in t] for t in bad[:5]],
        "passed": not bad and not anti,
    }
    return report, EXIT_OK if report["passed"] else EXIT_FAILED


def cmd_cocycle(args):
    if not 2 <= args.window <= 6:
        raise ConfigError("--window must lie in [2, 6]")
    space = cocycle_space_dim(args.window)
    report = {"anchor": "truncated 2-cocycle space of the loop algebra", "params": {"window": args.window}}
    report.update(space.to_json())
    return report, EXIT_OK if space.standard_independent else EXIT_FAILED


def cmd_singular(args):
    spec = _spec(args.spec)
    _positive("grade", args.grade)
    _positive("window", args.window)
    try:
        basis = find_singular(spec, args.grade, args.window)
    except ValueError as exc:
        raise ConfigError(str(exc))
    report = {
        "anchor": "singular vectors in a graded component",
        "spec": spec.describe(),
        "params": {"grade": args.grade, "window": args.window},
        "dimension": len(basis),
        "basis": [render(spec, v) for v in basis],
    }
    return report, EXIT_OK


def cmd_certify(args):
    spec = _spec(args.spec)
    _positive("budget", args.budget)
    try:
        v = parse_element(spec, args.element)
    except ValueError as exc:
        raise ConfigError(f"cannot parse element: {exc}")
    if not v:
        raise ConfigError("element is zero")
    try:
        cert = descend_to_vacuum(spec, v, args.budget, through=args.through)
    except ValueError as exc:
        raise ConfigError(str(exc))
    report = {
        "anchor": "degree descent to the cyclic vector",
        "spec": spec.describe(),
        "params": {"budget": args.budget, "through": args.through},
        "certificate": cert.to_json(),
        "replays": replay(cert),
    }
    code = {"reached": EXIT_OK, "obstruction": EXIT_FAILED, "budget": EXIT_BUDGET}[cert.status]
    return report, code


def cmd_conditions(args):
    inner = _spec(args.inner)
    try:
        t = SubalgebraTriple(*_ints(args.d, 3))
    except ValueError as exc:
        raise ConfigError(str(exc))
    _positive("depth", args.depth)
    l = args.l
    if l is None:
        l = least_admissible_l(t, inner, args.depth, args.window)
        if l is None:
            report = {"anchor": "induction conditions", "params": {"d": list(t.as_tuple())}, "l": None, "passed": False}
            return report, EXIT_FAILED
    try:
        rep = check_induction_conditions(t, inner, l, args.depth, args.window)
    except ValueError as exc:
        raise ConfigError(str(exc))
    rep["passed"] = rep["a_injective"] and rep["b_ok"]
    rep["a_status"] = f"verified up to depth {args.depth}" if rep["a_injective"] else "not injective"
    report = {"anchor": "induction conditions (a) and (b)", "inner": inner.describe(), "result": rep}
    return report, EXIT_OK if rep["passed"] else EXIT_FAILED


def cmd_nspace(args):
    spec = _spec(args.spec)
    x = _ints(args.x, 4)
    basis = compute_N_subspace(spec, x, args.window, args.depth)
    report = {
        "anchor": "common annihilator of high modes",
        "spec": spec.describe(),
        "params": {"x": x, "window": args.window, "depth": args.depth},
        "dimension": len(basis),
        "basis": [render(spec, v) for v in basis],
    }
    return report, EXIT_OK


def cmd_selftest(args):
    report = selftest(args.seed)
    for rec in report["checks"]:
        print(f"[{'PASS' if rec['passed'] else 'FAIL'}] {rec['id']:>2} {rec['anchor']}", file=sys.stderr)
    return report, EXIT_OK if report["passed"] else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="age-lab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
        return sp

    sp = common(sub.add_parser("jacobi", help="exhaustive bracket checks"))
    sp.add_argument("--window", type=int, default=4)
    sp.set_defaults(fn=cmd_jacobi)

    sp = common(sub.add_parser("cocycle", help="dimensions of the truncated cocycle space"))
    sp.add_argument("--window", type=int, default=3)
    sp.set_defaults(fn=cmd_cocycle)

    sp = common(sub.add_parser("singular", help="singular vectors of a graded spec"))
    sp.add_argument("--spec", required=True)
    sp.add_argument("--grade", type=int, required=True)
    sp.add_argument("--window", type=int, default=3)
    sp.set_defaults(fn=cmd_singular)

    sp = common(sub.add_parser("certify", help="descent certificate for one element"))
    sp.add_argument("--spec", required=True)
    sp.add_argument("--element", required=True)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--through", action="store_true", help="continue into the inner module of an induced spec")
    sp.set_defaults(fn=cmd_certify)

    sp = common(sub.add_parser("conditions", help="conditions (a)/(b) for an induction"))
    sp.add_argument("--d", required=True, help="d1,d2,d3")
    sp.add_argument("--inner", required=True)
    sp.add_argument("--l", type=int)
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--window", type=int, default=3)
    sp.set_defaults(fn=cmd_conditions)

    sp = common(sub.add_parser("nspace", help="annihilator subspace N_{x1,x2,x3,x4}"))
    sp.add_argument("--spec", required=True)
    sp.add_argument("--x", required=True, help="x1,x2,x3,x4")
    sp.add_argument("--window", type=int, default=3)
    sp.add_argument("--depth", type=int, default=2)
    sp.set_defaults(fn=cmd_nspace)

    sp = common(sub.add_parser("selftest", help="run the full acceptance suite"))
    sp.set_defaults(fn=cmd_selftest)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        body, code = args.fn(args)
    except ConfigError as exc:
        print(f"age-lab: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report = {"schema": SCHEMA, "command": args.command, "seed": args.seed}
    report.update(body)
    text = dumps(report) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
