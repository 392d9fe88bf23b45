"""Command line interface.

Subcommands: ``run`` a verification suite from a JSON config, ``eval`` the
weighted gauge at a point, ``squeeze`` / ``fridman`` for single
certificates, and ``trace`` for the statement-to-check matrix.  Exit codes:
0 success, 1 failures present (or a computation error), 2 config error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .domains import Weights, domain_from_json, point_from_json
from .errors import (
    ContractViolation,
    EmptyFamilyError,
    NumericFailure,
    SuiteConfigError,
    UnsupportedDomainError,
)
from .fridman import fridman_lower_bound
from .lab import SuiteConfig, report_traceability, run_suite
from .minkowski import weighted_gauge
from .squeezing import SearchBudget, certify_lower_bound


def _parse_weights(text: str) -> Weights:
    return Weights.of([int(x) for x in text.split(",") if x.strip()])


def _load_json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SuiteConfigError(f"bad {what} JSON: {exc}") from exc


def _parse_pair(text: str):
    data = _load_json_arg(text, "pair")
    try:
        D = domain_from_json(data["D"])
        omega = domain_from_json(data["Omega"])
        w = Weights.of(data.get("d", [1] * omega.dim))
        anchor = point_from_json(data["anchor"])
    except (KeyError, TypeError, ValueError, ContractViolation) as exc:
        raise SuiteConfigError(f"bad pair description: {exc}") from exc
    return D, omega, w, anchor


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsqlab",
        description="Weighted gauges, invariant metrics and squeezing/Fridman certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a verification suite from a JSON config")
    p_run.add_argument("--config", required=True, help="path to the suite JSON")
    p_run.add_argument("--out", default=None, help="output directory override")
    p_run.add_argument("--seed", type=int, default=None, help="seed override")
    p_run.add_argument("--tol", type=float, default=None, help="tolerance override")
    p_run.add_argument("--workers", type=int, default=1)

    p_eval = sub.add_parser("eval", help="evaluate a quantity at a point")
    p_eval.add_argument("quantity", choices=["h"], help="h: the weighted gauge")
    p_eval.add_argument("--domain", required=True, help="domain JSON")
    p_eval.add_argument("--d", default=None, help="weights, e.g. 1,2")
    p_eval.add_argument("--z", required=True, help="point JSON")
    p_eval.add_argument("--tol", type=float, default=1e-10)

    p_sq = sub.add_parser("squeeze", help="certify a squeezing lower bound")
    p_sq.add_argument("--pair", required=True, help='{"D":..,"Omega":..,"d":[..],"anchor":..}')
    p_sq.add_argument("--family", default="auto")
    p_sq.add_argument("--budget", type=float, default=None)
    p_sq.add_argument("--seed", type=int, default=0)

    p_fr = sub.add_parser("fridman", help="certify a Fridman lower bound")
    p_fr.add_argument("--pair", required=True, help='{"D":..,"Omega":..,"d":[..],"anchor":..}')
    p_fr.add_argument("--family", default="auto")
    p_fr.add_argument("--budget", type=float, default=None)
    p_fr.add_argument("--seed", type=int, default=0)

    p_tr = sub.add_parser("trace", help="print the statement-to-check matrix")
    p_tr.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def _cmd_run(args) -> int:
    config = SuiteConfig.from_file(args.config)
    updates = {}
    if args.out is not None:
        updates["out_dir"] = args.out
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.tol is not None:
        updates["tol"] = args.tol
    if updates:
        from dataclasses import replace

        config = replace(config, **updates)
    run = run_suite(config, workers=args.workers)
    for r in run.results:
        print(
            f"{r.check_id:22s} {r.domain_id:18s} {r.status:12s} "
            f"margin={r.worst_margin:.3e} samples={r.samples}"
        )
    if run.out_files:
        print(f"reports written to {run.out_files['csv'].parent}")
    return 1 if run.failed else 0


def _cmd_eval(args) -> int:
    domain = domain_from_json(_load_json_arg(args.domain, "domain"))
    w = _parse_weights(args.d) if args.d else Weights.ones(domain.dim)
    z = point_from_json(_load_json_arg(args.z, "point"))
    bracket = weighted_gauge(domain, w, z, args.tol)
    print(json.dumps({"lo": bracket.lo, "hi": bracket.hi}))
    return 0


def _cmd_squeeze(args) -> int:
    D, omega, w, anchor = _parse_pair(args.pair)
    budget = SearchBudget.of(args.budget)
    cert = certify_lower_bound(
        D, omega, w, anchor, family=args.family, budget=budget, seed=args.seed
    )
    print(json.dumps(cert.to_json(), indent=2))
    return 0


def _cmd_fridman(args) -> int:
    D, omega, w, anchor = _parse_pair(args.pair)
    budget = SearchBudget.of(args.budget)
    family = "auto" if args.family in ("auto", "moebius") else args.family
    cert = fridman_lower_bound(
        D, omega, anchor, weights=w, family=family, budget=budget, seed=args.seed
    )
    print(json.dumps(cert.to_json(), indent=2))
    return 0


def _cmd_trace(args) -> int:
    matrix = report_traceability()
    if args.format == "json":
        print(json.dumps(matrix.to_json(), indent=2))
    else:
        print(matrix.render_text())
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "eval": _cmd_eval,
        "squeeze": _cmd_squeeze,
        "fridman": _cmd_fridman,
        "trace": _cmd_trace,
    }
    try:
        return handlers[args.command](args)
    except (SuiteConfigError, ContractViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EmptyFamilyError, NumericFailure, UnsupportedDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
