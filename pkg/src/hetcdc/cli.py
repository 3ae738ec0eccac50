"""Command-line interface for planning, verification and sweeps."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import converse_bounds, coding_k3, lp_general, oracle, placement_k3, shuffle_sim
from .model import (FeasibilityViolation, BadDimension, allocation_to_json,
                    derive_profile, validate_config)

DOMAIN_ERRORS = (FeasibilityViolation, BadDimension, oracle.BudgetExceeded,
                 lp_general.TooLarge, placement_k3.InternalContradiction,
                 coding_k3.Undecodable, shuffle_sim.ReduceFailure, ValueError)


def _fmt(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator} ({float(value)})"


def _parse_m(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad storage list: {text!r}")


def _config(args) -> "validate_config":
    M = args.M
    K = getattr(args, "K", None) or len(M)
    return validate_config(K, M, args.N)


def _uncoded_load(cfg) -> int:
    return sum(cfg.N - min(m, cfg.N) for m in cfg.M)


def cmd_load(args) -> int:
    cfg = _config(args)
    regime = placement_k3.classify_regime(cfg)
    lstar = placement_k3.optimal_load(cfg)
    report = converse_bounds.lower_bound(cfg)
    print(f"instance: M={list(cfg.M)} (sorted; input order positions {cfg.perm}), N={cfg.N}")
    print(f"regime:   {regime.value}")
    print(f"L*:       {_fmt(lstar)}")
    print(f"uncoded:  {_uncoded_load(cfg)}")
    print(f"bounds:   pooled={_fmt(report.pooled)} cutset={_fmt(report.cutset)} "
          f"genie={_fmt(report.genie)} max={_fmt(report.max_bound)}")
    return 0


def cmd_place(args) -> int:
    cfg = _config(args)
    regime = placement_k3.classify_regime(cfg)
    alloc = placement_k3.build_placement(cfg)
    load = coding_k3.achievable_load(alloc)
    print(json.dumps(allocation_to_json(alloc, regime=regime.value, load=load), indent=2))
    return 0


def cmd_simulate(args) -> int:
    cfg = _config(args)
    alloc = placement_k3.build_placement(cfg)
    plan = coding_k3.plan_shuffle(alloc)
    coding_k3.check_decodable(alloc, plan)
    sim = shuffle_sim.SimConfig(cfg=alloc.config, T_bytes=args.T, seed=args.seed)
    report = shuffle_sim.run_round(sim, alloc, plan)
    doubled = alloc.config.N != cfg.N
    print(f"{'field':<22}{'value'}")
    print(f"{'success':<22}{report.success}")
    print(f"{'packets':<22}{len(plan.packets)}")
    print(f"{'measured_load':<22}{_fmt(report.measured_load)}"
          + (" (doubled instance)" if doubled else ""))
    print(f"{'bytes_on_wire':<22}{report.bytes_on_wire}")
    print(f"{'per_node_recovered':<22}{list(report.per_node_recovered)}")
    return 0


def cmd_bounds(args) -> int:
    cfg = _config(args)
    report = converse_bounds.lower_bound(cfg)
    lstar = placement_k3.optimal_load(cfg)
    active = report.active()
    print(f"{'bound':<10}{'value':<16}{'active'}")
    for name in ("pooled", "cutset", "genie"):
        value = getattr(report, name)
        print(f"{name:<10}{_fmt(value):<16}{'*' if name in active else ''}")
    print(f"{'max':<10}{_fmt(report.max_bound)}")
    print(f"L* = {_fmt(lstar)}; bound {'meets' if lstar == report.max_bound else 'DIFFERS FROM'} optimum")
    return 0


def cmd_oracle(args) -> int:
    cfg = _config(args)
    minimum, witness = oracle.min_load_bruteforce(cfg, budget=args.budget)
    lstar = placement_k3.optimal_load(cfg)
    profile = derive_profile(witness).as_k3_tuple()
    print(f"oracle min: {_fmt(minimum)}")
    print(f"witness profile (S1,S2,S3,S12,S13,S23,S123): {profile} "
          f"(on doubled instance)")
    print(f"theorem L*: {_fmt(lstar)}")
    print(f"agree: {minimum == lstar}")
    return 0


def cmd_lp(args) -> int:
    cfg = validate_config(args.K or len(args.M), args.M, args.N, sort_k3=False)
    model = lp_general.build_model(cfg)
    if args.dump_model:
        with open(args.dump_model, "w") as fh:
            fh.write(lp_general.dump_model(model) + "\n")
    sol = lp_general.solve(model)
    if sol.status != "optimal":
        print(json.dumps({"status": sol.status}))
        return 1
    extracted = lp_general.extract_allocation(cfg, model, sol)
    out = {
        "status": sol.status,
        "optimum": {"num": sol.optimum.numerator, "den": sol.optimum.denominator},
        "subset_values": {
            "".join(str(k) for k in sorted(t)): [v.numerator, v.denominator]
            for t, v in sol.subset_values.items() if v != 0},
        "coding_values": {
            f"x_{j}{q}": [v.numerator, v.denominator]
            for (j, q), v in sol.coding_values.items() if v != 0},
        "scale": extracted.scale,
        "allocation": allocation_to_json(extracted.allocation, load=sol.optimum * extracted.scale),
    }
    print(json.dumps(out, indent=2))
    return 0


def cmd_sweep(args) -> int:
    rows = []
    for N in range(1, args.Nmax + 1):
        for M1 in range(1, N + 1):
            for M2 in range(M1, N + 1):
                for M3 in range(M2, N + 1):
                    if M1 + M2 + M3 < N:
                        continue
                    cfg = validate_config(3, [M1, M2, M3], N)
                    regime = placement_k3.classify_regime(cfg)
                    lstar = placement_k3.optimal_load(cfg)
                    try:
                        oracle_min, _ = oracle.min_load_bruteforce(cfg, budget=args.budget)
                        oracle_str = f"{oracle_min.numerator}/{oracle_min.denominator}"
                        agree = str(oracle_min == lstar).lower()
                    except oracle.BudgetExceeded:
                        oracle_str, agree = "", ""
                    rows.append([M1, M2, M3, N, regime.value,
                                 f"{lstar.numerator}/{lstar.denominator}",
                                 _uncoded_load(cfg), oracle_str, agree])
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["M1", "M2", "M3", "N", "regime", "L_star",
                         "L_uncoded", "oracle_min", "agree"])
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hetcdc",
        description="Shuffle-load planner/verifier for heterogeneous coded distributed computing")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_flags(p, need_k=False):
        p.add_argument("--M", type=_parse_m, required=True,
                       help="comma-separated storage sizes, e.g. 6,7,7")
        p.add_argument("--N", type=int, required=True, help="number of files")
        if need_k:
            p.add_argument("--K", type=int, default=None, help="node count (defaults to len(M))")

    p = sub.add_parser("load", help="regime, optimal load and bounds")
    instance_flags(p)
    p.set_defaults(func=cmd_load)

    p = sub.add_parser("place", help="emit the achieving placement as JSON")
    instance_flags(p)
    p.set_defaults(func=cmd_place)

    p = sub.add_parser("simulate", help="run a full map/shuffle/reduce round")
    instance_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--T", type=int, default=64, help="intermediate value size in bytes")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bounds", help="print the four lower bounds")
    instance_flags(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("oracle", help="brute-force minimum over all allocations")
    instance_flags(p)
    p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("lp", help="solve the general-K achievability LP")
    instance_flags(p, need_k=True)
    p.add_argument("--dump-model", default=None, metavar="PATH",
                   help="write a plain-text model listing")
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("sweep", help="CSV sweep over all sorted K=3 instances")
    p.add_argument("--Nmax", type=int, default=8)
    p.add_argument("--out", required=True)
    p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except DOMAIN_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
