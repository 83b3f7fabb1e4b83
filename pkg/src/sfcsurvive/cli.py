"""Command line interface.

Subcommands:
  solve      compute a backup plan for one instance file
  verify     check a plan file against an instance
  export-lp  write the instance as a CPLEX LP text model
  suite      run the full scenario benchmark from a config file

Exit codes: 0 success, 1 infeasible instance or failed verification,
2 usage or input errors. Set SFC_SURVIVE_LOG=debug|info|... for logging.
"""
import argparse
import json
import logging
import os
import sys

from .embedding import (
    EmbeddingState,
    chains_from_json,
    embed_chain,
    state_from_json,
)
from .errors import SfcSurviveError
from .exact import solve_exact
from .heuristics import bs_pull, bs_push
from .lpwriter import format_lp
from .plans import BackupPlan, SolveConfig, check_plan
from .scenario import GeneratorConfig, run_suite, write_reports
from .survivability import verify_all_failures
from .topology import network_from_json

log = logging.getLogger(__name__)


def _setup_logging():
    level_name = os.environ.get("SFC_SURVIVE_LOG", "").upper()
    if level_name:
        logging.basicConfig(
            level=getattr(logging, level_name, logging.INFO),
            format="%(levelname)s %(name)s: %(message)s",
        )


def _load_instance(path):
    """Instance file -> (network, embedding state).

    The file carries the topology plus either a precomputed "m" count matrix
    or a "chains" list to run through the embedder (or neither, for an empty
    embedding with "types" VNF types).
    """
    with open(path) as fh:
        obj = json.load(fh)
    net = network_from_json(obj)
    if "m" in obj:
        return net, state_from_json(obj, net)
    if "chains" in obj:
        chains = chains_from_json(obj["chains"])
        type_count = obj.get("types")
        if type_count is None:
            type_count = 1 + max(t for c in chains for t in c.vnf_types)
        state = EmbeddingState.empty(net, type_count)
        for chain in chains:
            if not embed_chain(net, state, chain):
                raise ValueError(f"chain {chain.id} does not fit the network")
        return net, state
    return net, EmbeddingState.empty(net, int(obj.get("types", 1)))


def _emit(payload: dict, out_path):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_solve(args) -> int:
    net, state = _load_instance(args.instance)
    cfg = SolveConfig(
        d_max=args.dmax,
        big_M=args.big_m,
        time_budget=args.budget,
        node_budget=args.node_budget,
        allocation_mode=args.allocation_mode,
    )
    if args.algorithm == "exact":
        result = solve_exact(net, state, cfg)
        log.info(
            "exact: status=%s nodes=%d backend=%s",
            result.status, result.nodes_explored, result.backend,
        )
        if result.plan is None:
            _emit(
                {"algorithm": "exact", "status": result.status, "plan": None},
                args.out,
            )
            return 1
        payload = {
            "algorithm": "exact",
            "status": result.status,
            "optimal": result.optimal,
            "objective": result.objective,
            "plan": result.plan.to_json(),
        }
        _emit(payload, args.out)
        return 0
    solver = bs_pull if args.algorithm == "pull" else bs_push
    plan = solver(net, state, cfg)
    _emit(
        {
            "algorithm": args.algorithm,
            "status": "ok",
            "objective": plan.total_backups(),
            "unprotected_vnfs": plan.unprotected_vnfs(),
            "plan": plan.to_json(),
        },
        args.out,
    )
    return 0


def _cmd_verify(args) -> int:
    net, state = _load_instance(args.instance)
    with open(args.plan) as fh:
        plan = BackupPlan.from_json(json.load(fh))
    cfg = SolveConfig(d_max=args.dmax)
    violations = check_plan(net, state, plan, cfg)
    offenders = verify_all_failures(net, state, plan, cfg)
    payload = {
        "valid": not violations,
        "survivable": not offenders,
        "violations": [v.to_json() for v in violations],
        "failing_nodes": [r.failed_node for r in offenders],
    }
    _emit(payload, args.out)
    return 0 if not violations else 1


def _cmd_export_lp(args) -> int:
    net, state = _load_instance(args.instance)
    cfg = SolveConfig(d_max=args.dmax, big_M=args.big_m)
    text = format_lp(net, state, cfg, literal_eq2=args.literal_eq2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_suite(args) -> int:
    with open(args.config) as fh:
        cfg_obj = json.load(fh)
    gen_obj = dict(cfg_obj.get("generator", {}))
    solve_obj = dict(cfg_obj.get("solve", {}))
    if args.seed is not None:
        gen_obj["seed"] = args.seed
    if args.dmax is not None:
        solve_obj["d_max"] = args.dmax
    gcfg = GeneratorConfig.from_json(gen_obj)
    scfg = SolveConfig(**solve_obj)
    reports = run_suite(gcfg, scfg)
    paths = write_reports(reports, args.out, live_timings=args.live_timings)
    for name, path in sorted(paths.items()):
        print(f"{name}: {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfc-survive",
        description="Shared-backup provisioning for embedded service chains",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="compute a backup plan for an instance")
    solve.add_argument("instance")
    solve.add_argument(
        "--algorithm", choices=("pull", "push", "exact"), default="exact"
    )
    solve.add_argument("--dmax", type=int, default=2)
    solve.add_argument(
        "--allocation-mode", choices=("pool", "fresh"), default="pool"
    )
    solve.add_argument("--budget", type=float, default=None,
                       help="wall-clock cap in seconds for the exact solver")
    solve.add_argument("--node-budget", type=int, default=None,
                       help="deterministic search-node cap for the exact solver")
    solve.add_argument("--big-m", type=int, default=10_000)
    solve.add_argument("--out", default=None)
    solve.set_defaults(func=_cmd_solve)

    verify = sub.add_parser("verify", help="check a plan against an instance")
    verify.add_argument("instance")
    verify.add_argument("plan")
    verify.add_argument("--dmax", type=int, default=2)
    verify.add_argument("--out", default=None)
    verify.set_defaults(func=_cmd_verify)

    export = sub.add_parser("export-lp", help="write the model in LP format")
    export.add_argument("instance")
    export.add_argument("--dmax", type=int, default=2)
    export.add_argument("--big-m", type=int, default=10_000)
    export.add_argument(
        "--literal-eq2", action="store_true",
        help="emit assignment rows for every cell, including empty ones",
    )
    export.add_argument("--out", default=None)
    export.set_defaults(func=_cmd_export_lp)

    suite = sub.add_parser("suite", help="run the scenario benchmark suite")
    suite.add_argument("--config", required=True)
    suite.add_argument("--out", required=True)
    suite.add_argument("--seed", type=int, default=None,
                       help="override the generator seed from the config")
    suite.add_argument("--dmax", type=int, default=None,
                       help="override the hop bound from the config")
    suite.add_argument(
        "--live-timings", action="store_true",
        help="put wall-clock runtimes into results.csv (breaks reproducibility)",
    )
    suite.set_defaults(func=_cmd_suite)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, ValueError, KeyError, SfcSurviveError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
