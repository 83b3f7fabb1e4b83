"""Shared-backup provisioning and survivability for embedded service chains.

The package models a physical NFV infrastructure, embeds service function
chains onto it, and provisions type-matched shared backup VNF pools so that
every chain survives any single physical node failure. Plans come from an
exact branch-and-bound optimizer (compiled kernel with a pure-Python
fallback) or from two greedy heuristics, and can be verified by exhaustive
failure simulation.
"""
from ._kernel import active_backend
from .embedding import EmbeddingState, ServiceChain, embed_chain, utilization
from .exact import SolveResult, oracle_enumerate, solve_exact
from .heuristics import bs_pull, bs_push, source_neighbors
from .lpwriter import export_lp, format_lp
from .plans import BackupPlan, SolveConfig, check_plan, plan_is_valid
from .scenario import GeneratorConfig, generate_infrastructure, generate_scenario, run_suite
from .survivability import (
    FailureReport,
    ScenarioReport,
    is_survivable,
    measure,
    simulate_failure,
    verify_all_failures,
)
from .topology import PhysicalNetwork, build_network

__version__ = "0.1.0"

__all__ = [
    "BackupPlan",
    "EmbeddingState",
    "FailureReport",
    "GeneratorConfig",
    "PhysicalNetwork",
    "ScenarioReport",
    "ServiceChain",
    "SolveConfig",
    "SolveResult",
    "active_backend",
    "bs_pull",
    "bs_push",
    "build_network",
    "check_plan",
    "embed_chain",
    "export_lp",
    "format_lp",
    "generate_infrastructure",
    "generate_scenario",
    "is_survivable",
    "measure",
    "oracle_enumerate",
    "plan_is_valid",
    "run_suite",
    "simulate_failure",
    "solve_exact",
    "source_neighbors",
    "utilization",
    "verify_all_failures",
]
