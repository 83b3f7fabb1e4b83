"""Backup plans, solver configuration, and the constraint checker.

A plan protects "active" (node, type) cells: cells hosting at least one VNF.
Every active cell is either assigned a backup host or listed as unprotected.
A plan is fully valid when all assigned cells satisfy the placement rules
(no self-hosting, hop bound, pool at least as large as the protected group,
node capacity covers primaries plus pools) and nothing is unprotected.
"""
import json
from dataclasses import dataclass, field

import numpy as np

from .embedding import EmbeddingState
from .topology import PhysicalNetwork

POOL = "pool"
FRESH = "fresh"


@dataclass
class SolveConfig:
    """Shared knobs for the exact solver and the heuristics.

    d_max bounds the hop distance between a VNF group and its backup pool.
    big_M only matters for the LP text export. time_budget (wall seconds)
    and node_budget (explored search nodes) cap the exact solver; the node
    budget is deterministic and is what reproducible suite runs should use.
    """

    d_max: int = 2
    big_M: int = 10_000
    time_budget: float | None = None
    node_budget: int | None = None
    allocation_mode: str = POOL
    tie_break: str = "lowest"

    def __post_init__(self):
        if self.d_max < 0:
            raise ValueError("d_max must be >= 0")
        if self.allocation_mode not in (POOL, FRESH):
            raise ValueError(f"unknown allocation_mode {self.allocation_mode!r}")
        if self.tie_break != "lowest":
            raise ValueError(f"unknown tie_break {self.tie_break!r}")


@dataclass
class BackupPlan:
    """Pool sizes x[node, type], host assignments, and unprotected leftovers."""

    x: np.ndarray  # shape (N, J), int
    assignments: dict  # (src node, type) -> host node
    unprotected: list = field(default_factory=list)  # (src node, type, count)

    def total_backups(self) -> int:
        return int(self.x.sum())

    def unprotected_vnfs(self) -> int:
        return int(sum(count for _, _, count in self.unprotected))

    @classmethod
    def empty(cls, node_count: int, type_count: int) -> "BackupPlan":
        return cls(
            x=np.zeros((node_count, type_count), dtype=np.int64),
            assignments={},
        )

    def to_json(self) -> dict:
        return {
            "x": [[int(v) for v in row] for row in self.x],
            "assignments": [
                {"src": int(i), "type": int(j), "host": int(n)}
                for (i, j), n in sorted(self.assignments.items())
            ],
            "unprotected": [
                {"src": int(i), "type": int(j), "count": int(c)}
                for i, j, c in sorted(self.unprotected)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BackupPlan":
        x = np.asarray(obj["x"], dtype=np.int64)
        assignments = {
            (int(a["src"]), int(a["type"])): int(a["host"])
            for a in obj.get("assignments", [])
        }
        unprotected = [
            (int(u["src"]), int(u["type"]), int(u["count"]))
            for u in obj.get("unprotected", [])
        ]
        return cls(x=x, assignments=assignments, unprotected=unprotected)


def load_plan(path) -> BackupPlan:
    with open(path) as fh:
        return BackupPlan.from_json(json.load(fh))


@dataclass(frozen=True)
class Violation:
    kind: str  # self_host | missing_assignment | pool_too_small | capacity
    #          | hop_bound | unprotected | inconsistent | inactive_assignment
    i: int | None
    j: int | None
    n: int | None
    detail: str

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "src": self.i,
            "type": self.j,
            "host": self.n,
            "detail": self.detail,
        }


def check_plan(
    net: PhysicalNetwork,
    state: EmbeddingState,
    plan: BackupPlan,
    cfg: SolveConfig,
    require_full: bool = True,
) -> list[Violation]:
    """Check every placement rule; returns all violations (empty == valid).

    With require_full=True (the default) unprotected cells are violations
    too, so an empty result means the plan survives any single node failure.
    require_full=False checks only the assigned cells, which is the right
    mode for heuristic plans that ran out of room.
    """
    out = []
    n_nodes, n_types = state.m.shape
    if plan.x.shape != (n_nodes, n_types):
        raise ValueError(
            f"plan x shape {plan.x.shape} does not match instance {(n_nodes, n_types)}"
        )
    unprotected_cells = {(i, j) for i, j, _ in plan.unprotected}

    for (i, j), host in sorted(plan.assignments.items()):
        if not (0 <= i < n_nodes and 0 <= j < n_types and 0 <= host < n_nodes):
            raise ValueError(f"assignment ({i},{j})->{host} out of range")
        m_ij = int(state.m[i, j])
        if m_ij == 0:
            out.append(
                Violation(
                    "inactive_assignment", i, j, host,
                    f"cell ({i},{j}) hosts no VNFs but is assigned",
                )
            )
            continue
        if host == i:
            out.append(
                Violation("self_host", i, j, host, "backup host equals source node")
            )
        d = net.hops(i, host)
        if d is None or d > cfg.d_max:
            out.append(
                Violation(
                    "hop_bound", i, j, host,
                    f"distance {d} exceeds bound {cfg.d_max}",
                )
            )
        if int(plan.x[host, j]) < m_ij:
            out.append(
                Violation(
                    "pool_too_small", i, j, host,
                    f"pool {int(plan.x[host, j])} < group size {m_ij}",
                )
            )
        if (i, j) in unprotected_cells:
            out.append(
                Violation(
                    "inconsistent", i, j, host,
                    "cell is both assigned and listed unprotected",
                )
            )

    for i, j in state.active_pairs():
        if (i, j) not in plan.assignments and (i, j) not in unprotected_cells:
            out.append(
                Violation(
                    "missing_assignment", i, j, None,
                    "active cell has no backup host and is not listed unprotected",
                )
            )

    load = state.load()
    for n in range(n_nodes):
        total = int(load[n] + plan.x[n].sum())
        if total > int(net.capacity[n]):
            out.append(
                Violation(
                    "capacity", None, None, n,
                    f"load {total} exceeds capacity {int(net.capacity[n])}",
                )
            )

    if require_full:
        for i, j, count in sorted(plan.unprotected):
            out.append(
                Violation(
                    "unprotected", i, j, None,
                    f"{count} VNFs of type {j} on node {i} have no backup",
                )
            )
    return out


def plan_is_valid(net, state, plan, cfg) -> bool:
    return not check_plan(net, state, plan, cfg)
