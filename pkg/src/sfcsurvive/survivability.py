"""Failure simulation and plan metrics.

A plan survives a node failure when every VNF group on the failed node has a
backup pool that is alive (hosted elsewhere), big enough for the group, and
within the hop bound. Verification simply plays out every single-node
failure; for fully protecting plans this is equivalent to the static
constraint check, and the equivalence is exercised in the tests.
"""
from dataclasses import dataclass, field

from .embedding import EmbeddingState, utilization
from .plans import BackupPlan, SolveConfig
from .topology import PhysicalNetwork

NO_ASSIGNMENT = "no_assignment"
HOST_IS_FAILED_NODE = "host_is_failed_node"
POOL_TOO_SMALL = "pool_too_small"
OUT_OF_RANGE = "out_of_range"


@dataclass
class FailureReport:
    failed_node: int
    broken_groups: list  # (src, type, count)
    covered: list  # (src, type, count, host, pool, hops)
    uncovered: list  # (src, type, count, reason)
    lost_backups: list  # (type, pool size) pools that lived on the failed node

    def to_json(self) -> dict:
        return {
            "failed_node": self.failed_node,
            "broken_groups": [list(g) for g in self.broken_groups],
            "covered": [list(c) for c in self.covered],
            "uncovered": [list(u) for u in self.uncovered],
            "lost_backups": [list(b) for b in self.lost_backups],
        }


@dataclass
class ScenarioReport:
    scenario_id: str
    utilization: float
    algorithm: str
    total_backups: int
    unprotected_vnfs: int
    mean_sync_hops: float  # per VNF: weighted by group size
    mean_pair_sync_hops: float  # per protected group
    max_sync_hops: int
    runtime_s: float
    optimal: bool
    status: str = "ok"
    metadata: dict = field(default_factory=dict)

    def to_json(self, include_runtime: bool = True) -> dict:
        out = {
            "scenario": self.scenario_id,
            "utilization": self.utilization,
            "algorithm": self.algorithm,
            "total_backups": self.total_backups,
            "unprotected": self.unprotected_vnfs,
            "mean_sync_hops": self.mean_sync_hops,
            "mean_pair_sync_hops": self.mean_pair_sync_hops,
            "max_sync_hops": self.max_sync_hops,
            "optimal": self.optimal,
            "status": self.status,
            "metadata": self.metadata,
        }
        if include_runtime:
            out["runtime_s"] = self.runtime_s
        return out


def simulate_failure(
    net: PhysicalNetwork,
    state: EmbeddingState,
    plan: BackupPlan,
    failed: int,
    cfg: SolveConfig,
) -> FailureReport:
    """What breaks, and what takes over, when one physical node goes down."""
    net._check_node(failed)
    broken = [
        (failed, j, int(state.m[failed, j]))
        for j in range(state.type_count)
        if state.m[failed, j] >= 1
    ]
    covered, uncovered = [], []
    for src, j, count in broken:
        host = plan.assignments.get((src, j))
        if host is None:
            uncovered.append((src, j, count, NO_ASSIGNMENT))
            continue
        if host == failed:
            # Impossible for any plan that passed the self-hosting check.
            uncovered.append((src, j, count, HOST_IS_FAILED_NODE))
            continue
        d = net.hops(src, host)
        if d is None or d > cfg.d_max:
            uncovered.append((src, j, count, OUT_OF_RANGE))
        elif int(plan.x[host, j]) < count:
            uncovered.append((src, j, count, POOL_TOO_SMALL))
        else:
            covered.append((src, j, count, host, int(plan.x[host, j]), d))
    lost = [
        (j, int(plan.x[failed, j]))
        for j in range(state.type_count)
        if plan.x[failed, j] > 0
    ]
    return FailureReport(failed, broken, covered, uncovered, lost)


def verify_all_failures(
    net: PhysicalNetwork,
    state: EmbeddingState,
    plan: BackupPlan,
    cfg: SolveConfig,
) -> list[FailureReport]:
    """Simulate every single-node failure; returns the failing reports.

    An empty result means the plan is survivable: no single node failure
    leaves any VNF group without an adequate in-range backup pool.
    """
    offenders = []
    for failed in range(net.node_count):
        report = simulate_failure(net, state, plan, failed, cfg)
        if report.uncovered:
            offenders.append(report)
    return offenders


def is_survivable(net, state, plan, cfg) -> bool:
    return not verify_all_failures(net, state, plan, cfg)


def measure(
    net: PhysicalNetwork,
    state: EmbeddingState,
    plan: BackupPlan,
    runtime_s: float,
    scenario_id: str = "",
    algorithm: str = "",
    optimal: bool = False,
    status: str = "ok",
    metadata: dict | None = None,
) -> ScenarioReport:
    """Aggregate plan statistics into one report row.

    Sync-hop means follow the protected VNFs: each VNF contributes the hop
    distance to its group's pool, so groups weigh in proportionally to size.
    The unweighted per-group mean is reported alongside. Empty plans report
    zero for all hop statistics.
    """
    vnf_weight = 0
    vnf_hops = 0
    pair_hops = 0
    max_hops = 0
    for (i, j), host in plan.assignments.items():
        d = net.hops(i, host)
        if d is None:
            raise ValueError(f"assigned host {host} unreachable from {i}")
        count = int(state.m[i, j])
        vnf_weight += count
        vnf_hops += count * d
        pair_hops += d
        max_hops = max(max_hops, d)
    pairs = len(plan.assignments)
    return ScenarioReport(
        scenario_id=scenario_id,
        utilization=utilization(net, state),
        algorithm=algorithm,
        total_backups=plan.total_backups(),
        unprotected_vnfs=plan.unprotected_vnfs(),
        mean_sync_hops=vnf_hops / vnf_weight if vnf_weight else 0.0,
        mean_pair_sync_hops=pair_hops / pairs if pairs else 0.0,
        max_sync_hops=max_hops,
        runtime_s=runtime_s,
        optimal=optimal,
        status=status,
        metadata=metadata or {},
    )
