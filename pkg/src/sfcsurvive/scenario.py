"""Random infrastructure generation and the multi-scenario benchmark suite.

Networks are generated connected by construction: a uniform random labeled
tree (Pruefer decode) first, then extra distinct links up to the requested
count, then per-node capacities. Scenarios form a nested sequence: each
draws from the same deterministic chain stream and stops once its target
utilization is reached, so scenario k's embedding is a prefix of k+1's and
realized utilizations never decrease.

All randomness comes from GeneratorConfig.seed. Suite results are written
as CSV; wall-clock timings go to a sidecar file by default so the results
file is byte-reproducible (see write_reports).
"""
import csv
import heapq
import json
import logging
import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from .embedding import EmbeddingState, ServiceChain, embed_chain, utilization
from .errors import TooManyLinks
from .exact import INFEASIBLE, OPTIMAL, solve_exact
from .heuristics import bs_pull, bs_push
from .plans import SolveConfig, check_plan
from .survivability import ScenarioReport, measure, verify_all_failures
from .topology import PhysicalNetwork, build_network

log = logging.getLogger(__name__)

DEFAULT_TARGETS = (0.10, 0.22, 0.34, 0.45, 0.55, 0.65, 0.75, 0.85)
ALGORITHMS = ("pull", "push", "exact")
CSV_HEADER = (
    "scenario,utilization,algorithm,total_backups,unprotected,"
    "mean_sync_hops,max_sync_hops,runtime_ms,optimal"
)

# Chain generation uses its own stream so infrastructure and workload can be
# varied independently while both remain functions of the single seed.
_CHAIN_STREAM_SALT = 0x5DEECE66D
_STALL_LIMIT = 100


@dataclass
class GeneratorConfig:
    node_count: int = 24
    link_count: int = 55
    capacity_range: tuple = (20, 50)
    type_count: int = 3
    target_utilizations: tuple = DEFAULT_TARGETS
    chain_length_range: tuple = (2, 5)
    seed: int = 42

    def __post_init__(self):
        self.capacity_range = tuple(self.capacity_range)
        self.target_utilizations = tuple(self.target_utilizations)
        self.chain_length_range = tuple(self.chain_length_range)
        if self.node_count < 1:
            raise ValueError("node_count must be >= 1")
        if self.link_count < self.node_count - 1:
            raise ValueError("link_count too small for a connected network")
        lo, hi = self.capacity_range
        if lo > hi:
            raise ValueError("capacity_range lower bound exceeds upper bound")
        clo, chi = self.chain_length_range
        if not (1 <= clo <= chi):
            raise ValueError("bad chain_length_range")
        if self.type_count < 1:
            raise ValueError("type_count must be >= 1")

    @classmethod
    def from_json(cls, obj: dict) -> "GeneratorConfig":
        return cls(**{k: obj[k] for k in obj})


def _prufer_tree(rng: random.Random, n: int) -> list[tuple[int, int]]:
    """Uniform random labeled tree on n nodes."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    a = heapq.heappop(leaves)
    b = heapq.heappop(leaves)
    edges.append((min(a, b), max(a, b)))
    return edges


def generate_infrastructure(gcfg: GeneratorConfig) -> PhysicalNetwork:
    """Seeded connected network with the requested node/link/capacity shape."""
    n = gcfg.node_count
    max_links = n * (n - 1) // 2
    if gcfg.link_count > max_links:
        raise TooManyLinks(
            f"{gcfg.link_count} links requested, {max_links} possible for {n} nodes"
        )
    rng = random.Random(gcfg.seed)
    links = set(_prufer_tree(rng, n))
    spare = sorted(
        (a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in links
    )
    rng.shuffle(spare)
    for pair in spare:
        if len(links) >= gcfg.link_count:
            break
        links.add(pair)
    capacities = [rng.randint(*gcfg.capacity_range) for _ in range(n)]
    return build_network(n, sorted(links), capacities)


def _chain_stream(gcfg: GeneratorConfig, net: PhysicalNetwork):
    """Deterministic infinite stream of random chains."""
    rng = random.Random(gcfg.seed ^ _CHAIN_STREAM_SALT)
    serial = 0
    while True:
        length = rng.randint(*gcfg.chain_length_range)
        yield ServiceChain(
            id=f"c{serial}",
            vnf_types=tuple(rng.randrange(gcfg.type_count) for _ in range(length)),
            source=rng.randrange(net.node_count),
            destination=rng.randrange(net.node_count),
        )
        serial += 1


def generate_scenario(
    net: PhysicalNetwork, gcfg: GeneratorConfig, k: int
) -> EmbeddingState:
    """Embed chains from the seeded stream until target utilization k.

    Stops early after 100 consecutive rejections (saturated network); the
    realized utilization is whatever was reached. Because every scenario
    replays the same stream, lower-indexed scenarios are prefixes of
    higher-indexed ones.
    """
    target = gcfg.target_utilizations[k]
    state = EmbeddingState.empty(net, gcfg.type_count)
    rejections = 0
    for chain in _chain_stream(gcfg, net):
        if utilization(net, state) >= target or rejections >= _STALL_LIMIT:
            break
        if embed_chain(net, state, chain):
            rejections = 0
        else:
            rejections += 1
    if utilization(net, state) < target:
        log.info(
            "scenario %d stalled at utilization %.3f (target %.3f)",
            k, utilization(net, state), target,
        )
    return state


def run_cell(net, state, algorithm: str, scfg: SolveConfig, scenario_id: str = ""):
    """Run one algorithm on one embedding; returns (report, plan or None)."""
    n_vnfs = state.total_vnfs()
    t0 = time.perf_counter()
    if algorithm == "exact":
        result = solve_exact(net, state, scfg)
        runtime = time.perf_counter() - t0
        meta = {"nodes_explored": result.nodes_explored, "backend": result.backend}
        if result.plan is None:
            return (
                ScenarioReport(
                    scenario_id=scenario_id,
                    utilization=utilization(net, state),
                    algorithm=algorithm,
                    total_backups=0,
                    unprotected_vnfs=n_vnfs,
                    mean_sync_hops=0.0,
                    mean_pair_sync_hops=0.0,
                    max_sync_hops=0,
                    runtime_s=runtime,
                    optimal=False,
                    status=result.status,
                    metadata=meta,
                ),
                None,
            )
        plan, optimal, status = result.plan, result.optimal, result.status
    else:
        solver = bs_pull if algorithm == "pull" else bs_push
        plan = solver(net, state, scfg)
        runtime = time.perf_counter() - t0
        optimal, status, meta = False, "ok", {}

    offenders = verify_all_failures(net, state, plan, scfg)
    meta["uncovered_failures"] = len(offenders)
    meta["structural_violations"] = len(
        check_plan(net, state, plan, scfg, require_full=False)
    )
    report = measure(
        net, state, plan, runtime,
        scenario_id=scenario_id, algorithm=algorithm,
        optimal=optimal, status=status, metadata=meta,
    )
    return report, plan


def run_suite(gcfg: GeneratorConfig, scfg: SolveConfig) -> list[ScenarioReport]:
    """All scenarios x all algorithms on one generated infrastructure."""
    net = generate_infrastructure(gcfg)
    reports = []
    for k in range(len(gcfg.target_utilizations)):
        state = generate_scenario(net, gcfg, k)
        sid = f"s{k + 1}"
        log.info(
            "%s: %d VNFs embedded, utilization %.3f",
            sid, state.total_vnfs(), utilization(net, state),
        )
        for algorithm in ALGORITHMS:
            report, _ = run_cell(net, state, algorithm, scfg, scenario_id=sid)
            report.metadata["target_utilization"] = gcfg.target_utilizations[k]
            reports.append(report)
    return reports


def _csv_row(r: ScenarioReport, live_timings: bool) -> str:
    runtime_ms = int(round(r.runtime_s * 1000)) if live_timings else 0
    return (
        f"{r.scenario_id},{r.utilization:.6f},{r.algorithm},{r.total_backups},"
        f"{r.unprotected_vnfs},{r.mean_sync_hops:.6f},{r.max_sync_hops},"
        f"{runtime_ms},{str(r.optimal).lower()}"
    )


def reports_to_csv(reports, live_timings: bool = False) -> str:
    lines = [CSV_HEADER]
    lines.extend(_csv_row(r, live_timings) for r in reports)
    return "\n".join(lines) + "\n"


def write_reports(reports, out_dir, live_timings: bool = False) -> dict:
    """Write results.csv, reports.json, and timings.csv under out_dir.

    results.csv and reports.json are byte-reproducible for a fixed seed.
    Wall-clock measurements live in timings.csv; pass live_timings=True to
    also put them in the runtime_ms column of results.csv (at the cost of
    reproducibility).
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    results = out / "results.csv"
    results.write_text(reports_to_csv(reports, live_timings=live_timings))
    (out / "reports.json").write_text(
        json.dumps(
            [r.to_json(include_runtime=live_timings) for r in reports],
            indent=2,
            sort_keys=True,
        )
        + "\n"
    )
    with open(out / "timings.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["scenario", "algorithm", "runtime_ms"])
        for r in reports:
            writer.writerow([r.scenario_id, r.algorithm, f"{r.runtime_s * 1000:.3f}"])
    return {"results": results, "reports": out / "reports.json", "timings": out / "timings.csv"}
