"""Exact minimum-backup solver and the independent enumeration oracle.

The solver proves optimality by exhausting a branch-and-bound search over
host assignments for every protected (node, type) cell. It is seeded with
the cheaper of a greedy dive and the two heuristics so the bound is tight
from the start; seeding never changes the returned optimum or its
lexicographic tie-break (see _bbpure). The oracle re-derives everything
from the raw instance and enumerates the full Cartesian assignment space,
sharing no search code with the solver.
"""
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import _kernel
from .embedding import EmbeddingState
from .errors import TooLarge
from .plans import POOL, BackupPlan, SolveConfig
from .topology import PhysicalNetwork

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
BUDGET_EXCEEDED = "budget_exceeded"


@dataclass
class SolveResult:
    status: str  # optimal | infeasible | budget_exceeded
    plan: BackupPlan | None
    objective: int | None
    nodes_explored: int
    runtime_s: float
    backend: str

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _ordered_pairs(state: EmbeddingState):
    """Active cells in branch order: largest group first, then (node, type)."""
    pairs = state.active_pairs()
    return sorted(pairs, key=lambda ij: (-int(state.m[ij]), ij[0], ij[1]))


def _candidates(net: PhysicalNetwork, i: int, free, m_ij: int, d_max: int):
    """Hosts within the hop bound that could ever fit a pool for this cell."""
    out = []
    for n in range(net.node_count):
        if n == i:
            continue
        d = net.hop_dist[i, n]
        if d < 0 or d > d_max:
            continue
        if m_ij > free[n]:
            continue
        out.append(n)
    return out


def _assignment_cost(assign, pairs, m_of, n_types, free):
    """Pool-max cost of a full assignment vector, or None if it overfills."""
    pools = {}
    used = {}
    cost = 0
    for p, host in enumerate(assign):
        j = pairs[p][1]
        need = m_of[p] - pools.get((host, j), 0)
        if need > 0:
            if used.get(host, 0) + need > free[host]:
                return None
            pools[(host, j)] = pools.get((host, j), 0) + need
            used[host] = used.get(host, 0) + need
            cost += need
    return cost


def _greedy_dive(pairs, m_of, cands, n_types, free):
    """One deterministic descent picking the cheapest host per cell."""
    pools = {}
    used = {}
    assign = []
    for p, (i, j) in enumerate(pairs):
        best_n = -1
        best_inc = None
        for n in cands[p]:
            inc = max(0, m_of[p] - pools.get((n, j), 0))
            if inc > 0 and used.get(n, 0) + inc > free[n]:
                continue
            if best_inc is None or inc < best_inc:
                best_inc = inc
                best_n = n
                if inc == 0:
                    break
        if best_n < 0:
            return None
        pools[(best_n, j)] = pools.get((best_n, j), 0) + best_inc
        used[best_n] = used.get(best_n, 0) + best_inc
        assign.append(best_n)
    return assign


def _heuristic_seed(net, state, cfg, pairs):
    """Assignment vectors from both heuristics, when they protect everything."""
    from .heuristics import bs_pull, bs_push

    pool_cfg = SolveConfig(
        d_max=cfg.d_max, big_M=cfg.big_M, allocation_mode=POOL
    )
    out = []
    for algo in (bs_pull, bs_push):
        plan = algo(net, state, pool_cfg)
        if plan.unprotected:
            continue
        out.append([plan.assignments[ij] for ij in pairs])
    return out


def _plan_from_assignment(assign, pairs, state):
    n_nodes, n_types = state.m.shape
    plan = BackupPlan.empty(n_nodes, n_types)
    for p, host in enumerate(assign):
        i, j = pairs[p]
        plan.assignments[(i, j)] = int(host)
        plan.x[host, j] = max(plan.x[host, j], state.m[i, j])
    return plan


def solve_exact(net: PhysicalNetwork, state: EmbeddingState, cfg: SolveConfig) -> SolveResult:
    """Minimize total backups subject to the placement rules; proven optimal.

    Returns status "infeasible" when some protected cell cannot be hosted
    under any assignment, and "budget_exceeded" (with the best incumbent,
    flagged non-optimal) when cfg.node_budget or cfg.time_budget runs out.
    """
    t0 = time.perf_counter()
    backend = _kernel.active_backend()
    n_nodes, n_types = state.m.shape
    pairs = _ordered_pairs(state)
    free = [int(c) for c in (net.capacity - state.load())]

    if not pairs:
        return SolveResult(
            OPTIMAL, BackupPlan.empty(n_nodes, n_types), 0, 0,
            time.perf_counter() - t0, backend,
        )

    m_of = [int(state.m[ij]) for ij in pairs]
    cands = [
        _candidates(net, i, free, m_of[p], cfg.d_max)
        for p, (i, j) in enumerate(pairs)
    ]
    if any(not c for c in cands):
        return SolveResult(
            INFEASIBLE, None, None, 0, time.perf_counter() - t0, backend
        )

    seeds = []
    dive = _greedy_dive(pairs, m_of, cands, n_types, free)
    if dive is not None:
        seeds.append(dive)
    seeds.extend(_heuristic_seed(net, state, cfg, pairs))
    seed_assign, seed_cost = None, -1
    for cand in seeds:
        cost = _assignment_cost(cand, pairs, m_of, n_types, free)
        if cost is not None and (seed_cost < 0 or cost < seed_cost):
            seed_assign, seed_cost = cand, cost

    pair_i = np.asarray([ij[0] for ij in pairs], dtype=np.int64)
    pair_j = np.asarray([ij[1] for ij in pairs], dtype=np.int64)
    pair_m = np.asarray(m_of, dtype=np.int64)
    cand_start = np.zeros(len(pairs) + 1, dtype=np.int64)
    for p, c in enumerate(cands):
        cand_start[p + 1] = cand_start[p] + len(c)
    cand_flat = np.asarray(
        [n for c in cands for n in c], dtype=np.int64
    )
    free_arr = np.asarray(free, dtype=np.int64)
    seed_arr = (
        np.asarray(seed_assign, dtype=np.int64) if seed_assign is not None else None
    )

    depth = len(pairs) + 100
    if sys.getrecursionlimit() < depth + 1000:
        sys.setrecursionlimit(depth + 1000)

    status_code, best_cost, best_assign, nodes = _kernel.bb_search(
        n_nodes,
        n_types,
        pair_i,
        pair_j,
        pair_m,
        cand_flat,
        cand_start,
        free_arr,
        seed_arr,
        seed_cost,
        cfg.node_budget or 0,
        cfg.time_budget or 0.0,
    )
    runtime = time.perf_counter() - t0

    if best_cost < 0:
        status = BUDGET_EXCEEDED if status_code == _kernel.STATUS_BUDGET else INFEASIBLE
        return SolveResult(status, None, None, nodes, runtime, backend)
    plan = _plan_from_assignment(list(best_assign), pairs, state)
    status = OPTIMAL if status_code == _kernel.STATUS_DONE else BUDGET_EXCEEDED
    return SolveResult(status, plan, int(best_cost), nodes, runtime, backend)


def oracle_enumerate(
    net: PhysicalNetwork,
    state: EmbeddingState,
    cfg: SolveConfig,
    limit: int = 10_000_000,
) -> int | None:
    """Brute-force optimum by enumerating every host assignment combination.

    Independent of solve_exact: candidate sets, pool sizing, and capacity are
    all re-derived here from the raw instance. Returns None when no feasible
    assignment exists. Raises TooLarge when the Cartesian space exceeds
    `limit` combinations.
    """
    n_nodes, n_types = state.m.shape
    cells = [(i, j) for i in range(n_nodes) for j in range(n_types) if state.m[i, j] > 0]
    if not cells:
        return 0

    load = state.load()
    headroom = [int(net.capacity[n] - load[n]) for n in range(n_nodes)]
    options = []
    for i, j in cells:
        hosts = [
            n
            for n in range(n_nodes)
            if n != i and 0 <= net.hop_dist[i, n] <= cfg.d_max
        ]
        if not hosts:
            return None
        options.append(hosts)

    space = 1
    for hosts in options:
        space *= len(hosts)
        if space > limit:
            raise TooLarge(f"assignment space exceeds {limit} combinations")

    best = None

    def walk(idx, pools, used, cost):
        nonlocal best
        if idx == len(cells):
            if best is None or cost < best:
                best = cost
            return
        i, j = cells[idx]
        group = int(state.m[i, j])
        for n in options[idx]:
            have = pools.get((n, j), 0)
            extra = group - have if group > have else 0
            if used.get(n, 0) + extra > headroom[n]:
                continue
            if extra:
                pools[(n, j)] = have + extra
                used[n] = used.get(n, 0) + extra
            walk(idx + 1, pools, used, cost + extra)
            if extra:
                pools[(n, j)] = have
                used[n] -= extra
    walk(0, {}, {}, 0)
    return best
