"""Greedy shared-backup placement: the pull and push strategies.

Both run the same round loop per VNF type: score every node as a potential
backup host, pick a winner, size its pool to the largest unprotected group
it can cover, and mark those groups protected. They differ only in the
score. Pull maximizes the number of VNFs the host would protect; push
maximizes the number of distinct source nodes. Groups still unprotected
when no host can take anyone (no capacity in range) are reported in the
plan's unprotected list rather than failing the run.

Pool allocation (the default) treats repeated selections of the same host
for the same type as one shared pool and only grows it to the new maximum;
fresh allocation adds the full amount each time, which is the literal
reading of the round loop, and is kept for comparison.
"""
from dataclasses import dataclass, field

import numpy as np

from .embedding import EmbeddingState
from .plans import FRESH, BackupPlan, SolveConfig
from .topology import PhysicalNetwork


@dataclass
class RoundState:
    """Working state of one heuristic run."""

    bnodes: dict = field(default_factory=dict)  # type -> set of protected sources
    pools: np.ndarray = None  # (N, J) allocated backups
    load: np.ndarray = None  # per-node VNFs plus allocated backups

    @classmethod
    def fresh_for(cls, net: PhysicalNetwork, state: EmbeddingState) -> "RoundState":
        return cls(
            bnodes={j: set() for j in range(state.type_count)},
            pools=np.zeros_like(state.m),
            load=state.load().astype(np.int64),
        )


def source_neighbors(
    net: PhysicalNetwork,
    state: EmbeddingState,
    rs: RoundState,
    n: int,
    j: int,
    cfg: SolveConfig,
) -> tuple[set, int]:
    """Unprotected sources whose type-j groups node n could back up now.

    Returns the source set and the total VNF count it represents. A source
    qualifies when it hosts the type, sits within the hop bound, and n has
    room for the required pool under the configured allocation mode.
    """
    protected = rs.bnodes[j]
    cap = int(net.capacity[n])
    load_n = int(rs.load[n])
    pool_nj = int(rs.pools[n, j])
    sources = set()
    b = 0
    for i in range(net.node_count):
        if i == n or i in protected:
            continue
        m_ij = int(state.m[i, j])
        if m_ij < 1:
            continue
        d = net.hop_dist[i, n]
        if d < 0 or d > cfg.d_max:
            continue
        need = m_ij if cfg.allocation_mode == FRESH else max(0, m_ij - pool_nj)
        if need + load_n > cap:
            continue
        sources.add(i)
        b += m_ij
    return sources, b


def _run(net, state, cfg, prefer_push):
    rs = RoundState.fresh_for(net, state)
    plan = BackupPlan.empty(net.node_count, state.type_count)

    for j in range(state.type_count):
        while True:
            best_n = -1
            best_set = None
            best_b = 0
            for n in range(net.node_count):
                sources, b = source_neighbors(net, state, rs, n, j, cfg)
                if not sources:
                    continue
                if prefer_push:
                    better = best_set is None or (len(sources), b, -n) > (
                        len(best_set), best_b, -best_n,
                    )
                else:
                    better = best_set is None or (b, -n) > (best_b, -best_n)
                if better:
                    best_n, best_set, best_b = n, sources, b
            if best_set is None:
                break

            size = max(int(state.m[i, j]) for i in best_set)
            if cfg.allocation_mode == FRESH:
                delta = size
            else:
                delta = max(0, size - int(rs.pools[best_n, j]))
            rs.pools[best_n, j] += delta
            rs.load[best_n] += delta
            for i in best_set:
                plan.assignments[(i, j)] = best_n
            rs.bnodes[j] |= best_set

        for i in range(net.node_count):
            if int(state.m[i, j]) >= 1 and i not in rs.bnodes[j]:
                plan.unprotected.append((i, j, int(state.m[i, j])))

    plan.x = rs.pools.copy()
    plan.unprotected.sort()
    return plan


def bs_pull(net: PhysicalNetwork, state: EmbeddingState, cfg: SolveConfig) -> BackupPlan:
    """Each round, host the backups where the most VNFs can share them."""
    return _run(net, state, cfg, prefer_push=False)


def bs_push(net: PhysicalNetwork, state: EmbeddingState, cfg: SolveConfig) -> BackupPlan:
    """Each round, host the backups where the most source nodes are in reach."""
    return _run(net, state, cfg, prefer_push=True)
