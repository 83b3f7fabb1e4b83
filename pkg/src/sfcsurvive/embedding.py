"""Service chains and the first-fit embedder that produces per-node VNF counts.

The embedder is deliberately simple: downstream provisioning only consumes the
node-by-type count matrix `m` and never looks at chain structure, so any
placement that respects node capacity works. Chains are walked along one
shortest source->destination path; each VNF lands on the first path node with
a free slot, falling back to the nearest off-path node (by hop distance to the
path, lowest id first).
"""
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import NodeOutOfRange
from .topology import PhysicalNetwork, shortest_path


@dataclass(frozen=True)
class ServiceChain:
    id: str
    vnf_types: tuple  # ordered type ids
    source: int
    destination: int

    def __post_init__(self):
        if not self.vnf_types:
            raise ValueError(f"chain {self.id} has no VNFs")
        object.__setattr__(self, "vnf_types", tuple(int(t) for t in self.vnf_types))


@dataclass
class EmbeddingState:
    """Aggregated placement state: m[node, type] counts plus raw placements.

    `placements` holds one (chain, host list) record per successful embed, in
    order, so `m` is always exactly the aggregation of placements even when a
    chain id is embedded more than once.
    """

    type_count: int
    m: np.ndarray  # shape (N, J), int
    placements: list = field(default_factory=list)  # (ServiceChain, [host ids])

    @classmethod
    def empty(cls, net: PhysicalNetwork, type_count: int) -> "EmbeddingState":
        return cls(
            type_count=type_count,
            m=np.zeros((net.node_count, type_count), dtype=np.int64),
        )

    def load(self) -> np.ndarray:
        """Per-node VNF count u_n (sum of m over types)."""
        return self.m.sum(axis=1)

    def total_vnfs(self) -> int:
        return int(self.m.sum())

    def active_pairs(self) -> list[tuple[int, int]]:
        """(node, type) cells hosting at least one VNF, ascending."""
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self.m))]

    def copy(self) -> "EmbeddingState":
        return EmbeddingState(
            type_count=self.type_count,
            m=self.m.copy(),
            placements=[(chain, list(hosts)) for chain, hosts in self.placements],
        )


def embed_chain(net: PhysicalNetwork, state: EmbeddingState, chain: ServiceChain) -> bool:
    """Place one chain; returns True and mutates state, or False untouched.

    Placement is computed against a scratch copy first so a rejected chain
    (some VNF has no free slot anywhere) leaves the state unchanged.
    """
    if not (0 <= chain.source < net.node_count) or not (
        0 <= chain.destination < net.node_count
    ):
        raise NodeOutOfRange(
            f"chain {chain.id} endpoints ({chain.source},{chain.destination})"
        )
    for t in chain.vnf_types:
        if not (0 <= t < state.type_count):
            raise ValueError(f"chain {chain.id} uses unknown VNF type {t}")

    path = shortest_path(net, chain.source, chain.destination)
    if path is None:
        return False
    # Off-path fallback order: closest to the path first, then lowest id.
    on_path = set(path)
    off_path = sorted(
        (n for n in range(net.node_count) if n not in on_path),
        key=lambda n: (
            min(
                (net.hop_dist[n, p] for p in path if net.hop_dist[n, p] >= 0),
                default=net.node_count + 1,
            ),
            n,
        ),
    )
    order = path + off_path

    load = state.load()
    placed = []
    for t in chain.vnf_types:
        host = next(
            (n for n in order if load[n] < net.capacity[n]), None
        )
        if host is None:
            return False
        load[host] += 1
        placed.append((host, t))

    for host, t in placed:
        state.m[host, t] += 1
    state.placements.append((chain, [host for host, _ in placed]))
    return True


def utilization(net: PhysicalNetwork, state: EmbeddingState) -> float:
    """Fraction of total VNF slots in use, in [0, 1]."""
    total = int(net.capacity.sum())
    return state.total_vnfs() / total if total else 0.0


def chains_from_json(objs) -> list[ServiceChain]:
    return [
        ServiceChain(
            id=str(o["id"]),
            vnf_types=tuple(o["types"]),
            source=int(o["src"]),
            destination=int(o["dst"]),
        )
        for o in objs
    ]


def state_to_json(state: EmbeddingState) -> dict:
    return {"m": [[int(v) for v in row] for row in state.m]}


def state_from_json(obj: dict, net: PhysicalNetwork) -> EmbeddingState:
    m = np.asarray(obj["m"], dtype=np.int64)
    if m.shape[0] != net.node_count:
        raise ValueError(
            f"m has {m.shape[0]} rows for a {net.node_count}-node network"
        )
    if (m < 0).any():
        raise ValueError("m entries must be non-negative")
    over = np.nonzero(m.sum(axis=1) > net.capacity)[0]
    if over.size:
        raise ValueError(f"embedded load exceeds capacity at nodes {over.tolist()}")
    return EmbeddingState(type_count=m.shape[1], m=m)


def load_state(path, net: PhysicalNetwork) -> EmbeddingState:
    with open(path) as fh:
        return state_from_json(json.load(fh), net)
