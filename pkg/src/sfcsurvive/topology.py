"""Physical infrastructure graph: nodes, links, capacities, hop distances.

Node ids are dense integers 0..N-1. Hop distances are precomputed for all
pairs with one BFS per node; pairs in different components are unreachable
and `hops` reports them as None rather than some large number, so a hop
bound check can never be fooled by a sentinel value.
"""
import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityLengthMismatch, MalformedLink, NodeOutOfRange

# Internal storage marker inside the distance matrix. Never returned by
# hops(); use hops() or within_hops() instead of reading raw -1 entries.
_NO_PATH = -1


@dataclass(frozen=True)
class PhysicalNetwork:
    """Immutable physical graph with per-node VNF slot capacities."""

    node_count: int
    links: frozenset  # frozenset of (a, b) tuples with a < b
    capacity: np.ndarray  # shape (N,), int
    hop_dist: np.ndarray  # shape (N, N), int, -1 where unreachable
    adjacency: tuple = field(repr=False, default=())

    def hops(self, i: int, n: int) -> int | None:
        """Minimum hop count between nodes i and n, None if unreachable."""
        self._check_node(i)
        self._check_node(n)
        d = int(self.hop_dist[i, n])
        return None if d == _NO_PATH else d

    def within_hops(self, i: int, n: int, bound: int) -> bool:
        """True iff i and n are connected by a path of at most `bound` hops."""
        d = self.hops(i, n)
        return d is not None and d <= bound

    def neighbors(self, i: int) -> tuple:
        self._check_node(i)
        return self.adjacency[i]

    def is_connected(self) -> bool:
        return not (self.hop_dist == _NO_PATH).any()

    def _check_node(self, i: int) -> None:
        if not (0 <= i < self.node_count):
            raise NodeOutOfRange(f"node {i} not in 0..{self.node_count - 1}")


def build_network(node_count: int, links, capacities) -> PhysicalNetwork:
    """Construct a PhysicalNetwork and precompute all-pairs hop distances.

    `links` is an iterable of unordered node-id pairs; duplicates collapse
    (links form a set). Raises MalformedLink for self-loops or out-of-range
    endpoints and CapacityLengthMismatch for a bad capacity vector.
    """
    if node_count <= 0:
        raise ValueError(f"node_count must be positive, got {node_count}")
    norm = set()
    for link in links:
        a, b = int(link[0]), int(link[1])
        if a == b:
            raise MalformedLink(f"self-loop on node {a}")
        if not (0 <= a < node_count and 0 <= b < node_count):
            raise MalformedLink(f"link ({a},{b}) out of range for {node_count} nodes")
        norm.add((min(a, b), max(a, b)))
    caps = [int(c) for c in capacities]
    if len(caps) != node_count:
        raise CapacityLengthMismatch(
            f"{len(caps)} capacities for {node_count} nodes"
        )
    if any(c < 0 for c in caps):
        raise ValueError("capacities must be non-negative")

    adj = [[] for _ in range(node_count)]
    for a, b in norm:
        adj[a].append(b)
        adj[b].append(a)
    adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adj)

    dist = np.full((node_count, node_count), _NO_PATH, dtype=np.int64)
    for src in range(node_count):
        dist[src, src] = 0
        queue = deque([src])
        while queue:
            cur = queue.popleft()
            for nxt in adjacency[cur]:
                if dist[src, nxt] == _NO_PATH:
                    dist[src, nxt] = dist[src, cur] + 1
                    queue.append(nxt)

    capacity = np.asarray(caps, dtype=np.int64)
    capacity.setflags(write=False)
    dist.setflags(write=False)
    return PhysicalNetwork(
        node_count=node_count,
        links=frozenset(norm),
        capacity=capacity,
        hop_dist=dist,
        adjacency=adjacency,
    )


def shortest_path(net: PhysicalNetwork, src: int, dst: int) -> list[int] | None:
    """One shortest src->dst path (BFS, lowest-id predecessor), or None.

    Deterministic: among equal-length paths the one whose predecessors have
    the lowest node ids wins, because neighbors are scanned in ascending order.
    """
    net._check_node(src)
    net._check_node(dst)
    if src == dst:
        return [src]
    prev = [-1] * net.node_count
    prev[src] = src
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        for nxt in net.neighbors(cur):
            if prev[nxt] == -1:
                prev[nxt] = cur
                if nxt == dst:
                    path = [dst]
                    while path[-1] != src:
                        path.append(prev[path[-1]])
                    return path[::-1]
                queue.append(nxt)
    return None


def network_to_json(net: PhysicalNetwork) -> dict:
    return {
        "nodes": net.node_count,
        "capacities": [int(c) for c in net.capacity],
        "links": sorted([a, b] for a, b in net.links),
    }


def network_from_json(obj: dict) -> PhysicalNetwork:
    return build_network(obj["nodes"], obj["links"], obj["capacities"])


def load_network(path) -> PhysicalNetwork:
    with open(path) as fh:
        return network_from_json(json.load(fh))
