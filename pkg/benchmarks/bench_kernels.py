#!/usr/bin/env python3
"""Benchmark the compiled branch-and-bound kernel against the pure fallback.

Runs both kernels on identical lowered instances (benchmark-scale scenario
embeddings plus a batch of small random instances), checks they return the
same answers, and reports wall times.

Usage: python3 benchmarks/bench_kernels.py [--seed 0] [--node-budget 2000000]
"""
import argparse
import random
import time

import numpy as np

from sfcsurvive import _bbpure
from sfcsurvive.embedding import EmbeddingState, utilization
from sfcsurvive.plans import SolveConfig
from sfcsurvive.scenario import GeneratorConfig, generate_infrastructure, generate_scenario
from sfcsurvive.topology import build_network

try:
    from sfcsurvive import _bbcore
except ImportError:
    _bbcore = None


def lower(net, state, cfg):
    """Instance -> kernel arrays (same lowering the solver uses, unseeded)."""
    n_nodes, n_types = state.m.shape
    free = (net.capacity - state.load()).astype(np.int64)
    pairs = sorted(
        state.active_pairs(), key=lambda ij: (-int(state.m[ij]), ij[0], ij[1])
    )
    cands = []
    for i, j in pairs:
        cands.append(
            [
                n
                for n in range(n_nodes)
                if n != i
                and 0 <= net.hop_dist[i, n] <= cfg.d_max
                and state.m[i, j] <= free[n]
            ]
        )
    if not pairs or any(not c for c in cands):
        return None
    cand_start = np.zeros(len(pairs) + 1, dtype=np.int64)
    for p, c in enumerate(cands):
        cand_start[p + 1] = cand_start[p] + len(c)
    return dict(
        n_nodes=n_nodes,
        n_types=n_types,
        pair_i=np.asarray([ij[0] for ij in pairs], dtype=np.int64),
        pair_j=np.asarray([ij[1] for ij in pairs], dtype=np.int64),
        pair_m=np.asarray([int(state.m[ij]) for ij in pairs], dtype=np.int64),
        cand_flat=np.asarray([n for c in cands for n in c], dtype=np.int64),
        cand_start=cand_start,
        free=free,
    )


def small_instances(count, seed):
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = rng.randint(5, 8)
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        links = rng.sample(pairs, rng.randint(n - 1, min(12, len(pairs))))
        types = rng.randint(1, 3)
        m = np.zeros((n, types), dtype=np.int64)
        for i, j in rng.sample(
            [(i, j) for i in range(n) for j in range(types)], rng.randint(2, 6)
        ):
            m[i, j] = rng.randint(1, 4)
        caps = [int(m[i].sum()) + rng.randint(1, 6) for i in range(n)]
        net = build_network(n, links, caps)
        out.append(
            (f"small-{k}", net, EmbeddingState(type_count=types, m=m), SolveConfig(d_max=2))
        )
    return out


def scenario_instances(seed):
    gcfg = GeneratorConfig(seed=seed)
    net = generate_infrastructure(gcfg)
    out = []
    for k in (0, 2, 4, 5):
        state = generate_scenario(net, gcfg, k)
        label = f"s{k + 1}(u={utilization(net, state):.2f})"
        out.append((label, net, state, SolveConfig(d_max=2)))
    return out


def run_kernel(kernel, inputs, node_budget):
    t0 = time.perf_counter()
    status, cost, assign, nodes = kernel.bb_search(**inputs, node_budget=node_budget)
    return (status, cost, tuple(assign), nodes), time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--node-budget", type=int, default=2_000_000)
    parser.add_argument("--small", type=int, default=10, help="small instance count")
    args = parser.parse_args()

    if _bbcore is None:
        print("compiled kernel not available; run pip install -e . first")
        return 1

    cases = small_instances(args.small, args.seed) + scenario_instances(args.seed)
    print(f"{'instance':<16} {'pairs':>5} {'cost':>5} {'nodes':>9} "
          f"{'pure_ms':>9} {'compiled_ms':>12} {'speedup':>8}")
    speedups = []
    for label, net, state, cfg in cases:
        inputs = lower(net, state, cfg)
        if inputs is None:
            print(f"{label:<16} {'-':>5} infeasible at the root, skipped")
            continue
        got_c, dt_c = run_kernel(_bbcore, inputs, args.node_budget)
        got_p, dt_p = run_kernel(_bbpure, inputs, args.node_budget)
        if got_p != got_c:
            raise SystemExit(f"kernel mismatch on {label}: {got_p} vs {got_c}")
        status, cost, _, nodes = got_c
        tag = "" if status == _bbpure.STATUS_DONE else "*"
        speedups.append(dt_p / dt_c if dt_c > 0 else float("inf"))
        print(
            f"{label:<16} {len(inputs['pair_i']):>5} {cost:>5}{tag} {nodes:>9} "
            f"{dt_p * 1e3:>9.2f} {dt_c * 1e3:>12.2f} {speedups[-1]:>7.1f}x"
        )
    if speedups:
        print(f"\nmedian speedup: {sorted(speedups)[len(speedups) // 2]:.1f}x "
              f"over {len(speedups)} instances (* = node budget hit)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
