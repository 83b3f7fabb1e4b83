# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled branch-and-bound kernel.

Semantically identical to _bbpure.bb_search: same visit order, same bound,
same tie-breaks, same node accounting. Keep the two in lockstep; the test
suite cross-checks them on random instances.
"""
import time

import numpy as np

STATUS_DONE = 0
STATUS_BUDGET = 1

cdef long long _NO_LIMIT = (1 << 62)


cdef class _Search:
    cdef long[::1] pair_i
    cdef long[::1] pair_j
    cdef long[::1] pair_m
    cdef long[::1] cand_flat
    cdef long[::1] cand_start
    cdef long[::1] free
    cdef long[::1] pools
    cdef long[::1] used
    cdef long[::1] assign
    cdef long[::1] best_assign
    cdef long[::1] r
    cdef long n_nodes, n_types, n_pairs
    cdef long long best_cost, cutoff, nodes, node_budget
    cdef double deadline, time_budget
    cdef bint stopped

    def __init__(self, n_nodes, n_types, pair_i, pair_j, pair_m,
                 cand_flat, cand_start, free):
        self.n_nodes = n_nodes
        self.n_types = n_types
        self.pair_i = np.ascontiguousarray(pair_i, dtype=np.int64)
        self.pair_j = np.ascontiguousarray(pair_j, dtype=np.int64)
        self.pair_m = np.ascontiguousarray(pair_m, dtype=np.int64)
        self.cand_flat = np.ascontiguousarray(cand_flat, dtype=np.int64)
        self.cand_start = np.ascontiguousarray(cand_start, dtype=np.int64)
        self.free = np.ascontiguousarray(free, dtype=np.int64)
        self.n_pairs = len(pair_i)
        self.pools = np.zeros(n_nodes * n_types, dtype=np.int64)
        self.used = np.zeros(n_nodes, dtype=np.int64)
        self.assign = np.full(self.n_pairs, -1, dtype=np.int64)
        self.best_assign = np.full(self.n_pairs, -1, dtype=np.int64)
        self.r = np.zeros(n_types, dtype=np.int64)

    cdef void dfs(self, long p, long long cost):
        cdef long q, j, m, n, c, inc, slot, best_inc
        cdef long long lb

        self.nodes += 1
        if self.node_budget > 0 and self.nodes > self.node_budget:
            self.stopped = True
            return
        if self.time_budget > 0 and (self.nodes & 255) == 0:
            if time.perf_counter() > self.deadline:
                self.stopped = True
                return

        if p == self.n_pairs:
            if cost < self.cutoff:
                self.best_assign[:] = self.assign
                self.best_cost = cost
                self.cutoff = cost
            return

        for j in range(self.n_types):
            self.r[j] = 0
        for q in range(p, self.n_pairs):
            j = self.pair_j[q]
            m = self.pair_m[q]
            best_inc = -1
            for c in range(self.cand_start[q], self.cand_start[q + 1]):
                n = self.cand_flat[c]
                inc = m - self.pools[n * self.n_types + j]
                if inc <= 0:
                    best_inc = 0
                    break
                if self.used[n] + inc > self.free[n]:
                    continue
                if best_inc < 0 or inc < best_inc:
                    best_inc = inc
            if best_inc < 0:
                return  # some cell can no longer be hosted anywhere
            if best_inc > self.r[j]:
                self.r[j] = best_inc
        lb = cost
        for j in range(self.n_types):
            lb += self.r[j]
        if lb >= self.cutoff:
            return

        j = self.pair_j[p]
        m = self.pair_m[p]
        for c in range(self.cand_start[p], self.cand_start[p + 1]):
            n = self.cand_flat[c]
            slot = n * self.n_types + j
            inc = m - self.pools[slot]
            if inc < 0:
                inc = 0
            if self.used[n] + inc > self.free[n]:
                continue
            self.pools[slot] += inc
            self.used[n] += inc
            self.assign[p] = n
            self.dfs(p + 1, cost + inc)
            self.pools[slot] -= inc
            self.used[n] -= inc
            if self.stopped:
                return
        self.assign[p] = -1

    def run(self, seed_assign, long long seed_cost, long long node_budget,
            double time_budget):
        cdef long[::1] seed_view
        if seed_assign is not None:
            seed_view = np.ascontiguousarray(seed_assign, dtype=np.int64)
            self.best_assign[:] = seed_view
            self.best_cost = seed_cost
            self.cutoff = seed_cost + 1
        else:
            self.best_cost = -1
            self.cutoff = _NO_LIMIT
        self.nodes = 0
        self.stopped = False
        self.node_budget = node_budget
        self.time_budget = time_budget
        self.deadline = time.perf_counter() + time_budget if time_budget > 0 else 0.0
        self.dfs(0, 0)
        status = STATUS_BUDGET if self.stopped else STATUS_DONE
        return status, int(self.best_cost), np.asarray(self.best_assign).tolist(), int(self.nodes)


def bb_search(n_nodes, n_types, pair_i, pair_j, pair_m, cand_flat, cand_start,
              free, seed_assign=None, seed_cost=-1, node_budget=0,
              time_budget=0.0):
    """Drop-in compiled equivalent of _bbpure.bb_search."""
    search = _Search(n_nodes, n_types, pair_i, pair_j, pair_m,
                     cand_flat, cand_start, free)
    return search.run(seed_assign, seed_cost, node_budget, time_budget)
