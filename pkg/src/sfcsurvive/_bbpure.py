"""Pure-Python branch-and-bound kernel for minimum shared-backup placement.

This is the reference implementation of the search; `_bbcore.pyx` is a
compiled twin with identical semantics (same visit order, same tie-breaks,
same node accounting), so either backend produces byte-identical results.

Search space: each protected (node, type) cell picks one backup host from its
candidate list. A host's pool for a type is the maximum group size assigned
to it, and pools consume node capacity. Cells are branched in the given
order; candidate hosts are tried in ascending id, which makes the first
optimum found the lexicographically smallest one.

Lower bound: current pool total plus, per type, the largest unavoidable pool
increment among its unassigned cells (the cheapest admissible host for each
cell, maximized over cells). Increments are measured against current pools,
which only grow deeper in the tree, so the bound never overshoots a real
completion. A cell with no admissible host kills the branch outright:
capacity headroom for a fixed type never improves deeper in the tree.
"""
import time

INF = float("inf")

STATUS_DONE = 0  # search space exhausted: result is proven optimal/infeasible
STATUS_BUDGET = 1  # node or time budget hit: best incumbent returned


def bb_search(
    n_nodes,
    n_types,
    pair_i,
    pair_j,
    pair_m,
    cand_flat,
    cand_start,
    free,
    seed_assign=None,
    seed_cost=-1,
    node_budget=0,
    time_budget=0.0,
):
    """Run the search; returns (status, best_cost, best_assign, nodes).

    pair_* are parallel arrays over cells in branch order; cand_flat and
    cand_start store each cell's candidate hosts CSR-style, ascending.
    free[n] is the slot headroom of node n. seed_assign/seed_cost prime
    the incumbent without excluding equal-cost plans from the search, so
    the lexicographic tie-break is unaffected by seeding. best_cost is -1
    when no feasible assignment exists (or none was found in budget).
    """
    n_pairs = len(pair_i)
    pools = [0] * (n_nodes * n_types)
    used = [0] * n_nodes
    assign = [-1] * n_pairs

    best_assign = list(seed_assign) if seed_assign is not None else [-1] * n_pairs
    best_cost = seed_cost if seed_assign is not None else -1
    # Prune when bound >= cutoff. A seeded incumbent keeps cutoff one above
    # its cost so the search can still reach an equal-cost leaf and replace
    # the seed with the lexicographically smallest optimal plan.
    cutoff = seed_cost + 1 if seed_assign is not None else INF

    nodes = 0
    stopped = False
    deadline = time.perf_counter() + time_budget if time_budget > 0 else 0.0
    r = [0] * n_types

    def dfs(p, cost):
        nonlocal nodes, stopped, best_cost, cutoff
        nodes += 1
        if node_budget > 0 and nodes > node_budget:
            stopped = True
            return
        if time_budget > 0 and (nodes & 255) == 0 and time.perf_counter() > deadline:
            stopped = True
            return

        if p == n_pairs:
            if cost < cutoff:
                best_assign[:] = assign
                best_cost = cost
                cutoff = cost
            return

        for j in range(n_types):
            r[j] = 0
        for q in range(p, n_pairs):
            j = pair_j[q]
            m = pair_m[q]
            best_inc = -1
            for c in range(cand_start[q], cand_start[q + 1]):
                n = cand_flat[c]
                inc = m - pools[n * n_types + j]
                if inc <= 0:
                    best_inc = 0
                    break
                if used[n] + inc > free[n]:
                    continue
                if best_inc < 0 or inc < best_inc:
                    best_inc = inc
            if best_inc < 0:
                return  # some cell can no longer be hosted anywhere
            if best_inc > r[j]:
                r[j] = best_inc
        if cost + sum(r) >= cutoff:
            return

        j = pair_j[p]
        m = pair_m[p]
        for c in range(cand_start[p], cand_start[p + 1]):
            n = cand_flat[c]
            slot = n * n_types + j
            inc = m - pools[slot]
            if inc < 0:
                inc = 0
            if used[n] + inc > free[n]:
                continue
            pools[slot] += inc
            used[n] += inc
            assign[p] = n
            dfs(p + 1, cost + inc)
            pools[slot] -= inc
            used[n] -= inc
            if stopped:
                return
        assign[p] = -1

    dfs(0, 0)
    status = STATUS_BUDGET if stopped else STATUS_DONE
    return status, best_cost, best_assign, nodes
