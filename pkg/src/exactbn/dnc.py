"""Divide and conquer over ordered node partitions.

A subproblem ``(P, M)`` orders the nodes of ``M`` after a fixed block of
predecessors ``P``; each member may draw parents from ``P`` and from the
members placed before it. Splitting ``M`` into an earlier part ``M0`` and a
later part ``M1`` gives value(P, M) = max over splits of
value(P, M0) + value(P | M0, M1). Nothing is memoised across splits, so live
memory stays at one leaf table plus the recursion stack.
"""

import math

from . import nodeset
from .errors import InfeasibleError, InputError
from .scores import NEG_INF
from .subset_dp import best_parents_direct, result_from_order


def solve_subproblem_dp(allowed, members, table, meter=None):
    """Best ordering of ``members`` after ``allowed``; returns ``(score, order)``.

    Plain subset DP over ``members``; best-parent values come from family
    scans against ``allowed | Y - v`` so ``allowed`` may be arbitrarily large.
    """
    if allowed & members:
        raise InputError("predecessor block and members must be disjoint")
    items = nodeset.members(members)
    m = len(items)
    size = 1 << m
    if meter is not None:
        meter.alloc(size)
    g = [NEG_INF] * size
    sink = [-1] * size
    g[0] = 0.0
    for y in range(1, size):
        best = NEG_INF
        arg = -1
        real = 0
        x = y
        while x:
            low = x & -x
            real |= 1 << items[low.bit_length() - 1]
            x ^= low
        base = allowed | real
        x = y
        while x:
            low = x & -x
            j = low.bit_length() - 1
            v = items[j]
            prev = g[y ^ low]
            if prev != NEG_INF:
                cand = prev + best_parents_direct(v, base ^ (1 << v), table)[0]
                if cand > best:
                    best = cand
                    arg = j
            x ^= low
        g[y] = best
        sink[y] = arg

    order = []
    y = size - 1
    if g[y] != NEG_INF:
        while y:
            j = sink[y]
            order.append(items[j])
            y ^= 1 << j
        order.reverse()
    if meter is not None:
        meter.free(size)
    return g[size - 1], order


def _finish(table, score, order, algorithm):
    if score == NEG_INF:
        raise InfeasibleError("no DAG has a finite score")
    return result_from_order(table, order, score, algorithm)


def solve_partitioned(table, s, meter=None):
    """Best of all splits into a first block of ``s`` nodes and the remaining ``n - s``."""
    n = table.n
    if not (2 * s >= n and s <= n):
        raise InputError(f"split size must satisfy n/2 <= s <= n, got s={s} for n={n}")
    full = nodeset.full(n)
    best, best_order = NEG_INF, None
    for first in nodeset.subsets_of_size(range(n), s):
        a, order_a = solve_subproblem_dp(0, first, table, meter)
        if a == NEG_INF:
            continue
        b, order_b = solve_subproblem_dp(first, full ^ first, table, meter)
        # Masks come in increasing order; strict > lets the smaller one win ties.
        if a + b > best:
            best, best_order = a + b, order_a + order_b
    return _finish(table, best, best_order, "part")


def block_size(n, depth):
    return max(1, math.ceil(n / 2**depth))


def _solve_block(allowed, members, block, table, meter):
    m = members.bit_count()
    if m <= block:
        return solve_subproblem_dp(allowed, members, table, meter)
    if meter is not None:
        meter.alloc(1)  # one running maximum per recursion frame
    best, best_order = NEG_INF, None
    for first in nodeset.subsets_of_size(nodeset.members(members), (m + 1) // 2):
        a, order_a = _solve_block(allowed, first, block, table, meter)
        if a == NEG_INF:
            continue
        b, order_b = _solve_block(allowed | first, members ^ first, block, table, meter)
        if a + b > best:
            best, best_order = a + b, order_a + order_b
    if meter is not None:
        meter.free(1)
    return best, best_order


def solve_dnc(table, depth, meter=None):
    """Balanced recursive partitioning, ``depth`` levels deep, DP on the leaves.

    Leaves hold at most ceil(n / 2^depth) nodes; the first part of each split
    takes the ceiling half. Depth 0 is the plain subset DP; depth
    ceil(log2 n) runs in polynomial space.
    """
    if depth < 0:
        raise InputError("depth must be non-negative")
    n = table.n
    block = block_size(n, depth)
    score, order = _solve_block(0, nodeset.full(n), block, table, meter)
    return _finish(table, score, order, "dnc")


def max_depth(n):
    return max(0, math.ceil(math.log2(n))) if n > 1 else 0
