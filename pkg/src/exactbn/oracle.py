"""Brute-force references for tests: enumerate every node order (n <= 8).

Deliberately shares nothing with the solvers beyond the score table: the
best parent set for a predecessor set is found by a plain scan of the
listed family.
"""

from itertools import permutations

import numpy as np

from .errors import InfeasibleError, InputError, ResourceLimitError
from .scores import NEG_INF
from .subset_dp import DagResult

ORACLE_MAX_NODES = 8
LATTICE_MAX_NODES = 20


def _best_within(table, v, allowed, cache):
    key = (v, allowed)
    if key not in cache:
        best, arg = NEG_INF, None
        for mask, score in table.family(v):
            if mask & ~allowed == 0 and (score > best or (score == best and mask < arg)):
                best, arg = score, mask
        cache[key] = (best, arg)
    return cache[key]


def _best_order(table, orders):
    cache = {}
    best, best_parents = NEG_INF, None
    for perm in orders:
        total = 0.0
        before = 0
        parents = []
        for v in perm:
            s, pa = _best_within(table, v, before, cache)
            total += s
            parents.append((v, pa))
            before |= 1 << v
        if total > best:
            best, best_parents = total, parents
    return best, best_parents


def _guard(table):
    if table.n > ORACLE_MAX_NODES:
        raise ResourceLimitError(
            f"oracle enumerates n! orders; refusing n={table.n} > {ORACLE_MAX_NODES}"
        )


def oracle_solve(table):
    """Best score over all n! orders and a DAG attaining it."""
    _guard(table)
    best, parents = _best_order(table, permutations(range(table.n)))
    if best == NEG_INF:
        raise InfeasibleError("no DAG has a finite score")
    pa = [0] * table.n
    for v, mask in parents:
        pa[v] = mask
    return best, DagResult(table, tuple(pa), best, "oracle")


def oracle_restricted(table, R):
    """Best score over the orders that extend the paired order R."""
    _guard(table)
    orders = (perm for perm in permutations(range(table.n)) if R.is_extended_by(perm))
    return _best_order(table, orders)[0]


def oracle_lattice(n, R):
    """All subsets of the n nodes that satisfy R's prefix condition, as sorted masks."""
    if n > LATTICE_MAX_NODES:
        raise InputError(f"refusing to filter 2^{n} subsets")
    Y = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(Y.size, dtype=bool)
    for a, b in R.oriented():
        ok &= ((Y >> b) & 1 == 0) | ((Y >> a) & 1 == 1)
    return Y[ok].tolist()
