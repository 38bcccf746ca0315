"""Dynamic programming over the full subset lattice, plus the shared result type.

Phase one tabulates, for every node v and every Y not containing v, the best
local score among listed parent sets inside Y. Phase two runs the sink
recurrence g(Y) = max_v g(Y - v) + best_v(Y - v) over all 2^n subsets.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from . import nodeset
from .errors import InfeasibleError, InputError, ResourceLimitError
from .meter import TableMeter
from .scores import NEG_INF, LocalScoreTable

DEFAULT_MAX_NODES_FULL = 26
RESCORE_TOL = 1e-9


@dataclass(frozen=True)
class DagResult:
    """An optimal DAG: one parent-set mask per node and its total score.

    Construction checks acyclicity, that every parent set is listed, and that
    the parent sets re-score to ``total_score``.
    """

    table: LocalScoreTable = field(repr=False, compare=False)
    parents: tuple
    total_score: float
    algorithm: str
    orientation: Optional[int] = None

    def __post_init__(self):
        t = self.table
        if len(self.parents) != t.n:
            raise ValueError("need one parent set per node")
        for v, pa in enumerate(self.parents):
            if not t.is_listed(v, pa):
                raise ValueError(f"parent set of {t.names[v]} is not listed")
        if topological_order(self.parents) is None:
            raise ValueError("parent sets form a cycle")
        rescored = sum(t.score(v, pa) for v, pa in enumerate(self.parents))
        if abs(rescored - self.total_score) > RESCORE_TOL:
            raise ValueError(f"reported score {self.total_score!r} but DAG scores {rescored!r}")

    @property
    def arcs(self):
        return sorted((u, v) for v, pa in enumerate(self.parents) for u in nodeset.members(pa))

    def to_text(self):
        names = self.table.names
        lines = [
            f"{names[v]} <- {{{','.join(self.table.mask_names(pa))}}}"
            for v, pa in enumerate(self.parents)
        ]
        lines.append(f"score {format(self.total_score, '.17g')}")
        return "\n".join(lines) + "\n"


def topological_order(parents):
    """Kahn's algorithm on parent masks; ``None`` if there is a cycle."""
    n = len(parents)
    remaining = nodeset.full(n)
    placed = 0
    order = []
    while remaining:
        ready = [v for v in nodeset.members(remaining) if parents[v] & ~placed == 0]
        if not ready:
            return None
        for v in ready:
            order.append(v)
            placed |= 1 << v
            remaining &= ~(1 << v)
    return order


def result_from_order(table, order, total_score, algorithm, orientation=None):
    """Best parents for each node given its predecessors in ``order``."""
    parents = [0] * table.n
    before = 0
    for v in order:
        _, pa = best_parents_direct(v, before, table)
        if pa is None:
            raise InfeasibleError(f"node {table.names[v]} has no admissible parent set")
        parents[v] = pa
        before |= 1 << v
    return DagResult(table, tuple(parents), total_score, algorithm, orientation)


def best_parents_direct(v, Y, table):
    """Best listed parent set of ``v`` inside ``Y`` by scanning the family.

    Returns ``(score, mask)``; ties go to the smaller mask. ``(-inf, None)``
    when no listed set fits.
    """
    if Y >> v & 1:
        raise InputError(f"node {v} must not be in the candidate set")
    for mask, score in table.ranked_family(v):
        if mask & ~Y == 0:
            return score, mask
    return NEG_INF, None


@lru_cache(maxsize=8)
def _levels(bits):
    """Indices 0..2^bits-1 grouped by popcount, increasing."""
    idx = np.arange(1 << bits, dtype=np.int64)
    card = np.bitwise_count(idx)
    order = np.argsort(card, kind="stable")
    bounds = np.searchsorted(card[order], np.arange(bits + 2))
    return [order[bounds[c] : bounds[c + 1]] for c in range(bits + 1)]


@dataclass
class FhatTable:
    """Best local score of ``node`` for every candidate set over the other n-1 nodes.

    ``values`` is indexed by the candidate mask with the node's own bit squeezed
    out (see :func:`nodeset.compress`).
    """

    node: int
    values: np.ndarray

    def __getitem__(self, Y):
        return float(self.values[nodeset.compress(Y, self.node)])


def build_fhat(v, table):
    """Tabulate best_v(Y) for all Y over N - v, by increasing |Y|.

    best_v(Y) = max(f_v(Y), max_{u in Y} best_v(Y - u))
    """
    bits = table.n - 1
    vals = np.full(1 << bits, NEG_INF)
    for mask, score in table.family(v):
        vals[nodeset.compress(mask, v)] = score
    for level in _levels(bits)[1:]:
        for u in range(bits):
            sel = level[(level >> u) & 1 == 1]
            vals[sel] = np.maximum(vals[sel], vals[sel ^ (1 << u)])
    return FhatTable(v, vals)


@dataclass
class GTable:
    """g(Y) for every Y over N, with the maximising sink (-1 for the empty set)."""

    values: np.ndarray
    choice: np.ndarray


def build_g(fhats, n):
    g = np.full(1 << n, NEG_INF)
    choice = np.full(1 << n, -1, dtype=np.int8)
    g[0] = 0.0
    for level in _levels(n)[1:]:
        best = np.full(level.size, NEG_INF)
        arg = np.full(level.size, -1, dtype=np.int8)
        for v in range(n):
            has = (level >> v) & 1 == 1
            prev = level[has] ^ (1 << v)
            squeezed = (prev & ((1 << v) - 1)) | ((prev >> (v + 1)) << v)
            cand = g[prev] + fhats[v].values[squeezed]
            # Strict comparison keeps the smallest sink index on ties.
            better = cand > best[has]
            pos = np.flatnonzero(has)[better]
            best[pos] = cand[better]
            arg[pos] = v
        g[level] = best
        choice[level] = arg
    return GTable(g, choice)


def solve_full(table, max_nodes=DEFAULT_MAX_NODES_FULL, meter=None):
    """Optimal DAG by the two-phase subset DP (all best-parent tables, then g)."""
    n = table.n
    if n > max_nodes:
        raise ResourceLimitError(
            f"full DP limited to {max_nodes} nodes ((n+1)*2^n = {(n + 1) << n} entries)"
        )
    meter = meter if meter is not None else TableMeter()
    fhats = []
    for v in range(n):
        meter.alloc(1 << (n - 1))
        fhats.append(build_fhat(v, table))
    meter.alloc(1 << n)
    gt = build_g(fhats, n)
    score = float(gt.values[-1])
    if score == NEG_INF:
        meter.free(n * (1 << (n - 1)) + (1 << n))
        raise InfeasibleError("no DAG has a finite score")

    parents = [0] * n
    Y = nodeset.full(n)
    while Y:
        v = int(gt.choice[Y])
        Y ^= 1 << v
        parents[v] = best_parents_direct(v, Y, table)[1]
    meter.free(n * (1 << (n - 1)) + (1 << n))
    return DagResult(table, tuple(parents), score, "full")
