"""Pairwise partial-order scheme.

Fix ``p`` disjoint node pairs. Each of the ``2^p`` orientations of those pairs
is a partial order R; every linear order of the nodes extends at least one of
them, so the optimum is the best over orientations of the optimum restricted
to orders extending R.

For a fixed R only the sets Y that can be a prefix of such an order matter:
Y may contain the later element of a pair only together with the earlier
one. Those sets are indexed densely in mixed radix (a base-3 digit per pair:
neither / earlier only / both; a bit per unpaired node), ``3^p * 2^(n-2p)``
slots in all. Removing a removable element always decrements exactly one
digit, so predecessors sit at ``index - weight``.

Best-parent values are kept only on the lattice. For lattice set Y let
``free(Y)`` be the members with no later pair-partner inside Y (exactly the
removable ones). Then

    best_v(Y) = max( max{f_v(Z) : free(Y) <= Z <= Y},  max_{u in free(Y)} best_v(Y - u) )

and the intervals ``[free(Y), Y]`` partition all subsets of N, so every listed
parent set is read once per orientation: it is scattered into the unique
lattice set whose interval holds it.
"""

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import InfeasibleError, InputError
from .meter import TableMeter
from .scores import NEG_INF
from .subset_dp import result_from_order

STRATEGIES = ("consecutive", "seeded")


@dataclass(frozen=True)
class PairedOrder:
    """``p`` disjoint node pairs and one orientation bit per pair.

    Bit ``q`` of ``orientation`` clear means ``pairs[q][0]`` precedes
    ``pairs[q][1]``; set means the reverse.
    """

    pairs: tuple
    orientation: int = 0

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        ends = [x for pr in pairs for x in pr]
        if len(set(ends)) != len(ends) or any(x < 0 for x in ends):
            raise InputError("pair endpoints must be distinct non-negative nodes")
        if not 0 <= self.orientation < 1 << len(pairs):
            raise InputError(f"orientation {self.orientation} out of range for p={len(pairs)}")

    @property
    def p(self):
        return len(self.pairs)

    def oriented(self):
        """``(earlier, later)`` for every pair."""
        return [
            (b, a) if self.orientation >> q & 1 else (a, b)
            for q, (a, b) in enumerate(self.pairs)
        ]

    def with_orientation(self, orientation):
        return PairedOrder(self.pairs, orientation)

    def contains(self, Y):
        """Whether Y is a prefix-compatible set: a later element only with its earlier one."""
        return all(not (Y >> b & 1) or (Y >> a & 1) for a, b in self.oriented())

    def is_extended_by(self, perm):
        pos = {v: i for i, v in enumerate(perm)}
        return all(pos[a] < pos[b] for a, b in self.oriented())


def make_pairs(n, p, strategy="consecutive", seed=0):
    """``p`` disjoint pairs: (0,1),(2,3),... or the first 2p nodes of a seeded shuffle."""
    if not 0 <= p <= n // 2:
        raise InputError(f"pair count must be in 0..{n // 2}, got {p}")
    if strategy == "consecutive":
        nodes = list(range(2 * p))
    elif strategy == "seeded":
        rng = np.random.default_rng(int(seed) % 2**64)
        nodes = rng.permutation(n)[: 2 * p].tolist()
    else:
        raise InputError(f"unknown pair strategy {strategy!r}")
    return tuple((nodes[2 * q], nodes[2 * q + 1]) for q in range(p))


def max_free_set(Y, R):
    """Members of Y with no later pair-partner in Y."""
    out = Y
    for a, b in R.oriented():
        if Y >> b & 1:
            out &= ~(1 << a)
    return out


def removable_test(Y, u, R):
    return bool(max_free_set(Y, R) >> u & 1)


def tail_scan_max(Y, X, v, table, counter=None):
    """Largest listed f_v(Z) with X <= Z <= Y, scanning the family by size."""
    if Y >> v & 1 or X & ~Y:
        raise InputError("need v outside Y and X inside Y")
    best = NEG_INF
    lo, hi = X.bit_count(), Y.bit_count()
    for mask, score in table.family_by_size(v):
        c = mask.bit_count()
        if c < lo:
            continue
        if c > hi:
            break
        if mask & X == X and mask & ~Y == 0:
            if counter is not None:
                counter.score_evals += 1
            if score > best:
                best = score
    return best


@lru_cache(maxsize=16)
def _geometry(n, p):
    """Lattice indices bucketed by set size; depends on (n, p) only."""
    size = 3**p * 2 ** (n - 2 * p)
    rem = np.arange(size, dtype=np.int64)
    card = np.zeros(size, dtype=np.int8)
    for _ in range(p):
        card += (rem % 3).astype(np.int8)
        rem //= 3
    for _ in range(n - 2 * p):
        card += (rem & 1).astype(np.int8)
        rem >>= 1
    order = np.argsort(card, kind="stable")
    bounds = np.searchsorted(card[order], np.arange(n + 2))
    return tuple(order[bounds[c] : bounds[c + 1]] for c in range(n + 1))


class RestrictedLattice:
    """Dense mixed-radix index of the prefix-compatible sets of a :class:`PairedOrder`.

    Digit order, least significant first: pairs by pair index (radix 3), then
    unpaired nodes by node index (radix 2). With no pairs the index is the
    plain bitmask.
    """

    def __init__(self, n, paired):
        if 2 * paired.p > n or any(x >= n for pr in paired.pairs for x in pr):
            raise InputError("pairs do not fit in the node range")
        self.n = n
        self.paired = paired
        self.p = p = paired.p
        self.oriented = paired.oriented()
        used = {x for pr in paired.pairs for x in pr}
        self.singles = [v for v in range(n) if v not in used]
        self.pair_weights = [3**q for q in range(p)]
        self.single_weights = [3**p << j for j in range(len(self.singles))]
        self.size = 3**p << len(self.singles)
        # slot of each node: (weight, radix, digit value meaning "v is the removable element")
        self.node_slot = [None] * n
        for q, (a, b) in enumerate(self.oriented):
            self.node_slot[a] = (self.pair_weights[q], 3, 1)
            self.node_slot[b] = (self.pair_weights[q], 3, 2)
        for j, v in enumerate(self.singles):
            self.node_slot[v] = (self.single_weights[j], 2, 1)

    def __len__(self):
        return self.size

    def contains(self, Y):
        return Y >> self.n == 0 and self.paired.contains(Y)

    def rank(self, Y):
        if not self.contains(Y):
            raise InputError(f"set {Y:#x} is not in the restricted lattice")
        idx = 0
        for (a, b), w in zip(self.oriented, self.pair_weights):
            idx += w * ((Y >> a & 1) + (Y >> b & 1))
        for v, w in zip(self.singles, self.single_weights):
            idx += w * (Y >> v & 1)
        return idx

    def unrank(self, idx):
        if not 0 <= idx < self.size:
            raise InputError(f"index {idx} out of range 0..{self.size - 1}")
        Y = 0
        for a, b in self.oriented:
            idx, d = divmod(idx, 3)
            if d >= 1:
                Y |= 1 << a
            if d == 2:
                Y |= 1 << b
        for v in self.singles:
            Y |= (idx & 1) << v
            idx >>= 1
        return Y

    def levels(self):
        return _geometry(self.n, self.p)

    def tail_targets(self, table):
        """For every listed (v, Z): the lattice index whose interval holds Z.

        Entries whose target set contains v are dropped (those best-parent
        slots are never read). Returns ``(index, node, score)`` arrays.
        """
        nodes, masks, scores = table.family_arrays()
        one = np.uint64(1)
        Y = masks.copy()
        idx = np.zeros(masks.size, dtype=np.int64)
        for (a, b), w in zip(self.oriented, self.pair_weights):
            has_b = (masks >> np.uint64(b)) & one
            has_a = (masks >> np.uint64(a)) & one
            Y |= has_b << np.uint64(a)
            idx += w * np.where(has_b == 1, 2, has_a).astype(np.int64)
        for v, w in zip(self.singles, self.single_weights):
            idx += w * ((masks >> np.uint64(v)) & one).astype(np.int64)
        keep = ((Y >> nodes.astype(np.uint64)) & one) == 0
        return idx[keep], nodes[keep], scores[keep]


@dataclass
class RestrictedTables:
    """Per-orientation DP state over the lattice.

    ``fhat_values[i, v]`` is the best-parent value of ``v`` at lattice set
    ``i``; it is meaningful only when ``v`` is not in that set.
    """

    g_values: np.ndarray
    g_choice: np.ndarray
    fhat_values: np.ndarray
    lattice: RestrictedLattice = field(repr=False)

    @classmethod
    def allocate(cls, lattice):
        size, n = lattice.size, lattice.n
        return cls(
            np.empty(size),
            np.empty(size, dtype=np.int8),
            np.empty((size, n)),
            lattice,
        )

    def fhat(self, v):
        return self.fhat_values[:, v]

    def order(self):
        """Sink order read back from the stored choices, earliest node first."""
        lat = self.lattice
        idx = lat.size - 1
        seq = []
        while idx:
            v = int(self.g_choice[idx])
            seq.append(v)
            idx -= lat.node_slot[v][0]
        seq.reverse()
        return seq


def algorithm1(R, table, meter=None, tables=None):
    """Optimal score over orders extending R; returns ``(score, tables)``.

    Sets are visited by increasing size. For each set Y: the best sink among
    the removable elements (which fixes g at Y), then best-parent values for
    every v outside Y from the scattered interval maxima and the removable
    predecessors. ``tables`` may be a previous allocation for the same
    lattice shape; it is overwritten.
    """
    n = table.n
    lat = RestrictedLattice(n, R)
    if tables is None or tables.g_values.size != lat.size or tables.fhat_values.shape[1] != n:
        if meter is not None:
            meter.alloc((n + 1) * lat.size)
        tables = RestrictedTables.allocate(lat)
    else:
        tables.lattice = lat
    g, choice, fhat = tables.g_values, tables.g_choice, tables.fhat_values
    g.fill(NEG_INF)
    choice.fill(-1)
    fhat.fill(NEG_INF)

    g[0] = 0.0
    idx, nodes, scores = lat.tail_targets(table)
    np.maximum.at(fhat, (idx, nodes), scores)
    if meter is not None:
        meter.score_evals += table.total_entries

    slots = [(w, 3) for w in lat.pair_weights] + [(w, 2) for w in lat.single_weights]
    for level in lat.levels()[1:]:
        digits = {w: (level // w) % r for w, r in slots}
        best = np.full(level.size, NEG_INF)
        arg = np.full(level.size, -1, dtype=np.int8)
        for v in range(n):
            w, _, d = lat.node_slot[v]
            has = digits[w] == d
            prev = level[has] - w
            cand = g[prev] + fhat[prev, v]
            # strict > keeps the smallest sink index on ties
            better = cand > best[has]
            pos = np.flatnonzero(has)[better]
            best[pos] = cand[better]
            arg[pos] = v
        g[level] = best
        choice[level] = arg
        for w, _ in slots:
            sel = level[digits[w] > 0]
            fhat[sel] = np.maximum(fhat[sel], fhat[sel - w])
    return float(g[-1]), tables


def coverage_check(perm, pairs):
    """The orientation of ``pairs`` that ``perm`` extends (earlier member first)."""
    pos = {v: i for i, v in enumerate(perm)}
    bits = 0
    for q, (a, b) in enumerate(pairs):
        if pos[b] < pos[a]:
            bits |= 1 << q
    return PairedOrder(pairs, bits)


@dataclass
class PairwiseRun:
    """Everything one pairwise solve measured, for reports."""

    result: object
    pairs: tuple
    orientations: list
    scores: dict
    seconds: dict
    peak_entries: int
    score_evals: int


def _run_orientations(table, pairs, orientations):
    meter = TableMeter()
    tables = None
    out = []
    for o in orientations:
        t0 = time.perf_counter()
        score, tables = algorithm1(PairedOrder(pairs, o), table, meter, tables)
        order = tables.order() if score != NEG_INF else None
        out.append((o, score, order, time.perf_counter() - t0))
    return out, meter.peak, meter.score_evals


def run_pairwise(table, p, strategy="consecutive", seed=0, workers=1, orientations=None):
    """Run the pairwise scheme and keep per-orientation measurements.

    ``orientations`` restricts the sweep (e.g. a single orientation for
    extrapolated benchmarks); the result is then optimal only over those.
    """
    pairs = make_pairs(table.n, p, strategy, seed)
    if orientations is None:
        orientations = list(range(1 << p))
    orientations = sorted(orientations)
    workers = max(1, min(int(workers), len(orientations)))
    if workers == 1:
        chunks = [_run_orientations(table, pairs, orientations)]
    else:
        parts = [orientations[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_orientations, itertools.repeat(table), itertools.repeat(pairs), parts))

    rows = sorted(row for chunk, _, _ in chunks for row in chunk)
    best, winner = NEG_INF, None
    for o, score, order, _ in rows:
        if score > best:
            best, winner = score, (o, order)
    if winner is None:
        raise InfeasibleError("no DAG has a finite score")
    result = result_from_order(table, winner[1], best, "pairwise", winner[0])
    return PairwiseRun(
        result=result,
        pairs=pairs,
        orientations=orientations,
        scores={o: s for o, s, _, _ in rows},
        seconds={o: t for o, _, _, t in rows},
        peak_entries=max(peak for _, peak, _ in chunks),
        score_evals=sum(ev for _, _, ev in chunks),
    )


def solve_pairwise(table, p, strategy="consecutive", seed=0, workers=1):
    """Optimal DAG as the best over all 2^p orientations of the chosen pairs."""
    return run_pairwise(table, p, strategy, seed, workers).result


def lattice_entries(n, p):
    """Score-table entries one orientation holds: g plus one best-parent column per node."""
    return (n + 1) * 3**p * 2 ** (n - 2 * p)
