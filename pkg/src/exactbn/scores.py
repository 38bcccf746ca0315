"""Problem instances: per-node families of possible parent sets with local scores.

Score file format (text, ``#`` comments and blank lines ignored)::

    <n>
    <name> <m_v>                       # one header per node ...
    <score> <j> <parent_1> ... <parent_j>   # ... followed by m_v entries

Parent sets not listed in a node's family score minus infinity.
"""

import csv
import io
import math
from collections import Counter

import numpy as np

from . import nodeset
from .errors import InputError, ScoreFileError

NEG_INF = float("-inf")


def check_downward_closed(family):
    """True iff removing any single member from any set in ``family`` gives a set in ``family``."""
    present = set(family)
    for mask in present:
        x = mask
        while x:
            low = x & -x
            if mask ^ low not in present:
                return False
            x ^= low
    return True


class LocalScoreTable:
    """Immutable score table over nodes ``0..n-1``.

    ``families[v]`` maps parent-set masks to finite local scores, in listing
    order. Construction validates every invariant the solvers rely on:
    no self-parents, parents within range, finite scores, downward closure.
    """

    def __init__(self, names, families):
        names = tuple(str(x) for x in names)
        n = len(names)
        if not 1 <= n <= nodeset.MAX_NODES:
            raise InputError(f"node count must be in 1..{nodeset.MAX_NODES}, got {n}")
        if len(set(names)) != n:
            raise InputError("node names must be distinct")
        if len(families) != n:
            raise InputError("need exactly one family per node")
        full = nodeset.full(n)
        fams = []
        for v, fam in enumerate(families):
            fam = dict(fam)
            for mask, score in fam.items():
                if mask & ~full:
                    raise InputError(f"node {names[v]}: parent set {mask:#x} out of range")
                if mask >> v & 1:
                    raise InputError(f"node {names[v]}: self-parent")
                if not math.isfinite(score):
                    raise InputError(f"node {names[v]}: non-finite score {score}")
            if not check_downward_closed(fam):
                raise InputError(f"node {names[v]}: family not downward closed")
            fams.append({m: float(s) for m, s in fam.items()})
        self.n = n
        self.names = names
        self._families = tuple(fams)
        # Cardinality-sorted listing (stable w.r.t. file order) for interval scans.
        self._by_size = tuple(
            tuple(sorted(f.items(), key=lambda it: it[0].bit_count())) for f in fams
        )
        # Best-first listing: first subset hit is the argmax with the smallest-mask tie-break.
        self._ranked = tuple(
            tuple(sorted(f.items(), key=lambda it: (-it[1], it[0]))) for f in fams
        )

    def __eq__(self, other):
        if not isinstance(other, LocalScoreTable):
            return NotImplemented
        return self.names == other.names and all(
            list(a.items()) == list(b.items())
            for a, b in zip(self._families, other._families)
        )

    def __repr__(self):
        return f"LocalScoreTable(n={self.n}, entries={self.total_entries})"

    def family(self, v):
        """Listed ``(mask, score)`` pairs of node ``v`` in listing order."""
        return list(self._families[v].items())

    def family_by_size(self, v):
        return self._by_size[v]

    def ranked_family(self, v):
        return self._ranked[v]

    def family_size(self, v):
        return len(self._families[v])

    def score(self, v, mask):
        return self._families[v].get(mask, NEG_INF)

    def is_listed(self, v, mask):
        return mask in self._families[v]

    def family_arrays(self):
        """All listed entries flattened to ``(node, mask, score)`` numpy arrays (cached)."""
        cached = getattr(self, "_arrays", None)
        if cached is None:
            nodes = [v for v, f in enumerate(self._families) for _ in f]
            masks = [m for f in self._families for m in f]
            scores = [s for f in self._families for s in f.values()]
            cached = (
                np.array(nodes, dtype=np.int64),
                np.array(masks, dtype=np.uint64),
                np.array(scores, dtype=np.float64),
            )
            for a in cached:
                a.setflags(write=False)
            self._arrays = cached
        return cached

    @property
    def total_entries(self):
        return sum(len(f) for f in self._families)

    @property
    def max_family_size(self):
        return max(len(f) for f in self._families)

    @property
    def max_indegree(self):
        return max((m.bit_count() for f in self._families for m in f), default=0)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown node name {name!r}") from None

    def mask_names(self, mask):
        return [self.names[i] for i in nodeset.members(mask)]

    def relabel(self, perm):
        """Table with node ``i`` renamed to position ``perm[i]``."""
        n = self.n
        if sorted(perm) != list(range(n)):
            raise InputError("relabel needs a permutation of 0..n-1")
        names = [None] * n
        fams = [None] * n
        for v in range(n):
            names[perm[v]] = self.names[v]
            fams[perm[v]] = {
                nodeset.from_members(perm[i] for i in nodeset.members(m)): s
                for m, s in self._families[v].items()
            }
        return LocalScoreTable(names, fams)

    def shifted(self, offsets):
        """Table with ``offsets[v]`` added to every listed score of node ``v``."""
        return LocalScoreTable(
            self.names,
            [{m: s + offsets[v] for m, s in f.items()} for v, f in enumerate(self._families)],
        )


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_scores(text):
    """Parse score-file content into a validated :class:`LocalScoreTable`."""
    lines = list(_content_lines(text))
    if not lines:
        raise ScoreFileError("empty score file")
    lineno, fields = lines[0]
    if len(fields) != 1:
        raise ScoreFileError("first line must hold the node count", lineno)
    try:
        n = int(fields[0])
    except ValueError:
        raise ScoreFileError(f"bad node count {fields[0]!r}", lineno) from None
    if not 1 <= n <= nodeset.MAX_NODES:
        raise ScoreFileError(f"node count must be in 1..{nodeset.MAX_NODES}, got {n}", lineno)

    # First pass: headers and raw entries; names resolve only once all headers are known.
    headers = []
    pos = 1
    while pos < len(lines):
        lineno, fields = lines[pos]
        if len(fields) != 2:
            raise ScoreFileError("expected node header '<name> <count>'", lineno)
        name, count = fields
        try:
            m = int(count)
        except ValueError:
            raise ScoreFileError(f"bad entry count {count!r}", lineno) from None
        if m < 0:
            raise ScoreFileError("negative entry count", lineno)
        entries = lines[pos + 1 : pos + 1 + m]
        if len(entries) < m:
            raise ScoreFileError(f"node {name}: expected {m} entries, file ended", lineno)
        headers.append((lineno, name, entries))
        pos += 1 + m
    if len(headers) != n:
        raise ScoreFileError(f"declared {n} nodes but found {len(headers)}", lines[-1][0])

    names = [h[1] for h in headers]
    index = {}
    for lineno, name, _ in headers:
        if name in index:
            raise ScoreFileError(f"duplicate node name {name!r}", lineno)
        index[name] = len(index)

    families = []
    for v, (_, name, entries) in enumerate(headers):
        fam = {}
        where = {}
        for lineno, fields in entries:
            if len(fields) < 2:
                raise ScoreFileError("expected '<score> <j> <parents...>'", lineno)
            try:
                score = float(fields[0])
                j = int(fields[1])
            except ValueError:
                raise ScoreFileError("malformed score entry", lineno) from None
            if not math.isfinite(score):
                raise ScoreFileError(f"non-finite score {fields[0]!r}", lineno)
            parents = fields[2:]
            if j != len(parents):
                raise ScoreFileError(f"declared {j} parents, listed {len(parents)}", lineno)
            mask = 0
            for p in parents:
                if p not in index:
                    raise ScoreFileError(f"unknown node name {p!r}", lineno)
                if index[p] == v:
                    raise ScoreFileError(f"self-parent: {name} lists itself", lineno)
                bitv = 1 << index[p]
                if mask & bitv:
                    raise ScoreFileError(f"parent {p!r} repeated", lineno)
                mask |= bitv
            if mask in fam:
                raise ScoreFileError(f"duplicate parent set for {name}", lineno)
            fam[mask] = score
            where[mask] = lineno
        for mask, lineno in where.items():
            x = mask
            while x:
                low = x & -x
                if mask ^ low not in fam:
                    missing = "{" + ",".join(names[i] for i in nodeset.members(mask ^ low)) + "}"
                    raise ScoreFileError(
                        f"family of {name} not downward closed: subset {missing} missing", lineno
                    )
                x ^= low
        families.append(fam)
    return LocalScoreTable(names, families)


def write_scores(table):
    """Serialise ``table``; scores carry 17 significant digits so parsing round-trips exactly."""
    out = [str(table.n)]
    for v in range(table.n):
        fam = table.family(v)
        out.append(f"{table.names[v]} {len(fam)}")
        for mask, score in fam:
            parents = table.mask_names(mask)
            out.append(" ".join([format(score, ".17g"), str(len(parents)), *parents]))
    return "\n".join(out) + "\n"


def gen_random_instance(n, k, seed):
    """All parent sets of size <= k per node, scores i.i.d. uniform in [-10, 0] from ``seed``."""
    if not 1 <= n <= nodeset.MAX_NODES:
        raise InputError(f"n must be in 1..{nodeset.MAX_NODES}, got {n}")
    if not 0 <= k <= n - 1:
        raise InputError(f"k must be in 0..{n - 1}, got {k}")
    rng = np.random.default_rng(int(seed) % 2**64)
    families = []
    for v in range(n):
        others = [u for u in range(n) if u != v]
        masks = list(nodeset.subsets_up_to(others, k))
        scores = rng.uniform(-10.0, 0.0, size=len(masks))
        families.append(dict(zip(masks, scores.tolist())))
    return LocalScoreTable([f"X{i}" for i in range(n)], families)


def read_data(text, delimiter=None):
    """Split delimited categorical data into ``(header, rows)``; delimiter sniffed when omitted."""
    if delimiter is None:
        sample = "\n".join(text.splitlines()[:20])
        try:
            delimiter = csv.Sniffer().sniff(sample, delimiters=",;\t ").delimiter
        except csv.Error:
            delimiter = ","
    reader = csv.reader(io.StringIO(text), delimiter=delimiter, skipinitialspace=True)
    rows = [[c.strip() for c in r] for r in reader if any(c.strip() for c in r)]
    if not rows:
        raise InputError("empty data file")
    return rows[0], rows[1:]


def bic_from_data(header, rows, k):
    """BIC local scores for all parent sets of size <= ``k`` from categorical data.

    score = max log-likelihood of the child given its parents
            - (log m)/2 * (levels(child) - 1) * prod(levels(parents))
    where levels are the observed value counts and m the row count.
    """
    n = len(header)
    if n == 0 or not rows:
        raise InputError("data needs a header and at least one row")
    for i, r in enumerate(rows, start=2):
        if len(r) != n:
            raise InputError(f"data row {i}: expected {n} cells, got {len(r)}")
        if any(c == "" for c in r):
            raise InputError(f"data row {i}: empty cell")
    if not 0 <= k <= n - 1:
        raise InputError(f"k must be in 0..{n - 1}, got {k}")
    m = len(rows)
    cols = [[r[i] for r in rows] for i in range(n)]
    levels = [len(set(c)) for c in cols]
    penalty = math.log(m) / 2
    families = []
    for v in range(n):
        fam = {}
        for mask in nodeset.subsets_up_to([u for u in range(n) if u != v], k):
            pa = nodeset.members(mask)
            joint = Counter(zip(zip(*(cols[u] for u in pa)) if pa else [()] * m, cols[v]))
            config = Counter()
            for (cfg, _), c in joint.items():
                config[cfg] += c
            loglik = sum(c * math.log(c / config[cfg]) for (cfg, _), c in joint.items())
            q = math.prod(levels[u] for u in pa)
            fam[mask] = loglik - penalty * (levels[v] - 1) * q
        families.append(fam)
    return LocalScoreTable(header, families)
