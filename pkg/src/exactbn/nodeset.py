"""Node sets as plain Python ints: bit ``i`` is set iff node ``i`` is a member."""

from itertools import combinations

MAX_NODES = 64


def full(n):
    return (1 << n) - 1


def bit(i):
    return 1 << i


def size(mask):
    return mask.bit_count()


def members(mask):
    """Member indices in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def from_members(items):
    mask = 0
    for i in items:
        mask |= 1 << i
    return mask


def is_subset(a, b):
    return a & ~b == 0


def submasks(mask):
    """All subsets of ``mask``, including the empty set and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def subsets_of_size(items, k):
    """Masks of all ``k``-subsets of ``items`` in increasing numeric order."""
    items = sorted(items)
    m = len(items)
    if k < 0 or k > m:
        return
    if k == 0:
        yield 0
        return
    # Gosper's hack over positions 0..m-1, then spread onto the real node ids.
    c = (1 << k) - 1
    limit = 1 << m
    while c < limit:
        mask = 0
        x = c
        while x:
            low = x & -x
            mask |= 1 << items[low.bit_length() - 1]
            x ^= low
        yield mask
        u = c & -c
        v = c + u
        c = (((v ^ c) >> 2) // u) | v


def subsets_up_to(items, k):
    """All subsets of ``items`` with at most ``k`` members, by size then lexicographically."""
    items = sorted(items)
    for r in range(min(k, len(items)) + 1):
        for combo in combinations(items, r):
            yield from_members(combo)


def compress(mask, v):
    """Drop bit ``v`` and shift higher bits down (index into a table over N minus v)."""
    low = mask & ((1 << v) - 1)
    return low | ((mask >> (v + 1)) << v)


def expand(index, v):
    """Inverse of :func:`compress` for sets that do not contain ``v``."""
    low = index & ((1 << v) - 1)
    return low | ((index >> v) << (v + 1))
