"""Analytical space-time tradeoffs of the partition and pairwise schemes.

With space ``2^(r n)``:

* partition scheme (first block of size s = r n):  time 2^(n a(r)),
  a(r) = r - r log2 r - (1 - r) log2(1 - r)
* pairwise scheme (p = n (1 - r) / log2(4/3) pairs): time 2^(n b(r)),
  b(r) = 1 + (1 - r) log2(2/3) / log2(3/4)
"""

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InputError

LOG2_4_3 = math.log2(4 / 3)
# Lower end of r quoted alongside the comparison figure.
B_RANGE_STATED = 0.724
# r at which p reaches n/2 when p is solved from 2^n (3/4)^p = 2^(r n).
B_RANGE_DERIVED = 1 - LOG2_4_3 / 2


def a_exponent(r):
    h = 0.0
    for x in (r, 1 - r):
        if x > 0:
            h -= x * math.log2(x)
    return r + h


def b_exponent(r):
    return 1 + (1 - r) * math.log2(2 / 3) / math.log2(3 / 4)


@dataclass(frozen=True)
class TradeoffPoint:
    r: float
    a_r: float
    b_r: Optional[float]
    p_per_n: float
    s_per_n: float

    @property
    def partition_time_base(self):
        return 2**self.a_r

    @property
    def pairwise_time_base(self):
        return None if self.b_r is None else 2**self.b_r

    @property
    def space_base(self):
        return 2**self.r

    @property
    def pairs_fit(self):
        """True when the equivalent pair count is at most n/2."""
        return self.p_per_n <= 0.5 + 1e-12


def compute_tradeoff(r):
    """Both time exponents at space ratio ``r``; b is omitted below its stated range."""
    if not 0 < r <= 1:
        raise InputError(f"space ratio must be in (0, 1], got {r}")
    b = b_exponent(r) if r >= B_RANGE_STATED else None
    return TradeoffPoint(r, a_exponent(r), b, (1 - r) / LOG2_4_3, r)


def pairwise_bases(p_per_n):
    """(time base, space base) of the pairwise scheme with p = p_per_n * n pairs."""
    if not 0 <= p_per_n <= 0.5:
        raise InputError("p/n must be in [0, 1/2]")
    return 2 * 1.5**p_per_n, 2 * 0.75**p_per_n


def partition_bases(s_per_n):
    """(time base, space base) of the one-level partition scheme with block s = s_per_n * n."""
    if not 0.5 <= s_per_n <= 1:
        raise InputError("s/n must be in [1/2, 1]")
    return 2 ** a_exponent(s_per_n), 2**s_per_n


def dnc_tradeoff(n, s):
    """(time exponent, space exponent) = (2n - s, s) for s = n / 2^d."""
    n = Fraction(n)
    s = Fraction(s)
    if n <= 0 or s <= 0:
        raise InputError("n and s must be positive")
    ratio = n / s
    if ratio.denominator != 1 or ratio.numerator & (ratio.numerator - 1):
        raise InputError(f"s must be n / 2^d; got n/s = {ratio}")
    return 2 * n - s, s


CURVE_COLUMNS = ("r", "a", "b", "p_equiv", "s_equiv")


def emit_curve(n, step):
    """Rows (r, a(r), b(r), p, s) for r = step, 2 step, ..., 1; b is None outside its range."""
    if not 0 < step < 1:
        raise InputError("step must be in (0, 1)")
    count = math.floor(1 / step + 1e-9)
    rs = [round(k * step, 12) for k in range(1, count + 1)]
    if rs and abs(rs[-1] - 1) < 1e-9:
        rs[-1] = 1.0
    else:
        rs.append(1.0)
    rows = []
    for r in rs:
        pt = compute_tradeoff(r)
        rows.append((r, pt.a_r, pt.b_r, n * pt.p_per_n, n * r))
    return rows


def curve_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CURVE_COLUMNS)
    for r, a, b, p, s in rows:
        w.writerow([f"{r:.6g}", f"{a:.10f}", "" if b is None else f"{b:.10f}", f"{p:.6f}", f"{s:.6f}"])
    return buf.getvalue()
