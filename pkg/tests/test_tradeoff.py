import csv
import io
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from exactbn import InputError
from exactbn.tradeoff import (
    B_RANGE_DERIVED,
    B_RANGE_STATED,
    CURVE_COLUMNS,
    a_exponent,
    b_exponent,
    compute_tradeoff,
    curve_csv,
    dnc_tradeoff,
    emit_curve,
    pairwise_bases,
    partition_bases,
)


def test_full_space_endpoint():
    pt = compute_tradeoff(1.0)
    assert pt.a_r == 1.0 and pt.b_r == 1.0
    assert pt.partition_time_base == 2.0 == pt.pairwise_time_base
    assert pt.p_per_n == 0.0


def test_balanced_split_matches_recursive_bound():
    # one split level at s = n/2: time 2^(3n/2) both ways
    assert a_exponent(0.5) == pytest.approx(1.5)
    t, s = dnc_tradeoff(8, 4)
    assert t / 8 == a_exponent(0.5)


@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_b_is_affine(x, y):
    mid = b_exponent((x + y) / 2)
    assert mid == pytest.approx((b_exponent(x) + b_exponent(y)) / 2, abs=1e-12)


def test_headline_bases():
    assert partition_bases(0.8)[0] == pytest.approx(2.8717459, abs=1e-6)
    assert partition_bases(0.8)[1] == pytest.approx(1.7411011, abs=1e-6)
    time_base, space_base = pairwise_bases(0.5)
    assert time_base == pytest.approx(2.4494897, abs=1e-6)
    assert space_base == pytest.approx(1.7320508, abs=1e-6)


def test_pair_ratio_from_space():
    # p pairs cost 2^n (3/4)^p space: solve for p at r and back
    for r in (0.8, 0.9, 0.95):
        pt = compute_tradeoff(r)
        assert (1 - pt.p_per_n * math.log2(4 / 3)) == pytest.approx(r)
    assert compute_tradeoff(B_RANGE_DERIVED).p_per_n == pytest.approx(0.5)
    assert 2 * 0.75**0.5 == pytest.approx(2**B_RANGE_DERIVED)


def test_b_reported_only_in_range():
    assert compute_tradeoff(0.7).b_r is None
    assert compute_tradeoff(B_RANGE_STATED).b_r is not None
    assert compute_tradeoff(0.75).pairs_fit is False
    assert compute_tradeoff(0.8).pairs_fit is True


def test_pairwise_below_partition_on_range():
    for r in np.linspace(0.73, 0.99, 261):
        pt = compute_tradeoff(float(r))
        assert pt.b_r < pt.a_r


@pytest.mark.parametrize("r", [0.0, -0.1, 1.01])
def test_ratio_out_of_range(r):
    with pytest.raises(InputError):
        compute_tradeoff(r)


def test_dnc_exponents():
    assert dnc_tradeoff(16, 16) == (16, 16)
    assert dnc_tradeoff(16, 8) == (24, 8)
    assert dnc_tradeoff(16, 1) == (31, 1)
    t, s = dnc_tradeoff(1, Fraction(1, 2**40))
    assert float(t) == pytest.approx(2.0)


@pytest.mark.parametrize("n, s", [(16, 3), (16, 32), (0, 1), (12, 5)])
def test_dnc_inadmissible(n, s):
    with pytest.raises(InputError):
        dnc_tradeoff(n, s)


def test_curve_rows():
    rows = emit_curve(30, 0.01)
    rs = [r[0] for r in rows]
    assert rs == sorted(rs) and len(set(rs)) == len(rs)
    assert len(rows) == 100
    r, a, b, p, s = rows[-1]
    assert (r, a, b, p, s) == (1.0, 1.0, 1.0, 0.0, 30.0)
    assert rows[0][2] is None


def test_curve_csv_format():
    text = curve_csv(emit_curve(20, 0.25))
    reader = list(csv.reader(io.StringIO(text)))
    assert tuple(reader[0]) == CURVE_COLUMNS
    assert [row[0] for row in reader[1:]] == ["0.25", "0.5", "0.75", "1"]
    assert reader[1][2] == "" and float(reader[-1][2]) == 1.0


def test_step_not_dividing_one():
    rows = emit_curve(10, 0.3)
    assert [r[0] for r in rows] == [0.3, 0.6, 0.9, 1.0]


@pytest.mark.parametrize("step", [0, 1, -0.5])
def test_bad_step(step):
    with pytest.raises(InputError):
        emit_curve(10, step)
