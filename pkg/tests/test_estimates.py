import math
from decimal import Decimal, localcontext

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kurindex.errors import InvalidArgs
from kurindex.estimates import (
    PowerOfTwo,
    asymptotic_check,
    best_relation,
    dushnik_dim,
    e_value,
    format_table_e,
    furedi_kahn_min_d,
    iroot,
    least_n_for,
    relation_candidates,
    spencer_exponent,
    spencer_relation,
    table_e,
)
from kurindex.dimension import n_suitable_exact

TABLE_4 = [(172, 256), (180, 512), (186, 1024), (192, 2048), (197, 4096),
           (202, 8192), (207, 16384), (211, 32768), (215, 65536)]


def spencer_decimal(n, r):
    """High-precision floor of 1/2 (1 - 2^-r)^(-n/r); returns (floor, fractional part)."""
    with localcontext() as ctx:
        ctx.prec = int(n * math.log10(2)) + 40
        base = Decimal(1) - Decimal(1) / Decimal(2 ** r)
        val = Decimal("0.5") * base ** (-Decimal(n) / Decimal(r))
        fl = int(val.to_integral_value(rounding="ROUND_FLOOR"))
        return fl, val - fl


def test_spencer_against_decimal_oracle():
    rng = np.random.default_rng(11)
    checked = 0
    for _ in range(10_000):
        r = int(rng.integers(1, 9))
        n = int(rng.integers(r + 1, 1500))
        fl, frac = spencer_decimal(n, r)
        if 0 < min(frac, 1 - frac) < Decimal(10) ** -20:
            continue  # too close to an integer for the oracle to decide
        assert spencer_exponent(n, r) == fl, (n, r)
        checked += 1
    assert checked > 9_900


def test_spencer_boundary():
    assert spencer_exponent(171, 4) == 7
    assert spencer_exponent(172, 4) == 8
    assert int(e_value(171, 4)) == 128 and int(e_value(172, 4)) == 256


def test_spencer_argument_checks():
    for bad in [(3, 3), (3, 0), (2.0, 1)]:
        with pytest.raises(InvalidArgs):
            spencer_exponent(*bad)


def test_table_e_matches_known_rows():
    rows = table_e(4, 215)
    assert [(n, int(e)) for n, e in rows] == TABLE_4
    text = format_table_e(rows, 4)
    assert "32,768" in text and text.count("\n") == 1


def test_table_e_rows_are_least_n():
    for n, e in table_e(3, 150):
        assert spencer_exponent(n, 3) == e.exponent
        assert spencer_exponent(n - 1, 3) < e.exponent


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=10**60), st.integers(min_value=1, max_value=9))
def test_iroot(x, k):
    s = iroot(x, k)
    assert s ** k <= x < (s + 1) ** k


def test_power_of_two():
    p = PowerOfTwo(10)
    assert p == 1024 and p < 1025 and p > 1023 and not p < 1024
    assert PowerOfTwo(3) < PowerOfTwo(4)
    assert PowerOfTwo(100).render() == "2^100"
    assert PowerOfTwo(64).render() == str(2**64)
    assert str(PowerOfTwo(5)) == "32"
    with pytest.raises(InvalidArgs):
        PowerOfTwo(-1)


def test_least_n_for():
    assert least_n_for(32768, 4) == 211
    assert least_n_for(257, 4) == 180
    assert least_n_for(256, 4) == 172
    for m in (5, 100, 5000):
        n = least_n_for(m, 3)
        assert 2 ** spencer_exponent(n, 3) >= m
        assert n == 4 or 2 ** spencer_exponent(n - 1, 3) < m


def furedi_kahn_float(m, r):
    d = 1
    while m * math.comb(m - 1, r) * (r / (r + 1)) ** d >= 1:
        d += 1
    return d


def test_furedi_kahn():
    assert furedi_kahn_min_d(257, 4) == 110
    assert furedi_kahn_min_d(3, 2) == 3
    assert furedi_kahn_min_d(2, 1) == 2
    for m in range(3, 60):
        for r in range(1, min(m, 6)):
            assert furedi_kahn_min_d(m, r) == furedi_kahn_float(m, r)


def test_dushnik_values():
    assert dushnik_dim(10, 5) == 8 and dushnik_dim(11, 5) == 9
    assert dushnik_dim(12, 6) == 10 and dushnik_dim(13, 6) == 11 and dushnik_dim(14, 6) == 12
    assert dushnik_dim(4, 3) == 3
    assert dushnik_dim(4, 2) is None
    with pytest.raises(InvalidArgs):
        dushnik_dim(3, 2)


@pytest.mark.parametrize("m,k", [(4, 3), (5, 3), (5, 4), (6, 3), (6, 4)])
def test_dushnik_agrees_with_suitable_search(m, k):
    d = dushnik_dim(m, k)
    if d is not None:
        assert d == n_suitable_exact(m, k)[0]


def test_asymptotic_ratio_values():
    rows = asymptotic_check(4, [10**5, 10**6])
    limit = 2**4 * -math.log(1 - 2**-4)
    assert abs(rows[0].ratio - 1.03217) < 1e-4
    assert abs(rows[1].ratio - 1.03257) < 1e-4
    assert abs(rows[1].ratio - limit) < abs(rows[0].ratio - limit)


def test_spencer_relation_rendering():
    rel = spencer_relation(211, 4)
    assert rel.render_aleph() == "(aleph_210, 4, aleph_0) -> 32768"
    assert spencer_relation(1000, 2).size.exponent > 64
    assert "2^" in spencer_relation(1000, 2).render_aleph()
    with pytest.raises(InvalidArgs):
        spencer_relation(5, 1)


@pytest.mark.parametrize(
    "m,r,offset,tag",
    [(32768, 4, 210, "spencer"), (257, 4, 109, "furedi-kahn"), (10, 4, 7, "dushnik"),
     (11, 4, 8, "dushnik"), (12, 5, 9, "dushnik"), (13, 5, 10, "dushnik"), (14, 5, 11, "dushnik"),
     (3, 1, 1, "exact-dim"), (4, 2, 2, "exact-dim"), (5, 3, 3, "exact-dim")],
)
def test_best_relation(m, r, offset, tag):
    rel = best_relation(m, r)
    assert (rel.offset, rel.order, rel.size, rel.provenance) == (offset, r, m, tag)


def test_candidates_are_upper_bounds_of_the_best():
    cands = relation_candidates(6, 2)
    best = best_relation(6, 2)
    assert all(c.value >= best.offset + 1 for c in cands)
