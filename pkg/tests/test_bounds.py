from fractions import Fraction

import pytest
import sympy

from trisparse.bounds import RadicalSum, certify_le, certify_lt, sqrt_enclosure
from trisparse.growth import GrowthModel, RadicalSequence, fixed_point, growth_predict, radical_bound

SQRT6 = sympy.sqrt(6)


def same(a, b):
    return sympy.expand(a - b) == 0


def test_sqrt_enclosure():
    assert sqrt_enclosure(4, 8) == (2, 2)
    low, high = sqrt_enclosure(2, 20)
    assert low * low < 2 < high * high
    assert high - low <= Fraction(1, 2 ** 20)
    with pytest.raises(ValueError):
        sqrt_enclosure(-1, 4)


def test_certified_comparisons():
    assert certify_le(RadicalSum({6: 1}), RadicalSum.rational(Fraction(49, 20)))
    assert not certify_le(RadicalSum.rational(2), RadicalSum({2: 1}))
    assert certify_lt(RadicalSum({2: 1, 3: 1}), RadicalSum({10: 1}))
    assert not certify_lt(RadicalSum({10: 1}), RadicalSum({2: 1, 3: 1}))


def test_exact_ties():
    assert certify_le(RadicalSum({8: 1}), RadicalSum({2: 2}))
    assert not certify_lt(RadicalSum({8: 1}), RadicalSum({2: 2}))
    assert certify_le(RadicalSum({1: 5, 6: -1}), RadicalSum({1: 5, 6: -1}))


def test_radical_sum_terms():
    total = RadicalSum({1: 3, 6: Fraction(1, 2), 5: 0})
    assert set(total.terms) == {1, 6}
    assert float(total) == pytest.approx(3 + 6 ** 0.5 / 2)
    assert same(total.to_sympy(), 3 + SQRT6 / 2)


def test_fixed_point():
    assert fixed_point(4) == pytest.approx(6.5615528, abs=1e-6)
    assert RadicalSequence(256, 4).limit == fixed_point(4)


def test_radical_bound():
    value, bound = radical_bound(256, 4, 1)
    assert value == 20
    assert bound == pytest.approx(16 + fixed_point(4))


@pytest.mark.parametrize('c', [0.5, 1, 2, 4, 9, 25])
@pytest.mark.parametrize('a0', [50, 1000, 10 ** 6, 10 ** 12])
def test_radical_sequence_stays_below_bound(a0, c):
    limit = fixed_point(c)
    previous = a0
    for n in range(21):
        value, bound = radical_bound(a0, c, n)
        assert limit - 1e-9 <= value <= bound + 1e-9
        assert value <= previous + 1e-9
        previous = value
    assert bound - limit < 1.01


def test_radical_bound_needs_large_start():
    with pytest.raises(ValueError):
        radical_bound(5, 4, 1)
    with pytest.raises(ValueError):
        radical_bound(100, 4, -1)


def test_growth_one_round():
    x, y = growth_predict(1, 0, 1)
    assert same(x, 28 + 4 * SQRT6)
    assert same(y, 6 + SQRT6)
    with pytest.raises(ValueError):
        growth_predict(-1, 0, 1)


@pytest.mark.parametrize('start', [(1, 0), (3, 2), (0, 5)])
@pytest.mark.parametrize('n', range(13))
def test_growth_closed_form(n, start):
    x, y = growth_predict(*start, n)
    cx, cy = GrowthModel().closed_form(*start, n)
    assert same(x, cx) and same(y, cy)


def test_dominant_eigenvalue():
    model = GrowthModel()
    rate = float(model.dominant_eigenvalue())
    assert rate == pytest.approx(43.94, abs=0.01)
    assert rate > float(GrowthModel.STATED_RATE)
    ratios = model.ratios(1, 0, 12)
    assert ratios[-1][0] == pytest.approx(ratios[-2][0], rel=1e-6)
