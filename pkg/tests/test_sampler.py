from fractions import Fraction

import pytest

from fracdim.digit_sets import DigitSetSpec, Schedule, membership, validate_spec
from fracdim.errors import CapExceeded, DepthExceeded, LevelExceedsTruncation
from fracdim.product_spaces import ProductSpec, covering_exponent
from fracdim.sampler import (
    crosscheck,
    cube_key,
    empirical_box_count,
    enumerate_points,
    restrict,
    sample_points,
)


@pytest.fixture
def demo_pair(demo_spec, demo_t):
    return ProductSpec.of(demo_spec, demo_t)


def test_enumerate_single(demo_spec):
    cloud = enumerate_points(ProductSpec.of(demo_spec), 10, cap=64)
    assert len(cloud) == 8
    weights = [Fraction(1, 2**7), Fraction(1, 2**9), Fraction(1, 2**10)]
    expected = sorted(
        sum(w for i, w in enumerate(weights) if mask >> i & 1) for mask in range(8)
    )
    assert [p[0] for p in cloud.as_fractions()] == expected
    assert cloud.points[0] == (0,)


def test_enumerate_pair(demo_pair):
    cloud = enumerate_points(demo_pair, 10)
    assert len(cloud) == 32
    assert list(cloud.points) == sorted(cloud.points)


def test_enumerate_below_first_element(demo_pair):
    cloud = enumerate_points(demo_pair, 5)
    assert cloud.points == ((0, 0),)


def test_enumerate_cap(demo_pair):
    with pytest.raises(CapExceeded):
        enumerate_points(demo_pair, 30, cap=1000)
    with pytest.raises(DepthExceeded):
        enumerate_points(demo_pair, demo_pair.horizon + 1)


def _digits_respect(cloud, prod):
    for pt in cloud.points:
        for p, f in zip(pt, prod.factors):
            assert 0 <= p < 1 << cloud.level
            for pos in range(1, cloud.level + 1):
                if p >> (cloud.level - pos) & 1:
                    assert membership(f, pos)


def test_sample_points(demo_spec):
    prod = ProductSpec.of(demo_spec)
    cloud = sample_points(prod, 30, 1000, seed=42)
    assert len(cloud) == 1000
    _digits_respect(cloud, prod)
    assert sample_points(prod, 30, 1000, seed=42) == cloud
    assert len(sample_points(prod, 30, 1, seed=0)) == 1


def test_box_counts(demo_spec, demo_pair):
    single = enumerate_points(ProductSpec.of(demo_spec), 10)
    assert empirical_box_count(single, 9) == 4
    pair = enumerate_points(demo_pair, 10)
    assert empirical_box_count(pair, 10) == 32
    assert empirical_box_count(pair, 0) == 1
    with pytest.raises(LevelExceedsTruncation):
        empirical_box_count(pair, 11)


def test_crosscheck_pair(demo_pair):
    rep = crosscheck(demo_pair, 20)
    assert rep.ok and len(rep.rows) == 20
    assert rep.rows[-1].analytic_exponent == 10
    assert rep.rows[-1].empirical == 1024


def test_crosscheck_single(demo_spec):
    assert crosscheck(ProductSpec.of(demo_spec), 12).ok


def test_crosscheck_sampled(demo_pair):
    cloud = sample_points(demo_pair, 30, 500, seed=3)
    rep = crosscheck(demo_pair, 30, cloud=cloud)
    assert rep.mode == "sample" and rep.ok
    assert all(r.empirical <= 1 << r.analytic_exponent for r in rep.rows)


@pytest.mark.parametrize("k0,k", [(7, 10), (9, 18), (10, 20), (14, 22)])
def test_homogeneity(demo_pair, k0, k):
    cloud = enumerate_points(demo_pair, 22)
    keys = {cube_key(pt, cloud.level, k0) for pt in cloud.points}
    expected = 1 << (covering_exponent(demo_pair, k) - covering_exponent(demo_pair, k0))
    for key in keys:
        assert empirical_box_count(restrict(cloud, k0, key), k) == expected


def test_three_factor_crosscheck(demo_spec, demo_t):
    other = validate_spec(DigitSetSpec(Schedule.recurrence(5), "2/3", "2/5"), 7)
    prod = ProductSpec.of(demo_spec, demo_t, other)
    assert crosscheck(prod, 16).ok
