import random

import pytest
from hypothesis import given, strategies as st

from adhmlab.fixed_points import enumerate_fixed_points
from adhmlab.oracles import blowup_rank2_counts, eta_power
from adhmlab.toric_surface import (
    DivisorClass,
    ToricFan,
    UnboundedEnumeration,
    blowup,
    enumerate_fixed_framed,
    euler_characteristic,
    intersection_number,
    iterated_blowup,
    linearly_equivalent,
    p2_fan,
    parse_divisor,
)


def prime(fan, k):
    return DivisorClass.prime(fan.size, k)


def test_plane_fan():
    fan = p2_fan()
    assert fan.rays == ((1, 0), (0, 1), (-1, -1)) and fan.framing_ray_index == 2
    for a in range(3):
        for b in range(3):
            assert intersection_number(fan, prime(fan, a), prime(fan, b)) == 1
    assert fan.fixed_points_off_framing() == [0]
    assert fan.twist_support() == []


def test_one_blowup():
    fan = blowup(p2_fan(), 0)
    assert fan.size == 4 and fan.rays[1] == (1, 1) and fan.framing_ray_index == 3
    e = prime(fan, 1)
    assert intersection_number(fan, e, e) == -1
    assert intersection_number(fan, e, DivisorClass.zero(4)) == 0
    # the pulled-back line H = D_3 satisfies H.H = 1 and H.E = 0
    h = prime(fan, 3)
    assert intersection_number(fan, h, h) == 1 and intersection_number(fan, h, e) == 0


def test_blowup_errors():
    with pytest.raises(ValueError):
        blowup(p2_fan(), 5)
    with pytest.raises(ValueError):
        blowup(p2_fan(), 1)  # touches the framing ray
    fan = blowup(p2_fan(), 1, allow_framing_corner=True)
    assert fan.size == 4


def test_invalid_fans():
    with pytest.raises(ValueError):
        ToricFan(((1, 0), (0, 1), (-1, 0)), 0)
    with pytest.raises(ValueError):
        ToricFan(((1, 0), (0, 1), (-1, -1)), 3)
    with pytest.raises(ValueError):
        ToricFan(((2, 0), (0, 1), (-1, -1)), 2)


@given(st.integers(0, 10**6))
def test_random_blowups_stay_smooth(seed):
    rng = random.Random(seed)
    fan = p2_fan()
    for _ in range(5):
        corners = [k for k in range(fan.size) if fan.framing_ray_index not in (k, (k + 1) % fan.size)]
        fan = blowup(fan, rng.choice(corners))
    # re-validating checks determinants and winding
    assert ToricFan(fan.rays, fan.framing_ray_index) == fan
    # Noether on a rational surface: K^2 = 12 - (number of rays)
    k = DivisorClass((-1,) * fan.size)
    assert intersection_number(fan, k, k) == 12 - fan.size


@given(st.integers(0, 10**6))
def test_intersection_is_symmetric_bilinear(seed):
    rng = random.Random(seed)
    fan = iterated_blowup([0, 1])
    cls = lambda: DivisorClass(tuple(rng.randint(-3, 3) for _ in range(fan.size)))  # noqa: E731
    a, b, c = cls(), cls(), cls()
    assert intersection_number(fan, a, b) == intersection_number(fan, b, a)
    assert intersection_number(fan, a + b, c) == intersection_number(fan, a, c) + intersection_number(fan, b, c)


def test_linear_equivalence_on_plane():
    fan = p2_fan()
    assert linearly_equivalent(fan, prime(fan, 0), prime(fan, 1))
    assert not linearly_equivalent(fan, prime(fan, 0), DivisorClass.zero(3))


def test_enumeration_examples():
    plane = p2_fan()
    for n in range(5):
        assert euler_characteristic(plane, 1, DivisorClass.zero(3), n) == len(enumerate_fixed_points(1, n))
    one = blowup(plane, 0)
    data = enumerate_fixed_framed(one, 1, DivisorClass.zero(4), 1)
    assert len(data) == 2
    assert all(d.twists == (DivisorClass.zero(4),) for d in data)
    assert euler_characteristic(one, 1, DivisorClass.zero(4), 0) == 1
    assert euler_characteristic(plane, 2, DivisorClass.zero(3), 1) == 2


def test_generating_functions():
    fans = [p2_fan(), iterated_blowup([0]), iterated_blowup([0, 0])]
    for k, fan in enumerate(fans, start=1):
        gf = eta_power(k, 4)
        assert [euler_characteristic(fan, 1, DivisorClass.zero(fan.size), n) for n in range(5)] == gf


def test_rank_two_twists_on_blowup():
    fan = iterated_blowup([0])
    assert [euler_characteristic(fan, 2, DivisorClass.zero(4), n) for n in range(5)] == blowup_rank2_counts(4)


def test_nonzero_c1():
    fan = iterated_blowup([0])
    e = prime(fan, 1)
    # r = 1, c1 = E: c2 = |Z| since there is no cross term
    assert [euler_characteristic(fan, 1, e, n) for n in range(4)] == eta_power(2, 3)
    # c1 = H is not supported away from D
    assert euler_characteristic(fan, 1, prime(fan, 3), 2) == 0


def test_enumerated_data_satisfy_budget():
    fan = iterated_blowup([0, 1])
    for r, c2 in [(1, 2), (2, 2), (2, 3)]:
        for d in enumerate_fixed_framed(fan, r, DivisorClass.zero(fan.size), c2):
            assert d.c2(fan) == c2
            assert linearly_equivalent(fan, d.c1(), DivisorClass.zero(fan.size))
            for c in d.twists:
                assert intersection_number(fan, c, prime(fan, fan.framing_ray_index)) == 0


def test_unbounded_twist_lattice_is_reported():
    # framing on the exceptional curve of a blown-up P1 x P1 leaves D_3, D_4
    # with self-intersection 0 and D_3.D_4 = 1: an indefinite lattice
    fan = ToricFan(((1, 0), (1, 1), (0, 1), (-1, 0), (0, -1)), 1)
    with pytest.raises(UnboundedEnumeration):
        enumerate_fixed_framed(fan, 1, DivisorClass.zero(5), 1)


def test_parse_divisor():
    fan = iterated_blowup([0])
    assert parse_divisor("0", fan) == DivisorClass.zero(4)
    assert parse_divisor("0,1,0,0", fan) == prime(fan, 1)
    with pytest.raises(ValueError):
        parse_divisor("1,2", fan)


def test_fan_json_round_trip():
    fan = iterated_blowup([0, 1])
    assert ToricFan.from_json(fan.to_json()) == fan
    with pytest.raises(ValueError):
        ToricFan.from_json({"rays": [[1, 0]]})
