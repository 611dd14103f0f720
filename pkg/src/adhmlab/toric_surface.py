"""Torus-fixed framed sheaves on toric surfaces obtained by blowing up the plane.

A fixed framed sheaf of rank r splits as a sum of I_{Z_s}(C_s) where C_s is
supported on invariant curves disjoint from the framing divisor D and Z_s
is a monomial subscheme supported at the fixed points off D.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact_linalg as la
from .fixed_points import PartitionTuple, enumerate_fixed_points, label_to_json


class UnboundedEnumeration(ValueError):
    """The twist lattice is not negative definite, so c2 does not bound it."""


def _det(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class ToricFan:
    """Rays in counter-clockwise order; ray k is the divisor D_k."""

    rays: tuple[tuple[int, int], ...]
    framing_ray_index: int

    def __post_init__(self):
        rays = tuple((int(a), int(b)) for a, b in self.rays)
        object.__setattr__(self, "rays", rays)
        m = len(rays)
        if m < 3:
            raise ValueError("a complete fan needs at least 3 rays")
        if not 0 <= self.framing_ray_index < m:
            raise ValueError("framing ray index out of range")
        for v in rays:
            if math.gcd(*v) != 1:
                raise ValueError(f"ray {v} is not primitive")
        for k in range(m):
            if _det(rays[k], rays[(k + 1) % m]) != 1:
                raise ValueError(f"cone {k} is not smooth or rays are not counter-clockwise")
        turn = sum(
            math.atan2(_det(rays[k], rays[(k + 1) % m]), rays[k][0] * rays[(k + 1) % m][0] + rays[k][1] * rays[(k + 1) % m][1])
            for k in range(m)
        )
        if abs(turn - 2 * math.pi) > 1e-6:
            raise ValueError("rays do not wind once around the origin")

    @property
    def size(self) -> int:
        return len(self.rays)

    def neighbours(self, k: int) -> tuple[int, int]:
        m = self.size
        return (k - 1) % m, (k + 1) % m

    def self_intersection(self, k: int) -> int:
        """-a_k where v_{k-1} + v_{k+1} = a_k v_k."""
        p, q = self.neighbours(k)
        s = (self.rays[p][0] + self.rays[q][0], self.rays[p][1] + self.rays[q][1])
        v = self.rays[k]
        # s is parallel to v by smoothness
        a = s[0] // v[0] if v[0] else s[1] // v[1]
        if (a * v[0], a * v[1]) != s:
            raise AssertionError("neighbour sum is not a multiple of the ray")
        return -a

    def fixed_points_off_framing(self) -> list[int]:
        """Cones (k, k+1) whose rays both differ from the framing ray."""
        f = self.framing_ray_index
        return [k for k in range(self.size) if f not in (k, (k + 1) % self.size)]

    def twist_support(self) -> list[int]:
        """Rays whose divisors do not meet D."""
        f = self.framing_ray_index
        return [k for k in range(self.size) if k != f and k not in self.neighbours(f)]

    def to_json(self) -> dict:
        return {"rays": [list(v) for v in self.rays], "framing_ray": self.framing_ray_index}

    @classmethod
    def from_json(cls, data) -> "ToricFan":
        try:
            return cls(tuple(tuple(v) for v in data["rays"]), int(data["framing_ray"]))
        except (KeyError, TypeError) as e:
            raise ValueError(f"malformed fan JSON: {e}") from e


def p2_fan() -> ToricFan:
    return ToricFan(((1, 0), (0, 1), (-1, -1)), 2)


def blowup(fan: ToricFan, corner_index: int, allow_framing_corner: bool = False) -> ToricFan:
    """Star subdivision of the cone between rays corner_index and corner_index + 1."""
    m = fan.size
    if not 0 <= corner_index < m:
        raise ValueError(f"corner index {corner_index} out of range 0..{m - 1}")
    k2 = (corner_index + 1) % m
    if not allow_framing_corner and fan.framing_ray_index in (corner_index, k2):
        raise ValueError("corner lies on the framing divisor")
    u, v = fan.rays[corner_index], fan.rays[k2]
    new = (u[0] + v[0], u[1] + v[1])
    rays = list(fan.rays)
    rays.insert(corner_index + 1, new)
    f = fan.framing_ray_index
    if f > corner_index:
        f += 1
    return ToricFan(tuple(rays), f)


@dataclass(frozen=True)
class DivisorClass:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    @classmethod
    def zero(cls, m: int) -> "DivisorClass":
        return cls((0,) * m)

    @classmethod
    def prime(cls, m: int, k: int) -> "DivisorClass":
        return cls(tuple(int(i == k) for i in range(m)))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def to_json(self) -> list[int]:
        return list(self.coefficients)


def _prime_pairing(fan: ToricFan, a: int, b: int) -> int:
    if a == b:
        return fan.self_intersection(a)
    return 1 if b in fan.neighbours(a) else 0


def intersection_number(fan: ToricFan, d1: DivisorClass, d2: DivisorClass) -> int:
    m = fan.size
    if len(d1.coefficients) != m or len(d2.coefficients) != m:
        raise ValueError("divisor class length does not match the fan")
    total = 0
    for a, x in enumerate(d1.coefficients):
        if x:
            for b, y in enumerate(d2.coefficients):
                if y:
                    total += x * y * _prime_pairing(fan, a, b)
    return total


def linearly_equivalent(fan: ToricFan, d1: DivisorClass, d2: DivisorClass) -> bool:
    """Pic of a smooth complete toric surface is free and the pairing is
    unimodular, so classes agree iff they pair equally with every D_k."""
    diff = d1 - d2
    return all(intersection_number(fan, diff, DivisorClass.prime(fan.size, k)) == 0 for k in range(fan.size))


# conventions anchored to two known values
assert intersection_number(p2_fan(), DivisorClass.prime(3, 0), DivisorClass.prime(3, 0)) == 1
assert intersection_number(blowup(p2_fan(), 0), DivisorClass.prime(4, 1), DivisorClass.prime(4, 1)) == -1


@dataclass(frozen=True)
class FramedFixedDatum:
    twists: tuple[DivisorClass, ...]
    # boxes[s][k]: partition of summand s at the k-th fixed point off D
    boxes: tuple[PartitionTuple, ...]

    @property
    def r(self) -> int:
        return len(self.twists)

    def c1(self) -> DivisorClass:
        out = self.twists[0]
        for c in self.twists[1:]:
            out = out + c
        return out

    def c2(self, fan: ToricFan) -> int:
        z = sum(sum(lam) for comp in self.boxes for lam in comp)
        return z + sum(intersection_number(fan, a, b) for a, b in itertools.combinations(self.twists, 2))

    def to_json(self) -> dict:
        return {"twists": [c.to_json() for c in self.twists], "boxes": [label_to_json(comp) for comp in self.boxes]}


def _isqrt_fraction(x: Fraction) -> int:
    if x < 0:
        return -1
    return math.isqrt(x.numerator * x.denominator) // x.denominator


def _twist_candidates(fan: ToricFan, budget: int) -> list[DivisorClass]:
    """Classes C on the twist support with -C.C <= budget."""
    support = fan.twist_support()
    m = fan.size
    if not support:
        return [DivisorClass.zero(m)] if budget >= 0 else []
    if budget < 0:
        return []
    gram = [[-_prime_pairing(fan, a, b) for b in support] for a in support]
    # positive definiteness of -Q by leading principal minors
    for k in range(1, len(support) + 1):
        if la.determinant(la.to_matrix([row[:k] for row in gram[:k]])) <= 0:
            raise UnboundedEnumeration(
                "the intersection form on curves disjoint from D is not negative definite; "
                "twists are not bounded by c2"
            )
    ginv = la.inverse(la.to_matrix(gram))
    bounds = [_isqrt_fraction(budget * ginv[k][k]) for k in range(len(support))]
    out = []
    for coeffs in itertools.product(*[range(-b, b + 1) for b in bounds]):
        c = [0] * m
        for k, x in zip(support, coeffs):
            c[k] = x
        cls = DivisorClass(tuple(c))
        if -intersection_number(fan, cls, cls) <= budget:
            out.append(cls)
    return out


def enumerate_fixed_framed(fan: ToricFan, r: int, c1: DivisorClass, c2: int) -> list[FramedFixedDatum]:
    """All fixed framed data with first Chern class c1 and second Chern number c2."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if len(c1.coefficients) != fan.size:
        raise ValueError("c1 length does not match the fan")
    c1sq = intersection_number(fan, c1, c1)
    # sum_s -C_s^2 = 2 (c2 - |Z|) - c1^2 <= 2 c2 - c1^2
    budget = 2 * c2 - c1sq
    cands = _twist_candidates(fan, budget)
    pts = fan.fixed_points_off_framing()
    out = []
    for twists in itertools.product(cands, repeat=r):
        total = twists[0]
        for c in twists[1:]:
            total = total + c
        if not linearly_equivalent(fan, total, c1):
            continue
        cross = sum(intersection_number(fan, a, b) for a, b in itertools.combinations(twists, 2))
        nz = c2 - cross
        if nz < 0:
            continue
        for flat in enumerate_fixed_points(r * len(pts), nz):
            boxes_ = tuple(tuple(flat[s * len(pts):(s + 1) * len(pts)]) for s in range(r))
            out.append(FramedFixedDatum(tuple(twists), boxes_))
    return out


def euler_characteristic(fan: ToricFan, r: int, c1: DivisorClass, c2: int) -> int:
    return len(enumerate_fixed_framed(fan, r, c1, c2))


def parse_divisor(text: str, fan: ToricFan) -> DivisorClass:
    """'0' for the zero class, else comma-separated coefficients per ray."""
    vals = [int(v) for v in text.replace(" ", "").split(",") if v]
    if vals == [0]:
        return DivisorClass.zero(fan.size)
    if len(vals) != fan.size:
        raise ValueError(f"c1 needs {fan.size} coefficients")
    return DivisorClass(tuple(vals))


def iterated_blowup(corners: Sequence[int]) -> ToricFan:
    fan = p2_fan()
    for c in corners:
        fan = blowup(fan, c)
    return fan
