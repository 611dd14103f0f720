"""Seeded random admissible ADHM data."""

from __future__ import annotations

import random
from fractions import Fraction

from . import exact_linalg as la
from .adhm_core import AdhmDatum, GaugeElement, gauge_act, is_admissible
from .fixed_points import adhm_representative, enumerate_fixed_points


def _rint(rng: random.Random, lo: int = -3, hi: int = 3) -> Fraction:
    return Fraction(rng.randint(lo, hi))


def random_gauge(rng: random.Random, n: int) -> GaugeElement:
    while True:
        g = tuple(tuple(_rint(rng, -2, 2) for _ in range(n)) for _ in range(n))
        if la.determinant(g) != 0:
            return GaugeElement.rational(g)


def random_generic(rng: random.Random, r: int, n: int) -> AdhmDatum:
    """Point with B1 diagonalisable with distinct eigenvalues (generic fibre).

    Entries of ij on the diagonal are forced to zero so that
    B2_kl = -(ij)_kl / (x_k - x_l) solves the equation off the diagonal.
    """
    if n == 0:
        return AdhmDatum.empty(r)
    for _ in range(1000):
        xs = rng.sample(range(-2 * n - 2, 2 * n + 3), n)
        i = [[_rint(rng) for _ in range(r)] for _ in range(n)]
        j = [[_rint(rng) for _ in range(n)] for _ in range(r)]
        if r == 1:
            # (ij)_kk = i_k j_k = 0 needs one factor zero; keep i nowhere zero
            i = [[Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))] for _ in range(n)]
            j = [[Fraction(0)] * n]
        else:
            for k in range(n):
                # fix the last framing coordinate of j to kill (ij)_kk
                partial = sum(i[k][s] * j[s][k] for s in range(r - 1))
                if i[k][r - 1] == 0:
                    if partial != 0:
                        i[k][r - 1] = Fraction(1)
                    else:
                        continue
                j[r - 1][k] = -partial / i[k][r - 1]
        ij = la.matmul(la.to_matrix(i), la.to_matrix(j))
        B1 = la.diagonal([Fraction(v) for v in xs])
        B2 = [[Fraction(0)] * n for _ in range(n)]
        for k in range(n):
            B2[k][k] = _rint(rng)
            for m in range(n):
                if k != m:
                    B2[k][m] = -ij[k][m] / (xs[k] - xs[m])
        x = AdhmDatum(r, n, B1, la.to_matrix(B2), la.to_matrix(i), la.to_matrix(j))
        if is_admissible(x):
            return gauge_act(random_gauge(rng, n), x)
    raise RuntimeError("failed to sample a stable generic datum")


def random_central(rng: random.Random, r: int, n: int) -> AdhmDatum:
    """Point of the central fibre: j = 0, B1 nilpotent, B2 a polynomial in B1
    without constant term; or a gauge-translated fixed representative."""
    if n == 0:
        return AdhmDatum.empty(r)
    for _ in range(1000):
        if rng.random() < 0.25:
            pts = enumerate_fixed_points(r, n)
            x = adhm_representative(pts[rng.randrange(len(pts))])
            return gauge_act(random_gauge(rng, n), x)
        B1 = tuple(tuple(_rint(rng) if c > a else Fraction(0) for c in range(n)) for a in range(n))
        B2 = la.zeros(n, n)
        power = B1
        for _ in range(1, n):
            B2 = la.add(B2, la.scale(_rint(rng, -2, 2), power))
            power = la.matmul(power, B1)
        i = tuple(tuple(_rint(rng) for _ in range(r)) for _ in range(n))
        j = la.zeros(r, n)
        x = AdhmDatum(r, n, B1, B2, i, j)
        if is_admissible(x):
            return gauge_act(random_gauge(rng, n), x)
    raise RuntimeError("failed to sample a stable central datum")


def random_admissible(rng: random.Random, r: int, n: int) -> AdhmDatum:
    """Mixture of generic and central-fibre points."""
    if rng.random() < 0.5:
        return random_generic(rng, r, n)
    return random_central(rng, r, n)


def samples(seed: int, r: int, n: int, count: int) -> list[AdhmDatum]:
    rng = random.Random(seed)
    return [random_admissible(rng, r, n) for _ in range(count)]
