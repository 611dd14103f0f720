"""Torus-fixed points of M(r, n) labelled by r-tuples of Young diagrams.

A partition is a weakly decreasing tuple of positive integers; part q
(1-based) is row q of the diagram and holds the boxes (p, q), p = 1..part.
B1 moves a box from (p, q) to (p + 1, q), B2 from (p, q) to (p, q + 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import exact_linalg as la
from .adhm_core import AdhmDatum, FramedTorusElement, GaugeElement
from .exact_linalg import Laurent

Partition = tuple  # tuple[int, ...]
PartitionTuple = tuple  # tuple[Partition, ...]


@lru_cache(maxsize=None)
def partitions(m: int) -> tuple[Partition, ...]:
    """All partitions of m in reverse lexicographic order: (m) first, (1^m) last."""
    if m < 0:
        return ()
    out = []

    def rec(rest, largest, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(rest, largest), 0, -1):
            prefix.append(part)
            rec(rest - part, part, prefix)
            prefix.pop()

    rec(m, m, [])
    return tuple(out)


def validate_partition(parts: Sequence[int]) -> Partition:
    parts = tuple(int(p) for p in parts)
    if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"not a partition: {parts}")
    return parts


def _component_key(lam: Partition):
    return (-sum(lam), tuple(-p for p in lam))


def tuple_sort_key(pt: PartitionTuple):
    return tuple(_component_key(lam) for lam in pt)


@lru_cache(maxsize=None)
def enumerate_fixed_points(r: int, n: int) -> tuple[PartitionTuple, ...]:
    """r-tuples of partitions of total size n in canonical order."""
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")
    out = []

    def rec(k, remaining, prefix):
        if k == r:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for m in range(remaining, -1, -1):
            for lam in partitions(m):
                prefix.append(lam)
                rec(k + 1, remaining - m, prefix)
                prefix.pop()

    rec(0, n, [])
    return tuple(sorted(out, key=tuple_sort_key))


def boxes(pt: PartitionTuple) -> list[tuple[int, int, int]]:
    """Basis order of the representative: (component s, row q, column p) row-major.

    Returned as (p, q, s) with 1-based p, q and 0-based s.
    """
    out = []
    for s, lam in enumerate(pt):
        for q, part in enumerate(lam, start=1):
            for p in range(1, part + 1):
                out.append((p, q, s))
    return out


def box_character(box: tuple[int, int, int], r: int) -> tuple[int, ...]:
    """Torus character of a box as an exponent vector over (t1, t2, e_1..e_r).

    Box (p, q) of component s carries t1^(p-1) t2^(q-1) e_s^(-1).
    """
    p, q, s = box
    e = [0] * r
    e[s] = -1
    return (p - 1, q - 1, *e)


def adhm_representative(pt: PartitionTuple) -> AdhmDatum:
    pt = tuple(validate_partition(lam) for lam in pt)
    r = len(pt)
    bx = boxes(pt)
    n = len(bx)
    if n == 0:
        return AdhmDatum.empty(r)
    index = {b: k for k, b in enumerate(bx)}
    B1 = [[Fraction(0)] * n for _ in range(n)]
    B2 = [[Fraction(0)] * n for _ in range(n)]
    i = [[Fraction(0)] * r for _ in range(n)]
    for (p, q, s), k in index.items():
        if (p + 1, q, s) in index:
            B1[index[(p + 1, q, s)]][k] = Fraction(1)
        if (p, q + 1, s) in index:
            B2[index[(p, q + 1, s)]][k] = Fraction(1)
    for s in range(r):
        if (1, 1, s) in index:
            i[index[(1, 1, s)]][s] = Fraction(1)
    j = [[Fraction(0)] * n for _ in range(r)]
    return AdhmDatum(r, n, la.to_matrix(B1), la.to_matrix(B2), la.to_matrix(i), la.to_matrix(j))


def compensating_gauge(pt: PartitionTuple, tau: FramedTorusElement) -> GaugeElement:
    """Diagonal g with gauge_act(g, torus_act(tau, rep)) == rep.

    The entry on a box is the inverse of its character, t1^-(p-1) t2^-(q-1) e_s.
    """
    entries = []
    for p, q, s in boxes(pt):
        entries.append(_power(tau.t1, -(p - 1)) * _power(tau.t2, -(q - 1)) * tau.e[s])
    if not entries:
        return GaugeElement((), ())
    return GaugeElement.diagonal(entries)


def _power(x, k: int):
    if isinstance(x, Laurent):
        return x ** k
    return la.frac(x) ** k


def label_to_json(pt: PartitionTuple) -> list[list[int]]:
    return [list(lam) for lam in pt]


def label_from_json(data) -> PartitionTuple:
    return tuple(validate_partition(lam) for lam in data)


@dataclass
class FixedPointRecord:
    label: PartitionTuple
    representative: AdhmDatum | None = None
    weights: tuple[int, ...] | None = field(default=None)

    @classmethod
    def build(cls, label: PartitionTuple) -> "FixedPointRecord":
        return cls(label, adhm_representative(label))

    @property
    def r(self) -> int:
        return len(self.label)

    @property
    def n(self) -> int:
        return sum(sum(lam) for lam in self.label)


def fixed_point_records(r: int, n: int) -> list[FixedPointRecord]:
    return [FixedPointRecord.build(pt) for pt in enumerate_fixed_points(r, n)]
