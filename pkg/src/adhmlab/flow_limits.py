"""Exact limits of lam(t) . x as t -> 0 and t -> infinity.

The datum is rewritten in a basis of V adapted to the weight filtration
generated from im(i): vectors w(B) i e_s carry weight -b_s + a1 #1 + a2 #2.
In such a basis every entry of lam(t) . x, after the diagonal gauge
t^(-grading), is a Laurent polynomial without negative exponents, and the
t -> 0 limit is the associated graded datum.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from . import exact_linalg as la
from .adhm_core import (
    AdhmDatum,
    GaugeElement,
    InadmissibleDatum,
    are_gauge_equivalent,
    evaluate_invariants,
    gauge_act,
    is_admissible,
    is_in_central_fiber,
    require_admissible,
    torus_act,
    datum_to_json,
)
from .exact_linalg import Laurent, NoLimit
from .fixed_points import (
    PartitionTuple,
    adhm_representative,
    box_character,
    boxes,
    enumerate_fixed_points,
    label_to_json,
)
from .tangent_bb import Cocharacter, is_regular, order_value


class FlowDefect(RuntimeError):
    """A limit computation contradicted a structural guarantee."""


@dataclass
class AdaptedBasis:
    vectors: list  # columns of the change of basis
    grading: list[int]
    words: list[tuple[str, int]]


def _letter_weight(lam: Cocharacter, c: str) -> int:
    return lam.a1 if c == "1" else lam.a2


def _apply(x: AdhmDatum, c: str, v):
    return la.mat_vec(x.B1 if c == "1" else x.B2, v)


def adapted_basis(x: AdhmDatum, lam: Cocharacter) -> AdaptedBasis:
    """Greedy lowest-weight-first basis of V from the vectors w(B) i e_s.

    Ties are broken by word length, then lexicographic word, then s.  When
    a1, a2 > 0 extending a word raises its weight, so candidates are
    generated lazily from chosen vectors only.  Otherwise every word of
    length <= n is a candidate.
    """
    n, r = x.n, x.r
    if lam.r != r:
        raise ValueError("cocharacter rank does not match the datum")
    span = la.EchelonSpan(n)
    chosen, grading, labels = [], [], []

    def take(w, word, s, v):
        if span.add(v):
            chosen.append(tuple(v))
            grading.append(w)
            labels.append((word, s))
            return True
        return False

    seeds = [(-lam.b[s], 0, "", s, la.mat_vec(x.i, [int(k == s) for k in range(r)])) for s in range(r)]
    if lam.a1 > 0 and lam.a2 > 0:
        heap = [(w, ln, word, s, tuple(v)) for w, ln, word, s, v in seeds]
        heapq.heapify(heap)
        while heap and len(chosen) < n:
            w, ln, word, s, v = heapq.heappop(heap)
            if take(w, word, s, v):
                for c in "12":
                    heapq.heappush(heap, (w + _letter_weight(lam, c), ln + 1, word + c, s, tuple(_apply(x, c, v))))
    else:
        cands = []
        frontier = seeds
        cands.extend(frontier)
        for _ in range(n):
            frontier = [
                (w + _letter_weight(lam, c), ln + 1, word + c, s, _apply(x, c, v))
                for w, ln, word, s, v in frontier
                for c in "12"
            ]
            cands.extend(frontier)
        cands.sort(key=lambda t: t[:4])
        for w, ln, word, s, v in cands:
            if len(chosen) == n:
                break
            take(w, word, s, v)
    if len(chosen) < n:
        raise InadmissibleDatum("the vectors w(B) i e_s do not span V: datum is not stable")
    return AdaptedBasis(chosen, grading, labels)


def adapted_grading(x: AdhmDatum, lam: Cocharacter) -> list[int]:
    """Weights at which the adapted basis vectors are generated, in order."""
    return adapted_basis(x, lam).grading


@dataclass
class FlowResult:
    limit_datum: AdhmDatum
    fixed_point: PartitionTuple
    gauge_used: la.Matrix  # diagonal, entries t^(-grading)
    grading: list[int]
    basis: la.Matrix
    direction: str = "plus"

    def to_json(self, x: AdhmDatum) -> dict:
        return {
            "input_datum": datum_to_json(x),
            "direction": self.direction,
            "limit": datum_to_json(self.limit_datum),
            "label": label_to_json(self.fixed_point),
            "grading": list(self.grading),
        }


def gauged_family(x: AdhmDatum, lam: Cocharacter) -> tuple[AdhmDatum, AdaptedBasis, GaugeElement]:
    """D(t) . lam(t) . (P^-1 . x) as a datum over Q[t, 1/t]."""
    ab = adapted_basis(x, lam)
    P = la.from_columns(ab.vectors, x.n)
    y = gauge_act(GaugeElement(la.inverse(P), P), x)
    fam = torus_act(lam.torus_element(), y.map_entries(Laurent._coerce))
    D = GaugeElement.diagonal([Laurent.monomial(-d) for d in ab.grading])
    return gauge_act(D, fam), ab, D


def _limit_datum(fam: AdhmDatum):
    parts = [la.laurent_limit_at_zero(m) for m in fam.components()]
    poles = [(name, p) for name, m in zip(("B1", "B2", "i", "j"), parts) if isinstance(m, NoLimit) for p in m.poles]
    if poles:
        return NoLimit(tuple(poles))
    return AdhmDatum(fam.r, fam.n, *parts)


def identify_fixed_point(y: AdhmDatum, lam: Cocharacter, grading) -> PartitionTuple:
    """Label of the enumerated fixed point gauge-equivalent to y."""
    target = sorted(grading)
    for pt in enumerate_fixed_points(y.r, y.n):
        if sorted(lam.pair(box_character(b, y.r)) for b in boxes(pt)) != target:
            continue
        if are_gauge_equivalent(y, adhm_representative(pt)):
            return pt
    raise FlowDefect("limit is not gauge-equivalent to any enumerated fixed point")


def _flow(x: AdhmDatum, lam: Cocharacter, direction: str) -> FlowResult | NoLimit:
    if x.n == 0:
        return FlowResult(x, tuple(() for _ in range(x.r)), (), [], (), direction)
    fam, ab, D = gauged_family(x, lam)
    y = _limit_datum(fam)
    if isinstance(y, NoLimit):
        return y
    if not is_admissible(y):
        raise FlowDefect("limit datum is not admissible")
    # lam-fixedness: the same diagonal gauge undoes lam on the limit
    ly = gauge_act(D, torus_act(lam.torus_element(), y.map_entries(Laurent._coerce)))
    if ly != y.map_entries(Laurent._coerce):
        raise FlowDefect("limit datum is not fixed by lam")
    label = identify_fixed_point(y, lam, ab.grading)
    basis = la.from_columns(ab.vectors, x.n)
    return FlowResult(y, label, D.g, list(ab.grading), basis, direction)


def _check_lam(x: AdhmDatum, lam: Cocharacter) -> None:
    require_admissible(x)
    if lam.r != x.r:
        raise ValueError("cocharacter rank does not match the datum")
    if not lam.in_contracting_chamber():
        raise ValueError(f"{lam} is outside the chamber a1, a2 > 0, |b_s - b_t| < a1 + a2")
    if not is_regular(lam, x.r, x.n):
        raise ValueError(f"{lam} is not regular for r={x.r}, n={x.n}")


def limit_plus(x: AdhmDatum, lam: Cocharacter) -> FlowResult:
    """lim_{t -> 0} lam(t) . x, which exists for every admissible x."""
    _check_lam(x, lam)
    res = _flow(x, lam, "plus")
    if isinstance(res, NoLimit):
        raise FlowDefect(f"plus limit has a pole at {res.poles}")
    return res


def limit_minus(x: AdhmDatum, lam: Cocharacter) -> FlowResult | NoLimit:
    """lim_{t -> infinity} lam(t) . x, i.e. the plus limit for -lam.

    Cross-checked against the invariant test for the central fibre.
    """
    _check_lam(x, lam)
    res = _flow(x, -lam, "minus")
    central = is_in_central_fiber(x)
    if central != (not isinstance(res, NoLimit)):
        raise FlowDefect(f"minus limit {'missing' if central else 'exists'} but central fibre test says {central}")
    return res


def invariant_continuity(x: AdhmDatum, lam: Cocharacter, res: FlowResult | None = None, L: int | None = None) -> bool:
    """Invariants of the limit equal the t -> 0 limit of the invariants of lam(t) . x."""
    if x.n == 0:
        return True
    L = L or 2 * x.n
    if res is None:
        res = limit_plus(x, lam)
    fam = torus_act(lam.torus_element(), x.map_entries(Laurent._coerce))
    values = evaluate_invariants(fam, L)
    lim = la.laurent_limit_at_zero((tuple(values),))
    if isinstance(lim, NoLimit):
        return False
    return list(lim[0]) == list(evaluate_invariants(res.limit_datum, L))


@dataclass
class FlowSample:
    plus_label: PartitionTuple
    minus_label: PartitionTuple | None
    v_plus: int
    v_minus: int | None
    in_central_fiber: bool
    monotone: bool | None = field(default=None)
    pole_positions: tuple = ()

    def to_json(self) -> dict:
        return {
            "plus_label": label_to_json(self.plus_label),
            "minus_label": None if self.minus_label is None else label_to_json(self.minus_label),
            "v_plus": self.v_plus,
            "v_minus": self.v_minus,
            "in_central_fiber": self.in_central_fiber,
            "monotone": self.monotone,
        }


def flow_sample_check(x: AdhmDatum, lam: Cocharacter) -> FlowSample:
    plus = limit_plus(x, lam)
    minus = limit_minus(x, lam)
    vp = order_value(plus.fixed_point, lam)
    if isinstance(minus, NoLimit):
        return FlowSample(plus.fixed_point, None, vp, None, False, None, minus.poles)
    vm = order_value(minus.fixed_point, lam)
    return FlowSample(plus.fixed_point, minus.fixed_point, vp, vm, True, vp <= vm)


def float_continuation(x: AdhmDatum, lam: Cocharacter, direction: str = "plus", tol: float = 1e-9, max_steps: int = 60):
    """Floating-point debugging oracle: evaluate the gauged family at
    t = 1, 1/2, 1/4, ... until successive values agree to ``tol``.

    Returns (matrices as float lists, steps) or (None, steps) on divergence.
    """
    lam_ = lam if direction == "plus" else -lam
    fam, _, _ = gauged_family(x, lam_)
    comps = fam.components()
    prev = None
    t = 1.0
    for step in range(max_steps):
        cur = [[[float(sum(float(c) * t ** k for k, c in Laurent._coerce(e).coeffs.items())) for e in row] for row in m] for m in comps]
        flat = [v for m in cur for row in m for v in row]
        if prev is not None:
            if any(abs(v) > 1e12 for v in flat):
                return None, step
            if max((abs(a - b) for a, b in zip(flat, prev)), default=0.0) < tol:
                return cur, step
        prev = flat
        t /= 2
    return None, max_steps
