"""Tangent spaces of M(r, n), torus weights at fixed points and BB cells.

The tangent space at an admissible datum x is the middle cohomology of

    gl(V) --d0--> End(V)^2 + Hom(W, V) + Hom(V, W) --d1--> gl(V)

with d0(a) = ([a,B1], [a,B2], a i, -j a) and
d1(b1, b2, c, k) = [b1,B2] + [B1,b2] + i k + c j.  At a fixed point both maps
are homogeneous for the torus grading induced by the box characters, which
is how the weights are read off.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from . import exact_linalg as la
from .adhm_core import AdhmDatum, FramedTorusElement, require_admissible
from .exact_linalg import Laurent
from .fixed_points import (
    FixedPointRecord,
    PartitionTuple,
    box_character,
    boxes,
    enumerate_fixed_points,
)
from .parallel import pmap


class NotRegular(ValueError):
    """A zero tangent weight was met where a regular cocharacter is required."""


class FiltrationViolation(AssertionError):
    pass


@dataclass(frozen=True)
class Cocharacter:
    """One-parameter subgroup t -> (t^a1, t^a2, t^b_1, ..., t^b_r)."""

    a1: int
    a2: int
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if self.a1 == 0 and self.a2 == 0 and not any(self.b):
            raise ValueError("cocharacter must be nonzero")

    @classmethod
    def parse(cls, text: str) -> "Cocharacter":
        vals = [int(v) for v in text.replace(" ", "").split(",") if v]
        if len(vals) < 3:
            raise ValueError("expected a1,a2,b_1,...,b_r")
        return cls(vals[0], vals[1], tuple(vals[2:]))

    @property
    def r(self) -> int:
        return len(self.b)

    def as_tuple(self) -> tuple[int, ...]:
        return (self.a1, self.a2, *self.b)

    def __str__(self):
        return ",".join(str(v) for v in self.as_tuple())

    def __neg__(self) -> "Cocharacter":
        return Cocharacter(-self.a1, -self.a2, tuple(-x for x in self.b))

    def pair(self, character: Sequence[int]) -> int:
        return sum(a * c for a, c in zip(self.as_tuple(), character))

    def torus_element(self) -> FramedTorusElement:
        m = Laurent.monomial
        return FramedTorusElement(m(self.a1), m(self.a2), tuple(m(x) for x in self.b))

    def at(self, t) -> FramedTorusElement:
        t = la.frac(t)
        return FramedTorusElement.of(t ** self.a1, t ** self.a2, [t ** x for x in self.b])

    def in_contracting_chamber(self) -> bool:
        """a1, a2 > 0 and |b_s - b_t| < a1 + a2: t -> 0 contracts M_0(r, n) to 0."""
        if self.a1 <= 0 or self.a2 <= 0:
            return False
        return not self.b or max(self.b) - min(self.b) < self.a1 + self.a2


# ------------------------------------------------------ deformation complex


def c1_dim(r: int, n: int) -> int:
    return 2 * n * n + 2 * n * r


def d0_matrix(x: AdhmDatum) -> la.Matrix:
    """Matrix of d0: gl(V) -> C1, columns indexed by unit matrices E_ab."""
    n, r = x.n, x.r
    B1, B2, i, j = x.components()
    cols = []
    for a in range(n):
        for b in range(n):
            v = [Fraction(0)] * c1_dim(r, n)
            for off, B in ((0, B1), (n * n, B2)):
                # [E_ab, B] = E_ab B - B E_ab
                for c in range(n):
                    v[off + a * n + c] += B[b][c]
                    v[off + c * n + b] -= B[c][a]
            off = 2 * n * n
            for s in range(r):
                v[off + a * r + s] += i[b][s]
            off = 2 * n * n + n * r
            for s in range(r):
                v[off + s * n + b] -= j[s][a]
            cols.append(v)
    return la.from_columns(cols, c1_dim(r, n))


def d1_matrix(x: AdhmDatum) -> la.Matrix:
    """Matrix of d1: C1 -> gl(V), columns indexed by the C1 coordinates."""
    n, r = x.n, x.r
    B1, B2, i, j = x.components()
    cols = []

    def unit():
        return [Fraction(0)] * (n * n)

    for a in range(n):  # beta1 = E_ab: [E_ab, B2]
        for b in range(n):
            v = unit()
            for c in range(n):
                v[a * n + c] += B2[b][c]
                v[c * n + b] -= B2[c][a]
            cols.append(v)
    for a in range(n):  # beta2 = E_ab: [B1, E_ab]
        for b in range(n):
            v = unit()
            for c in range(n):
                v[c * n + b] += B1[c][a]
                v[a * n + c] -= B1[b][c]
            cols.append(v)
    for a in range(n):  # iota = E_as: E_as j
        for s in range(r):
            v = unit()
            for c in range(n):
                v[a * n + c] += j[s][c]
            cols.append(v)
    for s in range(r):  # kappa = E_sb: i E_sb
        for b in range(n):
            v = unit()
            for c in range(n):
                v[c * n + b] += i[c][s]
            cols.append(v)
    return la.from_columns(cols, n * n)


def tangent_basis(x: AdhmDatum) -> list[la.Vector]:
    """Basis of a complement of im(d0) inside ker(d1); its size is 2rn."""
    require_admissible(x)
    n, r = x.n, x.r
    if n == 0:
        return []
    D0, D1 = d0_matrix(x), d1_matrix(x)
    if not la.is_zero_matrix(la.matmul(D1, D0)):
        raise AssertionError("d1 o d0 != 0 on an admissible datum")
    dim = c1_dim(r, n)
    image = la.columns(D0)
    span = la.EchelonSpan(dim)
    for v in image:
        span.add(v)
    if len(span) != n * n:
        raise AssertionError("d0 is not injective at a stable datum")
    _, kernel = la.rank_kernel(D1, dim)
    basis = [v for v in kernel if span.add(v)]
    if len(basis) != 2 * r * n:
        raise AssertionError(f"tangent dimension {len(basis)} != 2rn = {2 * r * n}")
    return basis


def c1_vector_to_datum(v: la.Vector, r: int, n: int) -> AdhmDatum:
    """Read a C1 coordinate vector as a quadruple (b1, b2, c, k)."""
    nn = n * n
    return AdhmDatum(
        r,
        n,
        la.unflatten(v[:nn], n, n),
        la.unflatten(v[nn:2 * nn], n, n),
        la.unflatten(v[2 * nn:2 * nn + n * r], n, r),
        la.unflatten(v[2 * nn + n * r:], r, n),
    )


# ------------------------------------------------------------ grading


def _add(*vecs):
    return tuple(sum(c) for c in zip(*vecs))


def _neg(v):
    return tuple(-c for c in v)


def complex_characters(pt: PartitionTuple) -> tuple[list, list]:
    """Torus characters of the C0 and C1 coordinates at the fixed point pt."""
    r = len(pt)
    chars = [box_character(b, r) for b in boxes(pt)]
    n = len(chars)
    zero = (0,) * (r + 2)
    t1 = (1, 0) + (0,) * r
    t2 = (0, 1) + (0,) * r

    def e(s):
        return (0, 0) + tuple(int(k == s) for k in range(r))

    c0 = [_add(chars[b], _neg(chars[a])) for a in range(n) for b in range(n)]
    c1 = []
    c1 += [_add(t1, chars[b], _neg(chars[a])) for a in range(n) for b in range(n)]
    c1 += [_add(t2, chars[b], _neg(chars[a])) for a in range(n) for b in range(n)]
    c1 += [_add(zero, _neg(chars[a]), _neg(e(s))) for a in range(n) for s in range(r)]
    c1 += [_add(t1, t2, e(s), chars[b]) for s in range(r) for b in range(n)]
    return c0, c1


def _graded_multiplicities(x: AdhmDatum, c0_keys: list, c1_keys: list) -> Counter:
    """dim ker(d1) - rank(d0) in every graded piece."""
    D0, D1 = d0_matrix(x), d1_matrix(x)
    d0_cols, d1_cols = la.columns(D0), la.columns(D1)
    n2 = x.n * x.n
    out: Counter = Counter()
    groups1: dict = {}
    for k, key in enumerate(c1_keys):
        groups1.setdefault(key, []).append(k)
    groups0: dict = {}
    for k, key in enumerate(c0_keys):
        groups0.setdefault(key, []).append(k)
    total_d0 = 0
    for key, idx in groups1.items():
        sub = la.from_columns([d1_cols[k] for k in idx], n2)
        nullity = len(idx) - la.rank(sub, len(idx))
        im = groups0.get(key, [])
        rk0 = la.rank(la.transpose(la.from_columns([d0_cols[k] for k in im], len(c1_keys))), len(c1_keys)) if im else 0
        total_d0 += rk0
        if nullity - rk0:
            out[key] = nullity - rk0
    if any(key not in groups1 for key in groups0):
        # a gauge direction with no partner in C1 would make d0 non-injective
        raise AssertionError("d0 is not homogeneous")
    if total_d0 != n2:
        raise AssertionError("d0 is not injective at a fixed point")
    return out


def _record(f: FixedPointRecord | PartitionTuple) -> FixedPointRecord:
    if isinstance(f, FixedPointRecord):
        return f
    return FixedPointRecord.build(tuple(f))


def tangent_characters(f: FixedPointRecord | PartitionTuple) -> tuple[tuple[int, ...], ...]:
    """Multiset of torus characters (exponents of t1, t2, e_1..e_r), sorted."""
    f = _record(f)
    if f.representative is None:
        raise ValueError("fixed point record has no representative")
    if f.n == 0:
        return ()
    c0, c1 = complex_characters(f.label)
    mult = _graded_multiplicities(f.representative, c0, c1)
    out = []
    for key in sorted(mult):
        if mult[key] < 0:
            raise AssertionError("negative multiplicity")
        out.extend([key] * mult[key])
    if len(out) != 2 * f.r * f.n:
        raise AssertionError("tangent character count != 2rn")
    return tuple(out)


@lru_cache(maxsize=None)
def character_table(r: int, n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    return tuple(tangent_characters(pt) for pt in enumerate_fixed_points(r, n))


def tangent_weights(f: FixedPointRecord | PartitionTuple, lam: Cocharacter) -> tuple[int, ...]:
    """Sorted multiset of the 2rn tangent weights under lam.

    The complex is graded directly by lam-weight: an entry of b1 sending box
    b to box a has weight a1 + w(b) - w(a), and so on.
    """
    f = _record(f)
    if f.representative is None:
        raise ValueError("fixed point record has no representative")
    if lam.r != f.r:
        raise ValueError("cocharacter rank does not match the fixed point")
    if f.n == 0:
        return ()
    c0, c1 = complex_characters(f.label)
    mult = _graded_multiplicities(f.representative, [lam.pair(c) for c in c0], [lam.pair(c) for c in c1])
    out = []
    for w in sorted(mult):
        out.extend([w] * mult[w])
    if len(out) != 2 * f.r * f.n:
        raise AssertionError("tangent weight count != 2rn")
    return tuple(out)


# --------------------------------------------------- regular cocharacters


def _candidates(r: int, norm: int) -> Iterable[Cocharacter]:
    """Contracting-chamber cocharacters with b_1 = 0 and max-norm exactly norm."""
    rng = range(-norm, norm + 1)

    def bs(k):
        if k == 0:
            yield ()
            return
        for head in bs(k - 1):
            for v in rng:
                yield head + (v,)

    out = []
    for a1 in range(1, norm + 1):
        for a2 in range(1, norm + 1):
            for rest in bs(r - 1):
                b = (0,) + rest
                vals = (a1, a2, *b)
                if max(abs(v) for v in vals) != norm:
                    continue
                lam = Cocharacter(a1, a2, b)
                if lam.in_contracting_chamber():
                    out.append(lam)
    return sorted(out, key=lambda c: c.as_tuple())


def is_regular(lam: Cocharacter, r: int, n: int) -> bool:
    return all(lam.pair(c) != 0 for chars in character_table(r, n) for c in chars)


def select_regular_cocharacter(
    r: int,
    n: int,
    predicate: Callable[[Cocharacter], bool] | None = None,
    exclude: Sequence[Cocharacter] = (),
    bound: int = 4,
    cap: int = 64,
) -> Cocharacter:
    """Smallest regular cocharacter (max-norm, then lexicographic).

    Candidates lie in the chamber where t -> 0 limits exist on all of
    M(r, n), normalised by b_1 = 0 (a common shift of b acts trivially).
    The search lattice starts at max-norm ``bound`` and is doubled up to
    ``cap``.
    """
    norm = 1
    while True:
        while norm <= bound:
            for lam in _candidates(r, norm):
                if lam in exclude or (predicate and not predicate(lam)):
                    continue
                if is_regular(lam, r, n):
                    _certify_regular(lam, r, n)
                    return lam
            norm += 1
        if bound >= cap:
            raise RuntimeError(f"no regular cocharacter with max-norm <= {cap} for r={r}, n={n}")
        bound = min(2 * bound, cap)


def _certify_regular(lam: Cocharacter, r: int, n: int) -> None:
    for pt in enumerate_fixed_points(r, n):
        if 0 in tangent_weights(pt, lam):
            raise AssertionError(f"{lam} has a zero weight at {pt}")


# ------------------------------------------------------------- cells


def cell_dimensions_from_weights(weights: Sequence[int]) -> tuple[int, int]:
    if 0 in weights:
        raise NotRegular("zero tangent weight")
    plus = sum(1 for w in weights if w > 0)
    return plus, len(weights) - plus


def cell_dimensions(f: FixedPointRecord | PartitionTuple, lam: Cocharacter) -> tuple[int, int]:
    """(plus_dim, minus_dim): counts of positive and negative weights."""
    return cell_dimensions_from_weights(tangent_weights(f, lam))


def order_value(label: PartitionTuple, lam: Cocharacter) -> int:
    """Sum of lam-weights of the boxes: a1(p-1) + a2(q-1) - b_s over all boxes."""
    r = len(label)
    return sum(lam.pair(box_character(b, r)) for b in boxes(label))


def _betti(counts: Iterable[int]) -> list[int]:
    counts = list(counts)
    if not counts:
        return []
    out = [0] * (max(counts) + 1)
    for k in counts:
        out[k] += 1
    return out


@dataclass
class CellRow:
    label: PartitionTuple
    weights: tuple[int, ...]
    plus_dim: int
    minus_dim: int
    order_value: int
    filtration_rank: int = -1


@dataclass
class CellTable:
    r: int
    n: int
    lam: Cocharacter
    rows: list[CellRow]
    certificate: list = field(default_factory=list)

    def poincare_M(self) -> list[int]:
        return _betti(2 * self.r * self.n - row.plus_dim for row in self.rows)

    def poincare_P(self) -> list[int]:
        return _betti(row.minus_dim for row in self.rows)


def _weights_job(args):
    pt, lam = args
    return tangent_weights(pt, lam)


def cell_table(r: int, n: int, lam: Cocharacter, workers: int = 1) -> CellTable:
    labels = enumerate_fixed_points(r, n)
    all_weights = pmap(_weights_job, [(pt, lam) for pt in labels], workers)
    rows = []
    for pt, w in zip(labels, all_weights):
        plus, minus = cell_dimensions_from_weights(w)
        rows.append(CellRow(pt, w, plus, minus, order_value(pt, lam)))
    table = CellTable(r, n, lam, rows)
    _assign_ranks(table)
    return table


def poincare_polynomials(r: int, n: int, lam: Cocharacter, workers: int = 1) -> tuple[list[int], list[int], bool]:
    """Betti vectors (b_0, b_2, ...) of M(r, n) from plus cells and of the
    central fibre from minus cells, and whether they agree."""
    table = cell_table(r, n, lam, workers)
    pm, pp = table.poincare_M(), table.poincare_P()
    return pm, pp, pm == pp


def _assign_ranks(table: CellTable) -> None:
    order = sorted(range(len(table.rows)), key=lambda k: (table.rows[k].order_value, k))
    for rank_, k in enumerate(order):
        table.rows[k].filtration_rank = rank_


def filtration_order(records: Sequence[FixedPointRecord | PartitionTuple], lam: Cocharacter, samples: Sequence = ()) -> CellTable:
    """Total order on fixed points by order value plus a monotonicity certificate.

    ``samples`` are flow diagnostics (see flow_limits.flow_sample_check); every
    sample whose plus and minus limits both exist must satisfy
    v(plus) <= v(minus).  A violation raises FiltrationViolation.
    """
    recs = [_record(f) for f in records]
    if not recs:
        raise ValueError("no fixed points")
    r, n = recs[0].r, recs[0].n
    rows = []
    for f in recs:
        w = tangent_weights(f, lam)
        plus, minus = cell_dimensions_from_weights(w)
        rows.append(CellRow(f.label, w, plus, minus, order_value(f.label, lam)))
    table = CellTable(r, n, lam, rows)
    _assign_ranks(table)
    for s in samples:
        if s.minus_label is None:
            continue
        entry = {"plus": s.plus_label, "minus": s.minus_label, "v_plus": s.v_plus, "v_minus": s.v_minus, "monotone": s.v_plus <= s.v_minus}
        table.certificate.append(entry)
        if not entry["monotone"]:
            raise FiltrationViolation(f"order value increases along flow: {entry}")
    return table


def symplectic_pairing_holds(weights: Sequence[int], lam: Cocharacter) -> bool:
    """Whether the weight multiset is invariant under w -> (a1 + a2) - w."""
    s = lam.a1 + lam.a2
    return Counter(weights) == Counter(s - w for w in weights)
