"""ADHM data (B1, B2, i, j) for framed torsion-free sheaves on the plane.

A datum of charge n and rank r consists of B1, B2 in End(C^n), i: C^r -> C^n
and j: C^n -> C^r.  It is admissible when [B1, B2] + ij = 0 and no proper
subspace containing im(i) is stable under B1 and B2.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact_linalg as la
from .exact_linalg import Laurent, Matrix


class InadmissibleDatum(ValueError):
    pass


@dataclass(frozen=True)
class AdhmDatum:
    r: int
    n: int
    B1: Matrix
    B2: Matrix
    i: Matrix  # n x r
    j: Matrix  # r x n

    def __post_init__(self):
        if self.r < 1 or self.n < 0:
            raise ValueError(f"need r >= 1 and n >= 0, got r={self.r}, n={self.n}")
        for name in ("B1", "B2"):
            m = getattr(self, name)
            if len(m) != self.n or any(len(row) != self.n for row in m):
                raise ValueError(f"{name} must be {self.n}x{self.n}")
        if len(self.i) != self.n or any(len(row) != self.r for row in self.i):
            raise ValueError(f"i must be {self.n}x{self.r}")
        if len(self.j) != self.r or any(len(row) != self.n for row in self.j):
            raise ValueError(f"j must be {self.r}x{self.n}")

    @classmethod
    def from_lists(cls, r, n, B1, B2, i, j) -> "AdhmDatum":
        if n == 0:
            return cls.empty(r)
        return cls(r, n, la.to_matrix(B1), la.to_matrix(B2), la.to_matrix(i), la.to_matrix(j))

    @classmethod
    def empty(cls, r: int) -> "AdhmDatum":
        return cls(r, 0, (), (), (), tuple(() for _ in range(r)))

    def components(self):
        return self.B1, self.B2, self.i, self.j

    def map_entries(self, f) -> "AdhmDatum":
        def m(mat):
            return tuple(tuple(f(x) for x in row) for row in mat)
        return AdhmDatum(self.r, self.n, m(self.B1), m(self.B2), m(self.i), m(self.j))

    def is_laurent(self) -> bool:
        return any(isinstance(x, Laurent) for mat in self.components() for row in mat for x in row)


@dataclass(frozen=True)
class FramedTorusElement:
    """(t1, t2, e_1..e_r); entries are nonzero rationals or Laurent monomials."""

    t1: object
    t2: object
    e: tuple

    def __post_init__(self):
        for x in (self.t1, self.t2, *self.e):
            if not x:
                raise ValueError("torus entries must be invertible")

    @classmethod
    def identity(cls, r: int) -> "FramedTorusElement":
        one = Fraction(1)
        return cls(one, one, (one,) * r)

    @classmethod
    def of(cls, t1, t2, e: Sequence) -> "FramedTorusElement":
        def c(x):
            return x if isinstance(x, Laurent) else la.frac(x)
        return cls(c(t1), c(t2), tuple(c(x) for x in e))


@dataclass(frozen=True)
class GaugeElement:
    """g in GL_n together with its inverse (over Q or over Q[t, 1/t])."""

    g: Matrix
    g_inv: Matrix

    @classmethod
    def rational(cls, g: Matrix) -> "GaugeElement":
        g = la.to_matrix(g)
        if la.determinant(g) == 0:
            raise ValueError("gauge element is singular")
        return cls(g, la.inverse(g))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "GaugeElement":
        """Diagonal gauge; entries are nonzero rationals or Laurent monomials."""
        inv = []
        for x in entries:
            if not x:
                raise ValueError("gauge element is singular")
            inv.append(x.inverse() if isinstance(x, Laurent) else 1 / la.frac(x))
        zero = Laurent(0) if any(isinstance(x, Laurent) for x in entries) else Fraction(0)
        return cls(la.diagonal(tuple(entries), zero), la.diagonal(tuple(inv), zero))

    @property
    def n(self) -> int:
        return len(self.g)


# ------------------------------------------------------------ predicates


def moment_map(x: AdhmDatum) -> Matrix:
    return la.add(la.commutator(x.B1, x.B2), la.matmul(x.i, x.j, cols=x.n))


def check_equation(x: AdhmDatum) -> bool:
    if x.n == 0:
        return True
    return la.is_zero_matrix(moment_map(x))


def is_stable(x: AdhmDatum) -> bool:
    if x.n == 0:
        return True
    seeds = la.columns(x.i, x.r)
    span = la.smallest_invariant_subspace([x.B1, x.B2], seeds, x.n)
    return len(span) == x.n


def is_admissible(x: AdhmDatum) -> bool:
    return check_equation(x) and is_stable(x)


def require_admissible(*data: AdhmDatum) -> None:
    for x in data:
        if not check_equation(x):
            raise InadmissibleDatum("datum violates [B1,B2] + ij = 0")
        if not is_stable(x):
            raise InadmissibleDatum("datum is not stable")


# --------------------------------------------------------------- actions


def gauge_act(g: GaugeElement | Matrix, x: AdhmDatum) -> AdhmDatum:
    """(g B1 g^-1, g B2 g^-1, g i, j g^-1)."""
    if not isinstance(g, GaugeElement):
        g = GaugeElement.rational(g)
    if g.n != x.n:
        raise ValueError(f"gauge element has size {g.n}, datum has n={x.n}")
    if x.n == 0:
        return x
    gi = g.g_inv
    return AdhmDatum(
        x.r,
        x.n,
        la.matmul(la.matmul(g.g, x.B1), gi),
        la.matmul(la.matmul(g.g, x.B2), gi),
        la.matmul(g.g, x.i),
        la.matmul(x.j, gi),
    )


def torus_act(tau: FramedTorusElement, x: AdhmDatum) -> AdhmDatum:
    """(t1 B1, t2 B2, i e^-1, t1 t2 e j)."""
    if len(tau.e) != x.r:
        raise ValueError(f"torus element has {len(tau.e)} framing entries, datum has r={x.r}")
    e_inv = [c.inverse() if isinstance(c, Laurent) else 1 / c for c in tau.e]
    t12 = tau.t1 * tau.t2
    i = tuple(tuple(v * e_inv[s] for s, v in enumerate(row)) for row in x.i)
    j = tuple(tuple(t12 * tau.e[s] * v for v in row) for s, row in enumerate(x.j))
    return AdhmDatum(x.r, x.n, la.scale(tau.t1, x.B1), la.scale(tau.t2, x.B2), i, j)


# ------------------------------------------------------ gauge equivalence


def _gauge_system(x: AdhmDatum, y: AdhmDatum):
    """Linear equations in the n^2 entries of g for g . x = y."""
    n, r = x.n, x.r
    idx = lambda a, b: a * n + b  # noqa: E731
    rows, rhs = [], []
    for Bx, By in ((x.B1, y.B1), (x.B2, y.B2)):
        # (g Bx)_{ac} - (By g)_{ac} = 0
        for a in range(n):
            for c in range(n):
                row = [Fraction(0)] * (n * n)
                for b in range(n):
                    row[idx(a, b)] += Bx[b][c]
                    row[idx(b, c)] -= By[a][b]
                rows.append(row)
                rhs.append(Fraction(0))
    # g i_x = i_y
    for a in range(n):
        for s in range(r):
            row = [Fraction(0)] * (n * n)
            for b in range(n):
                row[idx(a, b)] += x.i[b][s]
            rows.append(row)
            rhs.append(y.i[a][s])
    # j_y g = j_x
    for s in range(r):
        for c in range(n):
            row = [Fraction(0)] * (n * n)
            for b in range(n):
                row[idx(b, c)] += y.j[s][b]
            rows.append(row)
            rhs.append(x.j[s][c])
    return rows, rhs


def _has_invertible_member(p, kernel, n, samples, rng) -> Matrix | None:
    """Search the affine space p + span(kernel) for an invertible matrix."""

    def at(coeffs):
        v = list(p)
        for c, k in zip(coeffs, kernel):
            if c:
                v = [a + c * b for a, b in zip(v, k)]
        return la.unflatten(tuple(v), n, n)

    d = len(kernel)
    g = at([0] * d)
    if la.determinant(g) != 0:
        return g
    if d == 0:
        return None
    for _ in range(samples):
        g = at([rng.randint(-10, 10) for _ in range(d)])
        if la.determinant(g) != 0:
            return g
    # det(p + sum c_k K_k) has degree <= n in every c_k; vanishing on the
    # grid {0..n}^d forces it to vanish identically.
    for coeffs in itertools.product(range(n + 1), repeat=d):
        g = at(coeffs)
        if la.determinant(g) != 0:
            return g
    return None


def find_gauge(x: AdhmDatum, y: AdhmDatum, samples: int = 8, seed: int = 0) -> Matrix | None:
    """An invertible g with gauge_act(g, x) == y, or None."""
    if x.r != y.r or x.n != y.n:
        return None
    n = x.n
    if n == 0:
        return ()
    rows, rhs = _gauge_system(x, y)
    sol = la.solve_affine(rows, rhs, n * n)
    if sol is None:
        return None
    p, kernel = sol
    g = _has_invertible_member(p, kernel, n, samples, random.Random(seed))
    if g is not None and gauge_act(g, x) != y:
        raise AssertionError("gauge certificate failed")
    return g


def are_gauge_equivalent(x: AdhmDatum, y: AdhmDatum, samples: int = 8, seed: int = 0) -> bool:
    require_admissible(x, y)
    if (x.r, x.n) != (y.r, y.n):
        raise ValueError("data have different (r, n)")
    return find_gauge(x, y, samples, seed) is not None


# ------------------------------------------------------------- invariants


def words(max_len: int, min_len: int = 0):
    """Words in the letters '1', '2' ordered by length, then lexicographically."""
    for length in range(min_len, max_len + 1):
        for w in itertools.product("12", repeat=length):
            yield "".join(w)


def word_matrices(x: AdhmDatum, max_len: int) -> dict[str, Matrix]:
    """w(B1, B2) for every word of length <= max_len (empty word -> identity)."""
    zero = Laurent(0) if x.is_laurent() else Fraction(0)
    one = Laurent(1) if x.is_laurent() else Fraction(1)
    out = {"": la.identity(x.n, one, zero)}
    gens = {"1": x.B1, "2": x.B2}
    for w in words(max_len, 1):
        out[w] = la.matmul(out[w[:-1]], gens[w[-1]])
    return out


def evaluate_invariants(x: AdhmDatum, L: int) -> list:
    """GL_n-invariant functions on ADHM data, in a fixed order.

    First tr w(B1, B2) for every nonempty word of length <= L, then every
    entry (row-major) of j w(B1, B2) i for every word of length <= L,
    including the empty one.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    mats = word_matrices(x, L)
    out = []
    for w in words(L, 1):
        out.append(la.trace(mats[w]))
    for w in words(L, 0):
        jwi = la.matmul(la.matmul(x.j, mats[w], cols=x.n), x.i, cols=x.r)
        out.extend(la.flatten(jwi))
    return out


def word_span(x: AdhmDatum, L: int) -> list[Matrix]:
    """Basis of the span of w(B1, B2) over nonempty words of length <= L.

    The span only depends on words up to the length where it stabilises,
    which is at most n^2, so this avoids enumerating 2^L words.
    """
    n = x.n
    span = la.EchelonSpan(n * n)
    frontier = [m for m in (x.B1, x.B2) if span.add(la.flatten(m))]
    length = 1
    while frontier and length < L:
        new = []
        for m in frontier:
            for g in (x.B1, x.B2):
                prod = la.matmul(m, g)
                if span.add(la.flatten(prod)):
                    new.append(prod)
        frontier = new
        length += 1
    return [la.unflatten(v, n, n) for v in span.basis()]


def invariants_vanish(x: AdhmDatum, L: int) -> bool:
    """True iff evaluate_invariants(x, L) is identically zero.

    Every invariant is linear in the word matrix, so it suffices to test a
    basis of the word span.
    """
    if x.n == 0:
        return True
    basis = word_span(x, L)
    if any(la.trace(m) != 0 for m in basis):
        return False
    for m in [la.identity(x.n)] + basis:
        if not la.is_zero_matrix(la.matmul(la.matmul(x.j, m), x.i)):
            return False
    return True


def is_in_central_fiber(x: AdhmDatum) -> bool:
    """Membership in the fibre of M(r,n) -> M_0(r,n) over n[0].

    The closed orbit in the closure of GL_n x is the zero orbit exactly when
    all invariants vanish; the word-length bound is n^2.
    """
    require_admissible(x)
    return invariants_vanish(x, max(1, x.n * x.n))


# ------------------------------------------------------------------ JSON


def _q(x) -> str:
    return str(la.frac(x))


def datum_to_json(x: AdhmDatum) -> dict:
    def m(mat):
        return [[_q(v) for v in row] for row in mat]
    return {"r": x.r, "n": x.n, "B1": m(x.B1), "B2": m(x.B2), "i": m(x.i), "j": m(x.j)}


def datum_from_json(d: dict) -> AdhmDatum:
    try:
        r, n = int(d["r"]), int(d["n"])
        if n == 0:
            return AdhmDatum.empty(r)

        def m(key):
            rows = d[key]
            if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
                raise TypeError(f"{key} must be a list of rows")
            return la.to_matrix(rows)

        return AdhmDatum(r, n, m("B1"), m("B2"), m("i"), m("j"))
    except (KeyError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed ADHM datum JSON: {exc}") from exc
