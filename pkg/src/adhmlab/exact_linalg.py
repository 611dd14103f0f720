"""Exact linear algebra over Q and over Laurent polynomials in one variable t.

Matrices are tuples of row tuples.  Entries are ``fractions.Fraction`` for
rational matrices and :class:`Laurent` for matrices over Q[t, 1/t]; the
generic helpers (``matmul``, ``add`` ...) work for either.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Matrix = tuple  # tuple[tuple[entry, ...], ...]
Vector = tuple


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class Laurent:
    """A Laurent polynomial sum_k c_k t^k with rational coefficients.

    Stored as a sorted tuple of (exponent, coefficient) pairs with no zero
    coefficients.  Immutable and hashable.
    """

    __slots__ = ("terms",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            items = ()
        elif isinstance(coeffs, Laurent):
            items = coeffs.terms
        elif isinstance(coeffs, dict):
            items = tuple(sorted((int(k), frac(v)) for k, v in coeffs.items() if v != 0))
        else:
            c = frac(coeffs)
            items = ((0, c),) if c != 0 else ()
        object.__setattr__(self, "terms", items)

    def __setattr__(self, name, value):
        raise AttributeError("Laurent is immutable")

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "Laurent":
        return cls({exponent: coeff})

    @property
    def coeffs(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self):
        """Lowest exponent, or None for the zero polynomial."""
        return self.terms[0][0] if self.terms else None

    def coefficient(self, k: int) -> Fraction:
        for e, c in self.terms:
            if e == k:
                return c
        return Fraction(0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def evaluate(self, t) -> Fraction:
        t = frac(t)
        return sum((c * t**e for e, c in self.terms), Fraction(0))

    @staticmethod
    def _coerce(other):
        if isinstance(other, Laurent):
            return other
        if isinstance(other, (int, Fraction)):
            return Laurent(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return Laurent(acc)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -c for e, c in self.terms})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return Laurent(acc)

    __rmul__ = __mul__

    def inverse(self) -> "Laurent":
        """Inverse of a monomial; other Laurent polynomials are not units."""
        if not self.is_monomial():
            raise ZeroDivisionError("only nonzero monomials are invertible in Q[t, 1/t]")
        (e, c), = self.terms
        return Laurent({-e: 1 / c})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Laurent(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(f"{c}")
            else:
                parts.append(f"{c}*t^{e}")
        return " + ".join(parts)


T = Laurent.monomial(1)


# ---------------------------------------------------------------- matrices


def zeros(rows: int, cols: int, zero=Fraction(0)) -> Matrix:
    return tuple(tuple(zero for _ in range(cols)) for _ in range(rows))


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    return tuple(tuple(one if a == b else zero for b in range(n)) for a in range(n))


def diagonal(entries: Sequence, zero=Fraction(0)) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[a] if a == b else zero for b in range(n)) for a in range(n))


def to_matrix(rows: Iterable[Iterable], rational: bool = True) -> Matrix:
    if rational:
        return tuple(tuple(frac(x) for x in row) for row in rows)
    return tuple(tuple(row) for row in rows)


def shape(m: Matrix, cols: int | None = None) -> tuple[int, int]:
    """Shape of ``m``; ``cols`` disambiguates matrices with zero rows."""
    if not m:
        return (0, cols or 0)
    return (len(m), len(m[0]))


def transpose(m: Matrix, cols: int = 0) -> Matrix:
    if not m:
        return tuple(() for _ in range(cols))
    return tuple(zip(*m))


def matmul(a: Matrix, b: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    """Product of ``a`` (p x q) and ``b`` (q x s).

    ``cols`` gives s when ``b`` has no rows (q == 0); the result is then the
    zero p x s matrix.
    """
    if not b:
        return tuple(tuple(Fraction(0) for _ in range(cols or 0)) for _ in a)
    if a and len(a[0]) != len(b):
        raise ValueError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = tuple(zip(*b))
    if not bt:
        return tuple(() for _ in a)
    out = []
    for row in a:
        out.append(tuple(_dot(row, col) for col in bt))
    return tuple(out)


def _dot(u, v):
    acc = 0
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x * y
    if isinstance(acc, int):
        return Fraction(acc)
    return acc


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c, m: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in m)


def is_zero_matrix(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return sub(matmul(a, b), matmul(b, a))


def mat_vec(m: Matrix, v: Vector) -> Vector:
    return tuple(_dot(row, v) for row in m)


def columns(m: Matrix, ncols: int | None = None) -> list[Vector]:
    if not m:
        return [() for _ in range(ncols or 0)]
    return [tuple(col) for col in zip(*m)]


def from_columns(cols: Sequence[Vector], nrows: int) -> Matrix:
    if not cols:
        return tuple(() for _ in range(nrows))
    return tuple(zip(*cols))


def trace(m: Matrix):
    return sum((m[k][k] for k in range(len(m))), Fraction(0))


def flatten(m: Matrix) -> Vector:
    return tuple(x for row in m for x in row)


def unflatten(v: Vector, rows: int, cols: int) -> Matrix:
    return tuple(tuple(v[r * cols:(r + 1) * cols]) for r in range(rows))


# ---------------------------------------------------------- elimination


def rref(m: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    rows = [[frac(x) for x in row] for row in m]
    if not rows:
        return [], []
    ncols = len(rows[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        pr = rows[r]
        for k in range(len(rows)):
            if k != r:
                f = rows[k][c]
                if f != 0:
                    rows[k] = [x - f * y for x, y in zip(rows[k], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank_kernel(m: Matrix, ncols: int | None = None) -> tuple[int, list[Vector]]:
    """Rank of ``m`` and a kernel basis in canonical form.

    Kernel vectors are indexed by the free columns of the reduced echelon
    form: the vector for free column f has a 1 in position f, zeros in the
    other free positions and minus the echelon entries at the pivots.
    """
    if ncols is None:
        ncols = len(m[0]) if m else 0
    rows, pivots = rref(m, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return len(pivots), basis


def rank(m: Matrix, ncols: int | None = None) -> int:
    return len(rref(m, ncols)[1])


def determinant(m: Matrix) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    rows = [[frac(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((k for k in range(c, n) if rows[k][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        p = rows[c][c]
        det *= p
        for k in range(c + 1, n):
            f = rows[k][c] / p
            if f != 0:
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[c])]
    return det


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(map(frac, row)) + [Fraction(int(a == b)) for b in range(n)] for a, row in enumerate(m)]
    rows, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


def solve_affine(a: Matrix, rhs: Vector, ncols: int) -> tuple[Vector, list[Vector]] | None:
    """Solve a x = rhs over Q.

    Returns (particular solution, kernel basis) or None when inconsistent.
    The particular solution sets every free variable to zero.
    """
    aug = [list(row) + [frac(b)] for row, b in zip(a, rhs)]
    rows, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(rows, pivots):
        x[p] = row[ncols]
    _, kernel = rank_kernel(a, ncols)
    return tuple(x), kernel


class EchelonSpan:
    """Incrementally grown subspace of Q^dim kept in reduced echelon form."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: dict[int, list[Fraction]] = {}

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence) -> list[Fraction]:
        w = [frac(x) for x in v]
        for p, row in self._rows.items():
            f = w[p]
            if f != 0:
                w = [x - f * y for x, y in zip(w, row)]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        w = self.reduce(v)
        p = next((k for k, x in enumerate(w) if x != 0), None)
        if p is None:
            return False
        c = w[p]
        w = [x / c for x in w]
        for q, row in self._rows.items():
            f = row[p]
            if f != 0:
                self._rows[q] = [x - f * y for x, y in zip(row, w)]
        self._rows[p] = w
        return True

    def basis(self) -> list[Vector]:
        """Basis in reduced echelon form, ordered by pivot position."""
        return [tuple(self._rows[p]) for p in sorted(self._rows)]


def span_basis(vectors: Iterable[Sequence], dim: int) -> list[Vector]:
    span = EchelonSpan(dim)
    for v in vectors:
        span.add(v)
    return span.basis()


def smallest_invariant_subspace(generators: Sequence[Matrix], seeds: Sequence[Vector], n: int | None = None) -> list[Vector]:
    """Smallest subspace containing ``seeds`` and stable under every generator.

    Saturation: apply all generators to the newly found basis vectors until
    nothing new appears.  The dimension grows at every productive round, so
    at most n rounds run.
    """
    if n is None:
        if generators:
            n = len(generators[0])
        elif seeds:
            n = len(seeds[0])
        else:
            return []
    for g in generators:
        if len(g) != n or any(len(row) != n for row in g):
            raise ValueError(f"generator is not {n}x{n}")
    for s in seeds:
        if len(s) != n:
            raise ValueError(f"seed has length {len(s)}, expected {n}")
    span = EchelonSpan(n)
    frontier = [tuple(map(frac, s)) for s in seeds if span.add(s)]
    for _ in range(n):
        if not frontier:
            break
        new = []
        for v in frontier:
            for g in generators:
                w = mat_vec(g, v)
                if span.add(w):
                    new.append(w)
        frontier = new
    return span.basis()


# ----------------------------------------------------------- Laurent limits


@dataclass(frozen=True)
class NoLimit:
    """The family has a pole at t = 0 at the listed (row, col) positions."""

    poles: tuple[tuple[int, int], ...]

    def __bool__(self):
        return False


def laurent_limit_at_zero(m: Matrix) -> Matrix | NoLimit:
    """Constant-term matrix of ``m`` when no entry has a negative exponent."""
    poles = []
    out = []
    for a, row in enumerate(m):
        out_row = []
        for b, x in enumerate(row):
            x = Laurent._coerce(x)
            v = x.valuation()
            if v is not None and v < 0:
                poles.append((a, b))
            out_row.append(x.coefficient(0))
        out.append(tuple(out_row))
    if poles:
        return NoLimit(tuple(poles))
    return tuple(out)


def to_laurent(m: Matrix) -> Matrix:
    return tuple(tuple(Laurent._coerce(x) for x in row) for row in m)
