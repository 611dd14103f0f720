"""Independent reference computations used to cross-check the main modules.

Nothing here calls into tangent_bb or fixed_points: generating functions are
expanded as plain power series and Hilbert-scheme tangent spaces are
computed from Hom(I, R/I) for monomial ideals.
"""

from __future__ import annotations

from collections import Counter


def series_mul(a: list[int], b: list[int], N: int) -> list[int]:
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                out[i + j] += x * y
    return out


def eta_power(k: int, N: int) -> list[int]:
    """Coefficients of prod_{m>=1} (1 - q^m)^(-k) up to q^N."""
    out = [1] + [0] * N
    for m in range(1, N + 1):
        geo = [1 if d % m == 0 else 0 for d in range(N + 1)]
        for _ in range(k):
            out = series_mul(out, geo, N)
    return out


def partition_counts(N: int) -> list[int]:
    return eta_power(1, N)


def blowup_rank2_counts(N: int) -> list[int]:
    """sum_k q^(k^2) prod (1 - q^m)^(-4): rank 2, c1 = 0 on one blowup."""
    base = eta_power(4, N)
    out = [0] * (N + 1)
    k = 0
    while k * k <= N:
        mult = 1 if k == 0 else 2
        for d in range(N + 1 - k * k):
            out[d + k * k] += mult * base[d]
        k += 1
    return out


def framed_betti_series(r: int, N: int) -> list[list[int]]:
    """Betti vectors of M(r, n) for n = 0..N from

        sum_n P_t(M(r, n)) q^n = prod_{s=1}^{r} prod_{m>=1} 1 / (1 - t^(2(rm - s)) q^m).

    Entry [n][k] is b_{2k}.
    """
    # bivariate series as dict (n, k) -> coeff, k = half the t-degree
    poly: Counter = Counter({(0, 0): 1})
    for m in range(1, N + 1):
        for s in range(1, r + 1):
            deg = r * m - s
            new: Counter = Counter()
            for (n, k), c in poly.items():
                e = 0
                while n + e * m <= N:
                    new[(n + e * m, k + e * deg)] += c
                    e += 1
            poly = new
    out = []
    for n in range(N + 1):
        ks = [k for (nn, k) in poly if nn == n]
        vec = [0] * (max(ks) + 1)
        for k in ks:
            vec[k] = poly[(n, k)]
        out.append(vec)
    return out


def hilbert_betti_from_lengths(n: int) -> list[int]:
    """b_{2k} of Hilb^n(C^2) as #{partitions of n with n - length = k}, from
    the generating function prod_m 1 / (1 - t^(2m-2) q^m)."""
    return framed_betti_series(1, n)[n]


# ------------------------------------------------- Hilbert scheme tangent


def _diagram_cells(parts) -> set[tuple[int, int]]:
    """Monomials x^a y^b outside the ideal; parts[b] is the length of row b."""
    return {(a, b) for b, length in enumerate(parts) for a in range(length)}


def hom_dimension(parts, u: int, v: int) -> int:
    """dim of the (u, v)-graded piece of Hom_R(I, R/I) for the monomial ideal I.

    phi(m) = c_m x^u y^v m for monomials m in I.  R-linearity links c_{zm}
    to c_m whenever zm shifted by (u, v) is a standard monomial.
    """
    cells = _diagram_cells(parts)

    def in_ideal(m):
        return m[0] >= 0 and m[1] >= 0 and m not in cells

    # variables: m in I with m + (u, v) a standard monomial
    vars_ = [(a - u, b - v) for (a, b) in cells if in_ideal((a - u, b - v))]
    parent = {m: m for m in vars_}
    zero = set()

    def find(m):
        while parent[m] != m:
            parent[m] = parent[parent[m]]
            m = parent[m]
        return m

    for m in vars_:
        for z in ((1, 0), (0, 1)):
            src = (m[0] - z[0], m[1] - z[1])
            if not in_ideal(src):
                continue
            if src in parent:
                ra, rb = find(src), find(m)
                if ra != rb:
                    parent[ra] = rb
            else:
                # z . phi(src) = 0 since src + (u, v) is not standard
                zero.add(m)
    dead = {find(m) for m in zero}
    return len({find(m) for m in vars_} - dead)


def hilbert_tangent_weights(parts, a1: int, a2: int) -> list[int]:
    """lam-weights of T_I Hilb^n(C^2) for lam = (a1, a2): -(a1 u + a2 v) per degree."""
    n = sum(parts)
    out = []
    R = n + 1
    for u in range(-R, R + 1):
        for v in range(-R, R + 1):
            d = hom_dimension(parts, u, v)
            out.extend([-(a1 * u + a2 * v)] * d)
    return sorted(out)


def _partitions(m: int, largest: int | None = None):
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    for p in range(min(m, largest), 0, -1):
        for rest in _partitions(m - p, p):
            yield (p,) + rest


def punctual_betti(n: int, a1: int, a2: int) -> list[int]:
    """Betti vector of the punctual Hilbert scheme from negative-weight counts."""
    counts = Counter()
    for parts in _partitions(n):
        w = hilbert_tangent_weights(parts, a1, a2)
        if len(w) != 2 * n or 0 in w:
            raise AssertionError(f"bad Hilbert tangent space at {parts}")
        counts[sum(1 for x in w if x < 0)] += 1
    return [counts[k] for k in range(max(counts) + 1)]
