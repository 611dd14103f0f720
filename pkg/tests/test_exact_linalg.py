import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from adhmlab import exact_linalg as la
from adhmlab.exact_linalg import Laurent, NoLimit, T

from conftest import matrices, small_fractions

laurents = st.dictionaries(st.integers(-3, 3), st.integers(-5, 5), max_size=4).map(Laurent)


def leibniz_det(m):
    n = len(m)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for a, b in itertools.combinations(range(n), 2):
            if perm[a] > perm[b]:
                sign = -sign
        prod = Fraction(sign)
        for k in range(n):
            prod *= m[k][perm[k]]
        total += prod
    return total


def test_laurent_basics():
    p = 1 + 2 * T * T
    assert p.coefficient(0) == 1 and p.coefficient(2) == 2
    assert p.valuation() == 0
    assert (T ** -1).valuation() == -1
    assert Laurent(0).valuation() is None
    assert T * T.inverse() == 1
    assert (T + 1).evaluate(2) == 3


@given(laurents, laurents, laurents)
def test_laurent_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a - a == 0


@given(laurents, st.integers(-3, 3))
def test_laurent_evaluate_is_a_homomorphism(a, k):
    t = Fraction(3, 2)
    m = Laurent.monomial(k, 2)
    assert (a * m).evaluate(t) == a.evaluate(t) * m.evaluate(t)


def test_rank_kernel_examples():
    assert la.rank_kernel(((Fraction(0),),)) == (0, [(Fraction(1),)])
    r, k = la.rank_kernel(la.identity(3))
    assert r == 3 and k == []
    r, k = la.rank_kernel(la.to_matrix([[1, 2], [2, 4]]))
    assert r == 1 and k == [(Fraction(-2), Fraction(1))]


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_nullity_and_kernel(rows, cols, data):
    m = data.draw(matrices(rows, cols))
    r, kernel = la.rank_kernel(m, cols)
    assert r + len(kernel) == cols
    for v in kernel:
        assert all(x == 0 for x in la.mat_vec(m, v))
    assert la.rank(la.from_columns(kernel, cols), len(kernel)) == len(kernel) if kernel else True


@given(st.integers(1, 4), st.data())
def test_determinant_matches_leibniz(n, data):
    m = data.draw(matrices(n, n))
    assert la.determinant(m) == leibniz_det(m)
    if leibniz_det(m) != 0:
        assert la.matmul(m, la.inverse(m)) == la.identity(n)


@given(st.integers(1, 4), st.data())
def test_solve_affine(n, data):
    a = data.draw(matrices(n, n))
    x = data.draw(st.lists(small_fractions(), min_size=n, max_size=n))
    rhs = la.mat_vec(a, x)
    p, kernel = la.solve_affine(a, rhs, n)
    assert la.mat_vec(a, p) == rhs
    assert len(kernel) == n - la.rank(a)


def test_solve_affine_inconsistent():
    assert la.solve_affine(la.to_matrix([[1, 1], [1, 1]]), [1, 2], 2) is None


def test_smallest_invariant_subspace_examples():
    e1 = (Fraction(1), Fraction(0))
    e2 = (Fraction(0), Fraction(1))
    assert la.smallest_invariant_subspace([la.zeros(2, 2)], [e1], 2) == [e1]
    shift = la.to_matrix([[0, 1], [0, 0]])  # e2 -> e1
    assert len(la.smallest_invariant_subspace([shift], [e2], 2)) == 2
    assert la.smallest_invariant_subspace([shift], [], 2) == []


@given(st.integers(1, 4), st.data())
def test_smallest_invariant_subspace_is_idempotent_and_invariant(n, data):
    gens = data.draw(st.lists(matrices(n, n, st.integers(-2, 2).map(Fraction)), min_size=1, max_size=2))
    seeds = data.draw(st.lists(st.lists(st.integers(-2, 2).map(Fraction), min_size=n, max_size=n), max_size=2))
    sub = la.smallest_invariant_subspace(gens, seeds, n)
    assert la.smallest_invariant_subspace(gens, sub, n) == sub
    span = la.EchelonSpan(n)
    for v in sub:
        span.add(v)
    for g in gens:
        for v in sub:
            assert span.contains(la.mat_vec(g, v))
    for s in seeds:
        assert span.contains(s)


def test_laurent_limit_examples():
    assert la.laurent_limit_at_zero(((T,),)) == ((Fraction(0),),)
    assert la.laurent_limit_at_zero(((1 + 2 * T * T,),)) == ((Fraction(1),),)
    res = la.laurent_limit_at_zero(((T ** -1,),))
    assert isinstance(res, NoLimit) and res.poles == ((0, 0),)
    assert not res


@given(st.lists(st.dictionaries(st.integers(-1, 3), st.integers(-3, 3), max_size=3), min_size=4, max_size=4))
def test_limit_after_multiplying_by_t_exists(entries):
    m = ((Laurent(entries[0]), Laurent(entries[1])), (Laurent(entries[2]), Laurent(entries[3])))
    shifted = tuple(tuple(x * T for x in row) for row in m)
    assert not isinstance(la.laurent_limit_at_zero(shifted), NoLimit)


def test_echelon_span_is_canonical():
    a = la.span_basis([(1, 2, 3), (2, 4, 7)], 3)
    b = la.span_basis([(0, 0, 1), (1, 2, 0)], 3)
    assert a == b


def test_matmul_shape_checks():
    with pytest.raises(ValueError):
        la.matmul(la.identity(2), la.identity(3))
