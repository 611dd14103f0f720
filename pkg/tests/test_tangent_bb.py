import math
import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from adhmlab import exact_linalg as la
from adhmlab.adhm_core import AdhmDatum, torus_act
from adhmlab.exact_linalg import Laurent
from adhmlab.fixed_points import adhm_representative, compensating_gauge, enumerate_fixed_points, fixed_point_records
from adhmlab.flow_limits import FlowSample
from adhmlab.oracles import _partitions, framed_betti_series, hilbert_tangent_weights
from adhmlab.sampling import random_admissible
from adhmlab.tangent_bb import (
    Cocharacter,
    FiltrationViolation,
    NotRegular,
    c1_vector_to_datum,
    cell_dimensions,
    cell_table,
    d0_matrix,
    d1_matrix,
    filtration_order,
    is_regular,
    order_value,
    poincare_polynomials,
    select_regular_cocharacter,
    tangent_basis,
    tangent_characters,
    tangent_weights,
)


def test_tangent_dimension_examples():
    assert len(tangent_basis(adhm_representative(((1,),)))) == 2
    for pt in enumerate_fixed_points(2, 3):
        assert len(tangent_basis(adhm_representative(pt))) == 12


@given(st.sampled_from([(1, 1), (1, 3), (2, 2), (2, 3), (3, 1)]), st.integers(0, 10**6))
def test_complex_at_random_points(pair, seed):
    r, n = pair
    x = random_admissible(random.Random(seed), r, n)
    assert la.is_zero_matrix(la.matmul(d1_matrix(x), d0_matrix(x)))
    assert len(tangent_basis(x)) == 2 * r * n


def test_weights_r1_n1():
    assert tangent_weights(((1,),), Cocharacter(1, 2, (0,))) == (1, 2)


def test_weights_r1_n1_by_chart_conjugation():
    # chart (b1, b2) -> (b1, b2, 1, 0) around the fixed point; lam(t) scales
    # the chart coordinates and the exponents are the weights
    lam = Cocharacter(1, 2, (0,))
    x = AdhmDatum.from_lists(1, 1, [[3]], [[5]], [[1]], [[0]]).map_entries(Laurent._coerce)
    y = torus_act(lam.torus_element(), x)
    assert y.i == ((Laurent(1),),)
    exps = sorted([y.B1[0][0].valuation(), y.B2[0][0].valuation()])
    assert exps == list(tangent_weights(((1,),), lam))


def test_framing_only_cocharacter_sees_no_diagonal_block():
    lam = Cocharacter(0, 0, (0, 1))
    for n in range(1, 4):
        for lam_part in _partitions(n):
            w = tangent_weights(((lam_part), ()), lam)
            assert Counter(w)[0] == 2 * n
            assert all(abs(v) == 1 for v in w if v)


def test_weights_match_hilbert_scheme_oracle():
    for n in range(1, 5):
        for lam in [select_regular_cocharacter(1, n), Cocharacter(5, 7, (0,))]:
            for parts in _partitions(n):
                assert list(tangent_weights((parts,), lam)) == hilbert_tangent_weights(parts, lam.a1, lam.a2)


def numeric_weights(pt, lam):
    """Weights from eigenvalues of lam(2) acting on ker d1 / im d0."""
    x = adhm_representative(pt)
    r, n = x.r, x.n
    tau = lam.at(2)
    g = compensating_gauge(pt, tau)
    basis = tangent_basis(x)
    image = la.columns(d0_matrix(x))
    big = la.from_columns(basis + image, len(basis[0]))
    cols = []
    for v in basis:
        y = c1_vector_to_datum(v, r, n)
        # the action is linear in the deformation, so act on it as a datum
        z = torus_act(tau, y)
        z = AdhmDatum(r, n, la.matmul(la.matmul(g.g, z.B1), g.g_inv), la.matmul(la.matmul(g.g, z.B2), g.g_inv),
                      la.matmul(g.g, z.i), la.matmul(z.j, g.g_inv))
        w = la.flatten(z.B1) + la.flatten(z.B2) + la.flatten(z.i) + la.flatten(z.j)
        p, _ = la.solve_affine(big, w, len(basis) + len(image))
        cols.append(p[: len(basis)])
    m = np.array([[float(c) for c in row] for row in la.from_columns(cols, len(basis))])
    eig = np.linalg.eigvals(m)
    return sorted(int(round(math.log2(abs(e)))) for e in eig)


@pytest.mark.parametrize("pt", enumerate_fixed_points(1, 3) + enumerate_fixed_points(2, 2))
def test_weights_match_numeric_linearisation(pt):
    lam = select_regular_cocharacter(len(pt), sum(map(sum, pt)))
    assert numeric_weights(pt, lam) == list(tangent_weights(pt, lam))


def test_characters_specialise_to_weights():
    for pt in enumerate_fixed_points(2, 2):
        lam = Cocharacter(3, 5, (0, -2))
        assert sorted(lam.pair(c) for c in tangent_characters(pt)) == list(tangent_weights(pt, lam))


def test_select_regular_examples():
    assert select_regular_cocharacter(1, 1) == Cocharacter(1, 1, (0,))
    assert not is_regular(Cocharacter(1, 1, (0,)), 1, 2)
    assert 0 in tangent_weights(((1, 1),), Cocharacter(1, 1, (0,)))
    lam = select_regular_cocharacter(1, 2)
    assert lam == Cocharacter(1, 2, (0,))
    assert select_regular_cocharacter(1, 2) == lam
    for pt in enumerate_fixed_points(1, 2):
        assert 0 not in tangent_weights(pt, lam)


def test_select_regular_respects_predicate_and_cap():
    lam = select_regular_cocharacter(2, 2, predicate=lambda c: c.a1 > c.a2)
    assert lam.a1 > lam.a2 and is_regular(lam, 2, 2)
    with pytest.raises(RuntimeError):
        select_regular_cocharacter(1, 2, predicate=lambda c: False, cap=4)


def test_cell_dimension_examples():
    assert cell_dimensions(((1,),), Cocharacter(1, 2, (0,))) == (2, 0)
    lam = select_regular_cocharacter(1, 2)
    assert sorted(cell_dimensions(pt, lam)[1] for pt in enumerate_fixed_points(1, 2)) == [0, 1]
    with pytest.raises(NotRegular):
        cell_dimensions(((1, 1),), Cocharacter(1, 1, (0,)))


def test_poincare_examples():
    assert poincare_polynomials(1, 1, Cocharacter(1, 2, (0,))) == ([1], [1], True)
    assert poincare_polynomials(1, 2, Cocharacter(1, 2, (0,))) == ([1, 1], [1, 1], True)


def test_poincare_matches_framed_oracle():
    for r in range(1, 4):
        series = framed_betti_series(r, 4 if r < 3 else 3)
        for n, expected in enumerate(series):
            lam = select_regular_cocharacter(r, n)
            pm, pp, eq = poincare_polynomials(r, n, lam)
            assert eq and pm == expected


@given(
    st.sampled_from([(1, 3), (1, 4), (2, 2), (2, 3), (3, 2)]),
    st.integers(1, 9),
    st.integers(1, 9),
    st.lists(st.integers(-8, 8), min_size=2, max_size=2),
)
def test_poincare_independent_of_regular_lambda(pair, a1, a2, bs):
    r, n = pair
    lam = Cocharacter(a1, a2, (0,) + tuple(bs[: r - 1]))
    assume(lam.in_contracting_chamber() and is_regular(lam, r, n))
    table = cell_table(r, n, lam)
    assert table.poincare_M() == table.poincare_P() == framed_betti_series(r, n)[n]
    assert sum(1 for row in table.rows if row.plus_dim == 2 * r * n) == 1
    assert all(row.plus_dim + row.minus_dim == 2 * r * n for row in table.rows)


def test_plus_cells_need_the_contracting_chamber():
    # regular, but t -> 0 limits do not exist on all of M(2, 2)
    lam = Cocharacter(1, 2, (0, 6))
    assert is_regular(lam, 2, 2) and not lam.in_contracting_chamber()
    assert cell_table(2, 2, lam).poincare_M()[0] == 0


def test_parallel_table_equals_serial():
    lam = select_regular_cocharacter(2, 3)
    a, b = cell_table(2, 3, lam, workers=1), cell_table(2, 3, lam, workers=3)
    assert [(x.label, x.weights, x.filtration_rank) for x in a.rows] == [(x.label, x.weights, x.filtration_rank) for x in b.rows]


def test_filtration_examples():
    t = filtration_order(fixed_point_records(1, 1), Cocharacter(1, 1, (0,)))
    assert [row.filtration_rank for row in t.rows] == [0] and t.certificate == []
    lam = select_regular_cocharacter(1, 2)
    t = filtration_order(fixed_point_records(1, 2), lam)
    assert len({row.order_value for row in t.rows}) == 2
    assert sorted(row.filtration_rank for row in t.rows) == [0, 1]


def test_order_value_formula():
    lam = Cocharacter(2, 3, (0, 5))
    # boxes (1,1),(2,1),(1,2) in component 0; (1,1) in component 1
    assert order_value(((2, 1), (1,)), lam) == (0 + 2 + 3) + (-5)


def test_filtration_violation_is_loud():
    lam = select_regular_cocharacter(1, 2)
    bad = FlowSample(((1, 1),), ((2,),), order_value(((1, 1),), lam), order_value(((2,),), lam), True)
    assert bad.v_plus > bad.v_minus
    with pytest.raises(FiltrationViolation):
        filtration_order(fixed_point_records(1, 2), lam, [bad])
