"""Acceptance criteria at full desk scale; one pass/fail line per criterion."""

import pytest

from adhmlab import verify
from adhmlab.parallel import default_workers

RESULTS: dict[int, str] = {}
SCOPE = verify.Scope(r_max=3, n_max=6, seed=0, workers=default_workers(), flow_samples=100)


@pytest.fixture(scope="module")
def tables():
    return verify._tables(SCOPE)


@pytest.fixture(scope="module")
def runs():
    return verify.flow_runs(SCOPE)


def record(res: verify.CriterionResult):
    RESULTS[res.number] = res.line()
    print(res.line())
    for d in res.details:
        print("    " + d)
    assert res.passed, "\n".join(res.details)


def test_criterion_01_adhm_soundness():
    record(verify.criterion_1(SCOPE))


def test_criterion_02_fixed_point_counts():
    record(verify.criterion_2(SCOPE))


def test_criterion_03_tangent_dimension():
    record(verify.criterion_3(SCOPE))


def test_criterion_04_regularity_and_lambda_independence():
    record(verify.criterion_4(SCOPE))


def test_criterion_05_betti_equality(tables):
    record(verify.criterion_5(SCOPE, tables))


def test_criterion_06_unique_top_cells(tables):
    record(verify.criterion_6(SCOPE, tables))


def test_criterion_07_rank_one_poincare():
    record(verify.criterion_7(SCOPE))


def test_criterion_08_flow_soundness(runs):
    record(verify.criterion_8(SCOPE, runs))


def test_criterion_09_filtration_certificate(runs):
    record(verify.criterion_9(SCOPE, runs))


def test_criterion_10_toric_euler_characteristics():
    record(verify.criterion_10(SCOPE))
