"""The acceptance suite: ten criteria, each reported as one pass/fail line."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import oracles
from .adhm_core import FramedTorusElement, check_equation, gauge_act, is_in_central_fiber, is_stable, torus_act
from .fixed_points import adhm_representative, compensating_gauge, enumerate_fixed_points, fixed_point_records
from .flow_limits import flow_sample_check, invariant_continuity, limit_plus
from .parallel import pmap
from .sampling import random_admissible, samples
from .tangent_bb import (
    FiltrationViolation,
    cell_table,
    filtration_order,
    select_regular_cocharacter,
    tangent_basis,
)
from .toric_surface import DivisorClass, blowup, euler_characteristic, p2_fan


@dataclass
class CriterionResult:
    number: int
    name: str
    reference: str
    passed: bool
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.name} ({self.reference})"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "reference": self.reference, "passed": self.passed, "details": self.details}


@dataclass
class Scope:
    r_max: int = 3
    n_max: int = 6
    seed: int = 0
    workers: int = 1
    flow_samples: int = 100

    def pairs(self, r_cap: int, n_cap: int, n_min: int = 0):
        return [(r, n) for r in range(1, min(r_cap, self.r_max) + 1) for n in range(n_min, min(n_cap, self.n_max) + 1)]


def _rng(scope: Scope, tag: int) -> random.Random:
    return random.Random(scope.seed * 1000003 + tag)


def criterion_1(scope: Scope) -> CriterionResult:
    res = CriterionResult(1, "ADHM soundness of fixed-point representatives", "representatives are admissible, torus fixed and in the central fibre", True)
    rng = _rng(scope, 1)
    for r, n in scope.pairs(3, 5):
        for pt in enumerate_fixed_points(r, n):
            x = adhm_representative(pt)
            tau = FramedTorusElement.of(rng.randint(2, 9), -rng.randint(2, 9), [rng.randint(1, 9) * rng.choice([-1, 1]) for _ in range(r)])
            ok = (
                check_equation(x)
                and is_stable(x)
                and is_in_central_fiber(x)
                and gauge_act(compensating_gauge(pt, tau), torus_act(tau, x)) == x
            )
            if not ok:
                res.passed = False
                res.details.append(f"r={r} n={n} {pt} failed")
    return res


def criterion_2(scope: Scope) -> CriterionResult:
    res = CriterionResult(2, "Fixed-point counts", "partition-tuple generating function", True)
    expected_r1 = [1, 1, 2, 3, 5, 7, 11]
    for n in range(min(6, scope.n_max) + 1):
        got = len(enumerate_fixed_points(1, n))
        if got != expected_r1[n]:
            res.passed = False
            res.details.append(f"r=1 n={n}: {got} != {expected_r1[n]}")
    for r in range(1, min(3, scope.r_max) + 1):
        gf = oracles.eta_power(r, 5)
        for n in range(min(5, scope.n_max) + 1):
            got = len(enumerate_fixed_points(r, n))
            if got != gf[n]:
                res.passed = False
                res.details.append(f"r={r} n={n}: {got} != {gf[n]}")
    return res


def _basis_dim(x):
    return len(tangent_basis(x))


def criterion_3(scope: Scope) -> CriterionResult:
    res = CriterionResult(3, "Tangent dimension 2rn", "tangent cohomology has dimension 2rn", True)
    for r, n in scope.pairs(3, 5, 1):
        dims = pmap(_basis_dim, [adhm_representative(pt) for pt in enumerate_fixed_points(r, n)], scope.workers)
        bad = [d for d in dims if d != 2 * r * n]
        if bad:
            res.passed = False
            res.details.append(f"fixed points r={r} n={n}: dims {sorted(set(bad))}")
    rng = _rng(scope, 3)
    for r, n in scope.pairs(2, 3, 1):
        data = [random_admissible(rng, r, n) for _ in range(50)]
        dims = pmap(_basis_dim, data, scope.workers)
        bad = [d for d in dims if d != 2 * r * n]
        if bad:
            res.passed = False
            res.details.append(f"random r={r} n={n}: dims {sorted(set(bad))}")
    return res


def criterion_4(scope: Scope) -> CriterionResult:
    res = CriterionResult(4, "Regular cocharacters and independence of the choice", "regular one-parameter subgroup; cell counts independent of it", True)
    for r, n in scope.pairs(2, 4, 1):
        lam1 = select_regular_cocharacter(r, n)
        lam2 = select_regular_cocharacter(r, n, predicate=lambda c: c.a1 > c.a2, exclude=(lam1,))
        t1, t2 = cell_table(r, n, lam1, scope.workers), cell_table(r, n, lam2, scope.workers)
        zero = any(0 in row.weights for t in (t1, t2) for row in t.rows)
        same = t1.poincare_M() == t2.poincare_M() and t1.poincare_P() == t2.poincare_P()
        res.details.append(f"r={r} n={n}: {lam1} vs {lam2} -> {t1.poincare_M()}")
        if zero or not same:
            res.passed = False
            res.details.append(f"r={r} n={n}: zero={zero} {t1.poincare_M()} {t2.poincare_M()} {t1.poincare_P()} {t2.poincare_P()}")
    return res


def _tables(scope: Scope):
    out = {}
    for r, n in scope.pairs(3, 5):
        lam = select_regular_cocharacter(r, n)
        out[(r, n)] = cell_table(r, n, lam, scope.workers)
    return out


def criterion_5(scope: Scope, tables=None) -> CriterionResult:
    res = CriterionResult(5, "Betti numbers of M(r,n) and the central fibre agree", "plus-cell and minus-cell Betti counts coincide", True)
    tables = tables or _tables(scope)
    for (r, n), t in tables.items():
        pm, pp = t.poincare_M(), t.poincare_P()
        count = len(enumerate_fixed_points(r, n))
        ok = pm == pp and pm[0] == 1 and pp[0] == 1 and sum(pm) == count and sum(pp) == count
        res.details.append(f"r={r} n={n} lam={t.lam}: P={pm}")
        if not ok:
            res.passed = False
            res.details.append(f"r={r} n={n}: P_M={pm} P_P={pp} count={count}")
    return res


def criterion_6(scope: Scope, tables=None) -> CriterionResult:
    res = CriterionResult(6, "Unique top plus cell and unique top minus cell", "one open plus cell; one top-dimensional minus cell", True)
    tables = tables or _tables(scope)
    for (r, n), t in tables.items():
        top_plus = sum(1 for row in t.rows if row.plus_dim == 2 * r * n)
        mmax = max(row.minus_dim for row in t.rows)
        top_minus = sum(1 for row in t.rows if row.minus_dim == mmax)
        res.details.append(f"r={r} n={n}: max minus_dim={mmax} (stated n(r+1)={n * (r + 1)})")
        if top_plus != 1 or top_minus != 1:
            res.passed = False
            res.details.append(f"r={r} n={n}: top plus cells={top_plus}, top minus cells={top_minus}")
        if r == 1 and n >= 1:
            oracle = len(oracles.hilbert_betti_from_lengths(n)) - 1
            if mmax != n - 1 or oracle != n - 1:
                res.passed = False
                res.details.append(f"r=1 n={n}: max minus_dim={mmax}, oracle={oracle}")
    return res


def criterion_7(scope: Scope) -> CriterionResult:
    res = CriterionResult(7, "Rank-one Poincare polynomials match the Hilbert scheme", "Hilbert scheme Betti numbers", True)
    for n in range(1, min(5, scope.n_max) + 1):
        lam = select_regular_cocharacter(1, n)
        t = cell_table(1, n, lam, scope.workers)
        expected = oracles.hilbert_betti_from_lengths(n)
        if t.poincare_M() != expected or t.poincare_P() != expected:
            res.passed = False
            res.details.append(f"n={n}: {t.poincare_M()} / {t.poincare_P()} != {expected}")
        if n <= 3:
            brute = oracles.punctual_betti(n, lam.a1, lam.a2)
            if brute != t.poincare_P():
                res.passed = False
                res.details.append(f"n={n}: punctual brute force {brute} != {t.poincare_P()}")
    return res


FLOW_PAIRS = ((1, 2), (1, 3), (2, 2))


def _flow_job(args):
    x, lam = args
    out = {"pole": False, "continuity": True, "disagree": False, "sample": None, "error": None}
    try:
        plus = limit_plus(x, lam)
        out["continuity"] = invariant_continuity(x, lam, plus)
        out["sample"] = flow_sample_check(x, lam)
    except Exception as e:  # reported, never swallowed into a pass
        out["error"] = f"{type(e).__name__}: {e}"
    return out


def flow_runs(scope: Scope):
    runs = {}
    for k, (r, n) in enumerate(FLOW_PAIRS):
        if r > scope.r_max or n > scope.n_max:
            continue
        lam = select_regular_cocharacter(r, n)
        data = samples(scope.seed * 7919 + k, r, n, scope.flow_samples)
        runs[(r, n)] = (lam, pmap(_flow_job, [(x, lam) for x in data], scope.workers))
    return runs


def criterion_8(scope: Scope, runs=None) -> CriterionResult:
    res = CriterionResult(8, "Flow soundness", "plus limits always exist; minus limits exist exactly on the central fibre", True)
    runs = runs or flow_runs(scope)
    for (r, n), (lam, outs) in runs.items():
        errors = [o["error"] for o in outs if o["error"]]
        discont = sum(1 for o in outs if not o["continuity"])
        central = sum(1 for o in outs if o["sample"] and o["sample"].in_central_fiber)
        res.details.append(f"r={r} n={n} lam={lam}: {len(outs)} samples, {central} in central fibre")
        if errors or discont:
            res.passed = False
            res.details.append(f"r={r} n={n}: {len(errors)} errors, {discont} continuity failures; first: {errors[:1]}")
    return res


def criterion_9(scope: Scope, runs=None) -> CriterionResult:
    res = CriterionResult(9, "Filtration monotonicity certificate", "order value does not decrease from plus to minus limit", True)
    runs = runs or flow_runs(scope)
    for (r, n), (lam, outs) in runs.items():
        smp = [o["sample"] for o in outs if o["sample"] is not None]
        if len(smp) != len(outs):
            res.passed = False
            res.details.append(f"r={r} n={n}: {len(outs) - len(smp)} samples without a flow record")
        try:
            table = filtration_order(fixed_point_records(r, n), lam, smp)
            res.details.append(f"r={r} n={n}: {len(table.certificate)} certified pairs")
        except FiltrationViolation as e:
            res.passed = False
            res.details.append(f"r={r} n={n}: {e}")
    return res


def criterion_10(scope: Scope) -> CriterionResult:
    res = CriterionResult(10, "Toric Euler characteristics", "Euler characteristic counts fixed framed sheaves", True)
    plane = p2_fan()
    for r, n in scope.pairs(2, 4):
        got = euler_characteristic(plane, r, DivisorClass.zero(3), n)
        if got != len(enumerate_fixed_points(r, n)):
            res.passed = False
            res.details.append(f"plane r={r} n={n}: {got}")
    one = blowup(plane, 0)
    gf2 = oracles.eta_power(2, 4)
    for n in range(min(4, scope.n_max) + 1):
        got = euler_characteristic(one, 1, DivisorClass.zero(4), n)
        if got != gf2[n]:
            res.passed = False
            res.details.append(f"one blowup n={n}: {got} != {gf2[n]}")
    two = blowup(one, 0)
    gf3 = oracles.eta_power(3, 3)
    for n in range(min(3, scope.n_max) + 1):
        got = euler_characteristic(two, 1, DivisorClass.zero(5), n)
        if got != gf3[n]:
            res.passed = False
            res.details.append(f"two blowups n={n}: {got} != {gf3[n]}")
    return res


def run_all(scope: Scope) -> list[CriterionResult]:
    tables = _tables(scope)
    runs = flow_runs(scope)
    return [
        criterion_1(scope),
        criterion_2(scope),
        criterion_3(scope),
        criterion_4(scope),
        criterion_5(scope, tables),
        criterion_6(scope, tables),
        criterion_7(scope),
        criterion_8(scope, runs),
        criterion_9(scope, runs),
        criterion_10(scope),
    ]
