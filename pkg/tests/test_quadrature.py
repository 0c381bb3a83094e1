"""Quadrature engines on a benchmark of integrals with known values."""

import math

import numpy as np
import pytest

from taubeta.quadrature import (SemiInfiniteProblem, UnitIntervalProblem,
                                integrate_semi_infinite, integrate_unit)
from taubeta.types import (DecayViolation, NonIntegrable, Status, Tolerances)

from conftest import rel_err

SQRT_PI = 1.7724538509055159


def _ones(t):
    return np.ones_like(np.asarray(t, dtype=float))


# (builder, exact value) -- the 12-integral benchmark (closed forms)
BENCHMARK = [
    ("unit t^-1/2", lambda: (UnitIntervalProblem(_ones, -0.5, 0.0),
                             integrate_unit), 2.0),
    ("unit B(2,3)", lambda: (UnitIntervalProblem(_ones, 1.0, 2.0),
                             integrate_unit), 1.0 / 12.0),
    ("unit const", lambda: (UnitIntervalProblem(_ones), integrate_unit), 1.0),
    ("unit B(0.7,0.5)",
     lambda: (UnitIntervalProblem(_ones, -0.3, -0.5), integrate_unit),
     math.gamma(0.7) * math.gamma(0.5) / math.gamma(1.2)),
    ("unit exp", lambda: (UnitIntervalProblem(np.exp), integrate_unit),
     math.e - 1.0),
    ("unit cosine",
     lambda: (UnitIntervalProblem(lambda t: np.cos(0.5 * math.pi * t)),
              integrate_unit), 2.0 / math.pi),
    ("semi exp", lambda: (SemiInfiniteProblem(lambda t: np.exp(-t), 0.0, 1.0),
                          integrate_semi_infinite), 1.0),
    ("semi Gamma(5)",
     lambda: (SemiInfiniteProblem(lambda t: np.exp(-t), 4.0, 1.0),
              integrate_semi_infinite), 24.0),
    ("semi Gamma(1/2)",
     lambda: (SemiInfiniteProblem(lambda t: np.exp(-t), -0.5, 1.0),
              integrate_semi_infinite), SQRT_PI),
    ("semi t^2 e^-3t",
     lambda: (SemiInfiniteProblem(lambda t: np.exp(-3.0 * t), 2.0, 3.0),
              integrate_semi_infinite), 2.0 / 27.0),
    ("semi gaussian",
     lambda: (SemiInfiniteProblem(lambda t: np.exp(-t * t), 0.0, 1.0),
              integrate_semi_infinite), 0.5 * SQRT_PI),
    ("semi t^-1/2 e^-2t",
     lambda: (SemiInfiniteProblem(lambda t: np.exp(-2.0 * t), -0.5, 1.0),
              integrate_semi_infinite), math.sqrt(0.5 * math.pi)),
]


def _run(entry, tol):
    problem, engine = entry[1]()
    return engine(problem, tol)


class TestKnownValues:
    @pytest.mark.parametrize("entry", BENCHMARK, ids=[b[0] for b in BENCHMARK])
    def test_benchmark_values(self, entry, tight):
        res = _run(entry, tight)
        assert res.status is Status.CONVERGED
        assert rel_err(res.value.real, entry[2]) < 1e-12
        assert abs(res.value.imag) < 1e-13

    def test_exactness_on_polynomials(self, tight):
        # smooth polynomial parts integrate to machine precision
        cases = [
            (lambda t: 3.0 * t ** 3 - 2.0 * t + 1.0, 3.0 / 4.0 - 1.0 + 1.0),
            (lambda t: t ** 6, 1.0 / 7.0),
            (lambda t: (1.0 - t) ** 4, 1.0 / 5.0),
        ]
        for f, exact in cases:
            res = integrate_unit(UnitIntervalProblem(f), tight)
            assert rel_err(res.value.real, exact) < 1e-14

    def test_polynomial_with_singular_weight(self, tight):
        # t^(-1/2) * t^2 -> 2/5
        res = integrate_unit(
            UnitIntervalProblem(lambda t: t * t, -0.5, 0.0), tight)
        assert rel_err(res.value.real, 0.4) < 1e-14

    def test_complex_exponent(self, tight):
        p = complex(-0.5, 2.0)
        res = integrate_unit(UnitIntervalProblem(_ones, p, 0.0), tight)
        exact = 1.0 / (p + 1.0)
        assert abs(res.value - exact) < 1e-12


class TestErrorEstimates:
    def test_honesty_at_least_95_percent(self, standard):
        honest = 0
        for entry in BENCHMARK:
            res = _run(entry, standard)
            true_err = abs(res.value.real - entry[2])
            if true_err <= 10.0 * res.abs_error_est:
                honest += 1
        assert honest / len(BENCHMARK) >= 0.95

    def test_consistency_under_tightening(self):
        # halving tolerances never increases the true error
        ladder = [1e-4, 1e-6, 1e-8, 1e-10, 1e-12]
        for entry in BENCHMARK:
            errs = []
            for t in ladder:
                res = _run(entry, Tolerances(abs_tol=t, rel_tol=t))
                errs.append(abs(res.value.real - entry[2]))
            for loose, tighter in zip(errs, errs[1:]):
                assert tighter <= loose + 1e-15 * max(1.0, abs(entry[2]))

    def test_converged_means_within_tolerance(self, standard):
        for entry in BENCHMARK:
            res = _run(entry, standard)
            if res.status is Status.CONVERGED:
                assert res.abs_error_est <= standard.target(abs(res.value))


class TestLinearity:
    def test_linear_combination(self, tight):
        lam = 2.75
        f = lambda t: np.exp(-t)
        g = lambda t: np.exp(-2.0 * t) * t
        combined = integrate_semi_infinite(SemiInfiniteProblem(
            lambda t: f(t) + lam * g(t), 0.0, 1.0), tight)
        part_f = integrate_semi_infinite(SemiInfiniteProblem(f, 0.0, 1.0),
                                         tight)
        part_g = integrate_semi_infinite(SemiInfiniteProblem(g, 0.0, 1.0),
                                         tight)
        lhs = combined.value
        rhs = part_f.value + lam * part_g.value
        budget = combined.abs_error_est + part_f.abs_error_est \
            + lam * part_g.abs_error_est + 1e-15
        assert abs(lhs - rhs) <= 10.0 * budget


class TestValidation:
    def test_non_integrable_exponents(self):
        with pytest.raises(NonIntegrable):
            UnitIntervalProblem(_ones, -1.0, 0.0)
        with pytest.raises(NonIntegrable):
            UnitIntervalProblem(_ones, 0.0, -1.5)
        with pytest.raises(NonIntegrable):
            SemiInfiniteProblem(_ones, -1.2, 1.0)

    def test_decay_violation(self, standard):
        lying = SemiInfiniteProblem(lambda t: np.exp(-0.2 * t), 0.0, 2.0)
        with pytest.raises(DecayViolation):
            integrate_semi_infinite(lying, standard)

    def test_declared_decay_honored(self, standard):
        # faster decay than declared is fine
        ok = SemiInfiniteProblem(lambda t: np.exp(-3.0 * t), 0.0, 1.0)
        res = integrate_semi_infinite(ok, standard)
        assert rel_err(res.value.real, 1.0 / 3.0) < 1e-10

    def test_work_accounting(self, standard):
        res = integrate_unit(UnitIntervalProblem(_ones), standard)
        assert res.work > 0
