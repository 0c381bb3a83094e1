"""Fox-Wright series: values, classification, term consistency."""

import cmath
import math

import mpmath as mp
import pytest

from taubeta.foxwright import (ConvergenceClass, FoxWrightParams,
                               WrightSeries, classify_convergence,
                               fox_wright_1psi1)
from taubeta.types import (DomainError, OutsideDomain, PoleError, Status,
                           Tolerances)

from conftest import rel_err

E = math.e


def _slope_oracle(a, tau, b, beta, k0=150):
    """Empirical ratio-test via Stirling-scale term magnitudes at |z| = 1.

    Between doublings of k the per-term log slope changes by
    -(1 + beta - tau) log 2, which estimates the convergence index.
    """
    def logterm(k):
        return (mp.loggamma(a + tau * k) - mp.loggamma(b + beta * k)
                - mp.loggamma(k + 1.0)).real
    s1 = (logterm(2 * k0) - logterm(k0)) / k0
    s2 = (logterm(4 * k0) - logterm(2 * k0)) / (2 * k0)
    d_hat = -(s2 - s1) / math.log(2.0)
    if d_hat > 0.03:
        return "entire"
    if d_hat < -0.03:
        return "divergent"
    return "finite_radius"


class TestClassification:
    def test_spec_cases(self):
        assert classify_convergence(
            FoxWrightParams(1.0, 1.0, 1.0, 1.0)).kind == "entire"
        cls = classify_convergence(FoxWrightParams(1.0, 2.0, 1.0, 1.0))
        assert cls.kind == "finite_radius"
        assert abs(cls.radius - 0.25) < 1e-15
        assert classify_convergence(
            FoxWrightParams(1.0, 3.0, 1.0, 1.0)).kind == "divergent"

    def test_boundary_radius_formula(self):
        # 1 + beta - tau = 0: radius beta^beta / tau^tau
        cls = classify_convergence(FoxWrightParams(1.0, 2.5, 1.0, 1.5))
        assert cls.kind == "finite_radius"
        assert abs(cls.radius - 1.5 ** 1.5 / 2.5 ** 2.5) < 1e-15

    def test_matches_empirical_ratio_test(self, rng):
        agree = 0
        for _ in range(100):
            tau = rng.uniform(0.2, 3.0)
            if rng.random() < 0.2:
                beta = tau - 1.0   # exact boundary
                if beta <= 0.0:
                    beta = tau + rng.uniform(0.1, 1.0)
            else:
                beta = rng.uniform(0.2, 3.0)
                if abs(1.0 + beta - tau) < 0.08:
                    beta += 0.2
            a, b = rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)
            got = classify_convergence(
                FoxWrightParams(a, tau, b, beta)).kind
            want = _slope_oracle(a, tau, b, beta)
            agree += got == want
        assert agree == 100


class TestValues:
    def test_exponential(self, tight):
        res = fox_wright_1psi1(FoxWrightParams(1.0, 1.0, 1.0, 1.0), 1.0,
                               tight)
        assert rel_err(res.value, E) < 1e-14
        assert res.status is Status.CONVERGED

    def test_e_minus_one(self, tight):
        res = fox_wright_1psi1(FoxWrightParams(1.0, 1.0, 2.0, 1.0), 1.0,
                               tight)
        assert rel_err(res.value, E - 1.0) < 1e-13

    def test_z_zero_is_gamma_ratio(self, tight, rng):
        for _ in range(10):
            a, b = rng.uniform(0.3, 6.0), rng.uniform(0.3, 6.0)
            res = fox_wright_1psi1(
                FoxWrightParams(a, rng.uniform(0.3, 1.2), b,
                                rng.uniform(0.5, 2.0)), 0.0, tight)
            ref = math.gamma(a) / math.gamma(b)
            assert rel_err(res.value, ref) < 1e-13

    def test_kummer_reduction(self, tight, rng):
        # tau = beta = 1: Gamma(b)/Gamma(a) * 1Psi1 = 1F1(a; b; z)
        for _ in range(40):
            a = rng.uniform(0.5, 5.0)
            b = rng.uniform(0.5, 5.0)
            z = rng.uniform(-10.0, 10.0)
            res = fox_wright_1psi1(FoxWrightParams(a, 1.0, b, 1.0), z, tight)
            got = res.value * math.gamma(b) / math.gamma(a)
            ref = complex(mp.hyp1f1(a, b, z))
            assert rel_err(got, ref) < 1e-10

    def test_general_params_against_mpmath_sum(self, tight):
        params = FoxWrightParams(0.8, 0.6, 1.7, 1.1)
        for z in (0.5, -2.0, 3.0 + 1.0j):
            res = fox_wright_1psi1(params, z, tight)
            ref = complex(mp.nsum(
                lambda k: mp.gamma(0.8 + 0.6 * k) / mp.gamma(1.7 + 1.1 * k)
                * mp.mpc(z) ** k / mp.factorial(k), [0, mp.inf]))
            assert rel_err(res.value, ref) < 1e-12


class TestTermLadder:
    def test_recurrence_consistency(self, rng):
        # consecutive computed-term ratios match the direct gamma form
        for _ in range(1000):
            a = rng.uniform(0.4, 4.0)
            tau = rng.uniform(0.3, 1.5)
            b = rng.uniform(0.4, 4.0)
            beta = rng.uniform(max(tau - 0.9, 0.2), tau + 1.5)
            z = complex(rng.uniform(-3.0, 3.0), rng.uniform(-1.0, 1.0))
            if abs(z) < 1e-2:
                z = 1.0
            k = rng.randint(0, 40)
            series = WrightSeries(FoxWrightParams(a, tau, b, beta))
            logz = cmath.log(z)
            t_k = cmath.exp(series.coeff(k) + k * logz)
            t_k1 = cmath.exp(series.coeff(k + 1) + (k + 1) * logz)
            direct = (cmath.exp(mp.loggamma(a + tau * (k + 1))
                                - mp.loggamma(a + tau * k)
                                + mp.loggamma(b + beta * k)
                                - mp.loggamma(b + beta * (k + 1)))
                      * z / (k + 1))
            assert rel_err(t_k1 / t_k, direct) < 1e-12


class TestDomain:
    def test_outside_radius(self):
        params = FoxWrightParams(1.0, 2.0, 1.0, 1.0)   # radius 1/4
        with pytest.raises(OutsideDomain):
            fox_wright_1psi1(params, 0.3, Tolerances())
        res = fox_wright_1psi1(params, 0.2, Tolerances(1e-9, 1e-9))
        ref = complex(mp.nsum(
            lambda k: mp.gamma(1 + 2 * k) / mp.gamma(1 + k)
            * mp.mpf(0.2) ** k / mp.factorial(k), [0, mp.inf]))
        assert rel_err(res.value, ref) < 1e-9

    def test_divergent(self):
        with pytest.raises(OutsideDomain):
            fox_wright_1psi1(FoxWrightParams(1.0, 3.0, 1.0, 1.0), 0.1,
                             Tolerances())

    def test_numerator_pole(self):
        # a + tau k hits the pole at -1 when k = 1
        with pytest.raises(PoleError):
            fox_wright_1psi1(FoxWrightParams(-1.5, 0.5, 1.0, 1.0), 1.0,
                             Tolerances())

    def test_stride_validation(self):
        with pytest.raises(DomainError):
            FoxWrightParams(1.0, 0.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            FoxWrightParams(1.0, 1.0, 1.0, -0.5)

    def test_precision_loss_flagged(self):
        # general strides have no cancellation-free route; at z = -80
        # the biggest terms dwarf the value by far more than 1e15
        res = fox_wright_1psi1(FoxWrightParams(1.0, 0.5, 2.5, 0.7), -80.0,
                               Tolerances(1e-10, 1e-10))
        assert res.precision_loss
        assert res.status in (Status.CONDITION_WARNING,
                              Status.TOLERANCE_NOT_MET)
