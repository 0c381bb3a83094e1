"""Scalar kernels against independent oracles (mpmath, scipy, exact sums)."""

import cmath
import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
import scipy.special as sps
from hypothesis import given, settings
from hypothesis import strategies as st

from taubeta.kernels import (NeumaierSum, bessel_k, compensated_sum,
                             gamma_fn, hurwitz_zeta_ref, log_gamma,
                             riemann_zeta_ref, t_over_expm1)
from taubeta.quadrature import SemiInfiniteProblem, integrate_semi_infinite
from taubeta.types import DomainError, PoleError, Tolerances

from conftest import rel_err

LN_SQRT_PI = 0.5723649429247001      # mpmath log(sqrt(pi))
K_HALF_1 = 0.4610685044478946        # sqrt(pi/2) e^-1, closed form
K_ZERO_1 = 0.4210244382407083        # mpmath besselk(0, 1)
ZETA2 = 1.6449340668482264           # pi^2/6
ZETA4 = 1.0823232337111382           # pi^4/90
HURWITZ_2_HALF = 4.934802200544679   # (2^2-1) zeta(2) = pi^2/2
ZETA3 = 1.2020569031595943


class TestLogGamma:
    def test_at_one(self):
        assert log_gamma(1.0) == 0.0

    def test_half(self):
        assert abs(log_gamma(0.5).real - LN_SQRT_PI) < 1e-14

    def test_recurrence_example(self):
        lhs = log_gamma(3.5) - log_gamma(2.5)
        assert abs(lhs.real - math.log(2.5)) < 1e-14

    def test_poles(self):
        for z in (0.0, -1.0, -5.0):
            with pytest.raises(PoleError):
                log_gamma(z)

    def test_recurrence_grid(self, rng):
        for _ in range(1000):
            z = complex(rng.uniform(1e-3, 20.0), rng.uniform(-10.0, 10.0))
            step = cmath.exp(log_gamma(z + 1.0) - log_gamma(z))
            assert abs(step - z) <= 1e-12 * abs(z)

    def test_reflection_real(self, rng):
        for _ in range(200):
            z = rng.uniform(1e-3, 1.0 - 1e-3)
            val = gamma_fn(z).real * gamma_fn(1.0 - z).real \
                * math.sin(math.pi * z) / math.pi
            assert abs(val - 1.0) < 1e-10

    def test_against_scipy_grid(self, rng):
        for _ in range(300):
            z = complex(rng.uniform(0.05, 60.0), rng.uniform(-8.0, 8.0))
            ref = sps.loggamma(z)
            assert abs(log_gamma(z) - ref) <= 1e-13 * max(1.0, abs(ref))

    def test_negative_half_plane(self, rng):
        for _ in range(100):
            z = complex(rng.uniform(-20.0, 0.4),
                        rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 5.0))
            ref = complex(mp.gamma(mp.mpc(z.real, z.imag)))
            assert rel_err(cmath.exp(log_gamma(z)), ref) < 1e-12


class TestBesselK:
    def test_half_order_closed_form(self):
        assert rel_err(bessel_k(0.5, 1.0), K_HALF_1) < 1e-13

    def test_order_zero(self):
        # oracle: K_0(x) = int_0^inf exp(-x cosh t) dt (frozen via mpmath)
        assert rel_err(bessel_k(0.0, 1.0), K_ZERO_1) < 1e-13

    def test_cosh_integral_oracle(self):
        # K_0(x) = int_0^inf e^(-x cosh t) dt; the tail beyond t = 40
        # is below e^(-2e17), so a finite window is exact here
        val = float(mp.quad(lambda t: mp.exp(-1.7 * mp.cosh(t)), [0, 5, 40]))
        assert rel_err(bessel_k(0.0, 1.7), val) < 1e-12

    def test_symmetry_in_order(self):
        assert bessel_k(-0.7, 2.0) == bessel_k(0.7, 2.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            bessel_k(1.0, 0.0)
        with pytest.raises(DomainError):
            bessel_k(1.0, -2.0)

    @pytest.mark.parametrize("nu", [0.0, 0.3, 0.5, 1.0, 2.0, 3.7, 5.0,
                                    9.2, 14.0, 20.5, 33.0, 50.0])
    def test_scipy_grid(self, nu):
        for x in (1e-3, 0.01, 0.1, 0.5, 1.0, 1.9, 2.0, 2.1, 3.0, 5.0,
                  10.0, 20.0, 35.0, 50.0):
            ref = sps.kv(nu, x)
            assert rel_err(bessel_k(nu, x), ref) < 1e-12

    def test_positive_and_decreasing(self):
        for nu in (0.0, 0.5, 1.3, 4.0, 11.0):
            xs = np.geomspace(0.01, 30.0, 40)
            vals = [bessel_k(nu, x) for x in xs]
            assert all(v > 0.0 for v in vals)
            assert all(a > b for a, b in zip(vals, vals[1:]))


class TestReferenceZeta:
    def test_zeta2(self):
        assert rel_err(riemann_zeta_ref(2.0), ZETA2) < 1e-13

    def test_zeta4(self):
        assert rel_err(riemann_zeta_ref(4.0), ZETA4) < 1e-13

    def test_csch_integral_cross_check(self, tight):
        # zeta(a) = 2^(a-1)/Gamma(a) * Int t^(a-1) e^-t csch(t) dt; the
        # e^-t factor is required (dropping it rescales by 2^a - 1)
        a = 2.0
        res = integrate_semi_infinite(
            SemiInfiniteProblem(lambda t: t_over_expm1(2.0 * t), a - 2.0, 2.0),
            tight)
        val = 2.0 ** (a - 1.0) / math.gamma(a) * res.value.real
        assert abs(val - ZETA2) < 1e-12

    def test_hurwitz_reduces_to_riemann(self):
        assert hurwitz_zeta_ref(2.0, 1.0) == riemann_zeta_ref(2.0)

    def test_hurwitz_half(self):
        assert rel_err(hurwitz_zeta_ref(2.0, 0.5), HURWITZ_2_HALF) < 1e-13
        assert rel_err(hurwitz_zeta_ref(3.0, 0.5), 7.0 * ZETA3) < 1e-13

    def test_agreement_random_alpha(self, rng):
        for _ in range(20):
            alpha = complex(rng.uniform(1.1, 8.0), rng.uniform(-3.0, 3.0))
            a = riemann_zeta_ref(alpha)
            b = hurwitz_zeta_ref(alpha, 1.0)
            assert abs(a - b) <= 1e-12 * abs(a)

    def test_against_mpmath(self, rng):
        for _ in range(40):
            alpha = complex(rng.uniform(1.05, 9.0), rng.uniform(-3.0, 3.0))
            q = rng.uniform(0.05, 1.0)
            ref = complex(mp.zeta(mp.mpc(alpha.real, alpha.imag), q))
            assert rel_err(hurwitz_zeta_ref(alpha, q), ref) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            riemann_zeta_ref(1.0)
        with pytest.raises(DomainError):
            hurwitz_zeta_ref(2.0, 0.0)
        with pytest.raises(DomainError):
            hurwitz_zeta_ref(2.0, 1.5)


class TestCompensatedSum:
    def test_cancellation(self):
        assert compensated_sum([1.0, 1e-16, -1.0]) == 1e-16

    def test_empty(self):
        assert compensated_sum([]) == 0.0

    def test_many_tenths(self):
        # exact rational oracle: 10^6 * 1/10
        exact = Fraction(1, 10) * 10 ** 6
        total = compensated_sum([0.1] * 10 ** 6)
        assert abs(total.real - float(exact)) < 1e-9

    def test_complex(self):
        val = compensated_sum([1 + 1j, 1e-16 - 1e-16j, -1 - 1j])
        assert val == complex(1e-16, -1e-16)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.floats(min_value=-1e12, max_value=1e12,
                              allow_nan=False), max_size=200))
    def test_matches_exact_rational(self, xs):
        exact = sum((Fraction(x) for x in xs), Fraction(0))
        got = compensated_sum(xs).real
        scale = float(sum(Fraction(abs(x)) for x in xs)) or 1.0
        assert abs(got - float(exact)) <= 1e-15 * scale

    def test_streaming_matches_fsum(self, rng):
        xs = [rng.uniform(-1, 1) * 10 ** rng.randint(-10, 10)
              for _ in range(5000)]
        acc = NeumaierSum()
        for x in xs:
            acc.add(x)
        assert abs(acc.total - math.fsum(xs)) <= 1e-13 * sum(map(abs, xs))
