"""The (tau, beta)-generalized confluent hypergeometric function 1Phi1.

Series representation (the default evaluation path):

    1Phi1[a; c; z] = Gamma(c)/Gamma(a) * sum_n Gamma(a + tau n) /
                     Gamma(c + beta n) * z^n / n!

and the Euler-type integral over (0, 1) with Fox-Wright kernel
1Psi1[(c; tau); (c; beta); z t^tau], used as an independent
cross-validation path.  tau - beta < 1 makes the series entire.

For tau = beta = 1 and a - c = m a nonnegative integer the function
collapses to e^z times a degree-m polynomial (Kummer transformation),
which is evaluated exactly; m = 0 is the reducible case 1Phi1 = e^z.
This matters downstream: every t -> 0 cutoff question disappears for
those parameter sets.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

import numpy as np

from .foxwright import FoxWrightParams, WrightSeries, fox_wright_1psi1
from .kernels import log_gamma
from .quadrature import UnitIntervalProblem, integrate_unit
from .types import (DEFAULT_TOL, DomainError, EvalResult, Status, Tolerances,
                    require_finite)

__all__ = ["ConfluentParams", "PhiFunction", "phi", "phi_series",
           "phi_integral", "phi_decay_envelope", "DecayEnvelope"]


@dataclass(frozen=True)
class ConfluentParams:
    """Parameters (a, c, tau, beta) of 1Phi1.

    Requires Re a > 0, Re c > 0, tau > 0, beta > 0 and tau - beta < 1
    (entire series).  The Euler-integral path additionally needs the
    strict Re c > Re a; the series is fine without it, which the
    contiguous-parameter identities rely on.
    """

    a: complex
    c: complex
    tau: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        require_finite("a", self.a)
        require_finite("c", self.c)
        if not (complex(self.a).real > 0.0):
            raise DomainError(f"Re a must be positive, got {self.a}")
        if not (complex(self.c).real > 0.0):
            raise DomainError(f"Re c must be positive, got {self.c}")
        if not (self.tau > 0.0 and self.beta > 0.0):
            raise DomainError("tau and beta must be positive")
        if not (self.tau - self.beta < 1.0):
            raise DomainError(
                f"tau - beta must be < 1, got {self.tau - self.beta}")

    @property
    def reducible(self) -> bool:
        """a = c, tau = beta = 1: 1Phi1(z) = e^z."""
        return self.kummer_poly_degree == 0

    @property
    def kummer_poly_degree(self) -> int | None:
        """m >= 0 when tau = beta = 1 and a - c = m: e^z times poly_m."""
        if self.tau != 1.0 or self.beta != 1.0:
            return None
        d = complex(self.a) - complex(self.c)
        if abs(d.imag) > 1e-13:
            return None
        m = round(d.real)
        if m < 0 or m > 60 or abs(d.real - m) > 5e-13 * max(1.0, abs(d.real)):
            return None
        return m


class PhiFunction:
    """Reusable evaluator for one ConfluentParams set.

    Precomputes the log-gamma prefactor and either the Kummer polynomial
    coefficients (exact path) or a Fox-Wright term ladder (series path);
    ``eval_batch`` then costs one vectorized exp per call, which is what
    makes 1Phi1-inside-quadrature affordable.
    """

    def __init__(self, params: ConfluentParams):
        self.params = params
        self.poly_degree = params.kummer_poly_degree
        self._flip = None
        if self.poly_degree is not None:
            m, c = self.poly_degree, complex(params.c)
            coefs = []
            binom, poch = 1.0, 1.0 + 0.0j
            for j in range(m + 1):
                coefs.append(binom / poch)
                binom = binom * (m - j) / (j + 1)
                poch = poch * (c + j)
            self._poly = np.asarray(coefs, dtype=complex)
            self._series = None
            self._log_pref = 0.0 + 0.0j
        else:
            self._poly = None
            self._series = WrightSeries(FoxWrightParams(
                params.a, params.tau, params.c, params.beta))
            self._log_pref = log_gamma(params.c) - log_gamma(params.a)
            if params.tau == 1.0 and params.beta == 1.0:
                # Kummer transformation 1F1(a;c;z) = e^z 1F1(c-a;c;-z):
                # at Re z < 0 the flipped series is cancellation-free
                b = complex(params.c) - complex(params.a)
                near = round(b.real)
                pole_dist = math.inf if near > 0 else abs(b - near)
                if abs(b.imag) > 1e-6 or pole_dist > 1e-6:
                    self._flip = WrightSeries(FoxWrightParams(
                        b, 1.0, params.c, 1.0))
                    self._log_pref_flip = log_gamma(params.c) - log_gamma(b)

    @property
    def cancellation_free(self) -> bool:
        """True when large negative arguments cost no precision."""
        return self.poly_degree is not None or self._flip is not None

    def eval_batch(self, z, tol: Tolerances = DEFAULT_TOL):
        """(values, noise, max_cancellation_ratio, work) on an array."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if self.poly_degree is not None:
            m = self.poly_degree
            out = np.zeros(z.shape, dtype=complex)
            live = np.isfinite(z) & (z.real > -745.0 - 40.0 * m)
            w = z[live]
            acc = np.full(w.shape, self._poly[m], dtype=complex)
            for j in range(m - 1, -1, -1):
                acc = acc * w + self._poly[j]
            out[live] = np.exp(w) * acc
            return out, 5e-16 * (m + 1) * np.abs(out), 1.0, int(z.size)
        finite = np.isfinite(z)
        neg = finite & (z.real < -1.0) if self._flip is not None \
            else np.zeros(z.shape, dtype=bool)
        rest = finite & ~neg
        values = np.zeros(z.shape, dtype=complex)
        noise = np.zeros(z.shape, dtype=float)
        ratio = 1.0
        work = 0
        if np.any(rest):
            v, nz, ratio, work = self._series.eval_batch(z[rest], tol)
            pref = cmath.exp(self._log_pref)
            values[rest] = v * pref
            noise[rest] = nz * abs(pref)
        if np.any(neg):
            w = z[neg]
            v = np.zeros(w.shape, dtype=complex)
            nz = np.zeros(w.shape, dtype=float)
            live = w.real > -650.0     # e^w * series(-w) stays in range
            if np.any(live):
                sv, snz, _, wk = self._flip.eval_batch(-w[live], tol)
                fac = np.exp(w[live] + self._log_pref_flip)
                v[live] = sv * fac
                nz[live] = snz * np.abs(fac)
                work += wk
            deep = ~live
            if np.any(deep):
                av, anz = self._asymptotic_negative(w[deep])
                v[deep] = av
                nz[deep] = anz
                work += int(np.count_nonzero(deep))
            values[neg] = v
            noise[neg] = nz
        return values, noise, ratio, work

    def _asymptotic_negative(self, w):
        """1F1(a;c;w) for w -> -infinity (tau = beta = 1 parameters):

        Gamma(c)/Gamma(c-a) (-w)^(-a) sum_j (a)_j (1+a-c)_j / (j! (-w)^j),
        truncated at the smallest term.  Machine-accurate for |w| > ~50.
        """
        a, c = complex(self.params.a), complex(self.params.c)
        x = -w
        inv = 1.0 / x
        acc = np.ones(w.shape, dtype=complex)
        term = np.ones(w.shape, dtype=complex)
        prev = np.full(w.shape, np.inf)
        for j in range(1, 60):
            term = term * ((a + j - 1.0) * (a - c + j) / j) * inv
            mag = np.abs(term)
            grow = mag >= prev
            term[grow] = 0.0
            mag[grow] = 0.0
            acc += term
            if np.all(mag < 1e-17):
                break
            prev = mag
        pref = log_gamma(c) - log_gamma(c - a)
        vals = np.exp(pref - a * np.log(x)) * acc
        last = np.abs(term) + 1e-16
        return vals, np.abs(vals) * (last + 5e-16)

    def __call__(self, z, tol: Tolerances = DEFAULT_TOL):
        return self.eval_batch(z, tol)[0]


def phi_series(params: ConfluentParams, z: complex,
               tol: Tolerances = DEFAULT_TOL) -> EvalResult:
    """1Phi1 by the series; the default and widest-domain path."""
    z = complex(z)
    require_finite("z", z)
    fn = PhiFunction(params)
    if fn.poly_degree is not None:
        vals, noise, _, work = fn.eval_batch(np.asarray([z]), tol)
        return EvalResult(complex(vals[0]), float(noise[0]), work,
                          Status.CONVERGED)
    if fn._flip is not None and z.real < -1.0:
        if z.real <= -650.0:
            vals, noise, _, work = fn.eval_batch(np.asarray([z]), tol)
            return EvalResult(complex(vals[0]), float(noise[0]), work,
                              Status.CONVERGED)
        b = complex(params.c) - complex(params.a)
        res = fox_wright_1psi1(FoxWrightParams(b, 1.0, params.c, 1.0),
                               -z, tol)
        return res.scaled(cmath.exp(z + log_gamma(params.c) - log_gamma(b)))
    res = fox_wright_1psi1(FoxWrightParams(
        params.a, params.tau, params.c, params.beta), z, tol)
    return res.scaled(cmath.exp(log_gamma(params.c) - log_gamma(params.a)))


def phi_integral(params: ConfluentParams, z: complex,
                 tol: Tolerances = DEFAULT_TOL) -> EvalResult:
    """1Phi1 by the Euler-type integral over (0, 1); verification path.

    Gamma(c)/(Gamma(a) Gamma(c-a)) Int t^(a-1) (1-t)^(c-a-1)
    1Psi1[(c; tau); (c; beta); z t^tau] dt, requiring Re c > Re a > 0.
    """
    z = complex(z)
    require_finite("z", z)
    a, c = complex(params.a), complex(params.c)
    if not (c.real > a.real):
        raise DomainError("integral path requires Re c > Re a "
                          f"(got a={params.a}, c={params.c})")
    kernel = WrightSeries(FoxWrightParams(c, params.tau, c, params.beta))
    state = {"noise": 0.0, "ratio": 1.0, "work": 0}

    def integrand(t):
        vals, noise, ratio, work = kernel.eval_batch(
            z * np.power(t, params.tau), tol)
        state["noise"] = max(state["noise"], float(np.max(noise)))
        state["ratio"] = max(state["ratio"], ratio)
        state["work"] += work
        return vals

    problem = UnitIntervalProblem(integrand, a - 1.0, c - a - 1.0)
    quad = integrate_unit(problem, tol)
    pref = cmath.exp(log_gamma(c) - log_gamma(a) - log_gamma(c - a))
    value = quad.value * pref
    err = quad.abs_error_est * abs(pref) + 2.0 * state["noise"]
    loss = state["ratio"] > 1e15
    ok = err <= tol.target(abs(value))
    status = Status.TOLERANCE_NOT_MET if not ok else (
        Status.CONDITION_WARNING if loss else Status.CONVERGED)
    return EvalResult(value, err, quad.work, status, precision_loss=loss)


def phi(params: ConfluentParams, z: complex, tol: Tolerances = DEFAULT_TOL,
        path: str = "series") -> EvalResult:
    """Dispatcher: series by default, integral on request."""
    if path == "series":
        return phi_series(params, z, tol)
    if path == "integral":
        return phi_integral(params, z, tol)
    raise DomainError(f"unknown evaluation path {path!r}")


@dataclass(frozen=True)
class DecayEnvelope:
    """How |1Phi1(-r / t^delta)| behaves as t -> 0, for cutoff bookkeeping.

    kind "certified": exact exponential decay (Kummer-polynomial params);
    integrate from t = 0, no neglected mass.  kind "empirical": the series
    is trustworthy only for arguments |w| <= w_ceiling; below the matching
    ``cutoff`` in t the integrand is zeroed and ``mass_bound`` supplies the
    neglected-mass estimate from the sampled bound M and the fitted power
    law |Phi(w)| <~ C |w|^(-s).
    """

    kind: str
    r: float
    delta: float
    w_ceiling: float = math.inf
    cutoff: float = 0.0
    sup_bound: float = 1.0
    fit_scale: float = 1.0
    fit_power: float = 0.0
    noise_ratio: float = 0.0

    def mass_bound(self, p_real: float, kernel_sup: float = 1.0) -> float:
        """Bound on Int_0^cutoff t^p |kernel| |Phi(-r/t^delta)| dt."""
        if self.kind == "certified" or self.cutoff <= 0.0:
            return 0.0
        eps = self.cutoff
        flat = self.sup_bound * eps ** (p_real + 1.0) / (p_real + 1.0)
        q = p_real + 1.0 + self.delta * self.fit_power
        fitted = (self.fit_scale * self.r ** (-self.fit_power)
                  * eps ** q / q)
        return 2.0 * kernel_sup * min(flat, fitted)


@functools.lru_cache(maxsize=256)
def _phi_fn(params: ConfluentParams) -> PhiFunction:
    return PhiFunction(params)


@functools.lru_cache(maxsize=256)
def _ceiling_and_fit(params: ConfluentParams, noise_decade: int):
    """(w_ceiling, sup, fit_scale, fit_power) for one parameter set.

    The argument ceiling and the sampled power-law fit do not depend on
    r, so this is cached across the n-sweeps of the zeta series paths.
    """
    rel_noise = 10.0 ** noise_decade
    fn = _phi_fn(params)
    if fn.cancellation_free:
        # Kummer flip plus large-argument asymptotics: accurate at any
        # argument, so no cutoff; still report the sampled bound and fit.
        w_ceiling = math.inf
        ws = np.geomspace(1.0, 600.0, 24)
    else:
        w_ceiling = 5.0
        for w in np.geomspace(5.0, 80.0, 16):
            vals, noise, _, _ = fn.eval_batch(np.asarray([-w]))
            mag = abs(complex(vals[0]))
            ratio = float(noise[0]) / max(mag, 1e-300)
            if ratio > rel_noise:
                break
            w_ceiling = float(w)
        ws = np.geomspace(max(w_ceiling / 20.0, 1e-2), w_ceiling, 24)
    vals, _, _, _ = fn.eval_batch(-ws)
    mags = np.maximum(np.abs(vals), 1e-300)
    sup = float(np.max(mags))
    # least-squares slope of log|Phi| against log|w| on the sampled tail
    lx, ly = np.log(ws), np.log(mags)
    slope = float(np.polyfit(lx, ly, 1)[0])
    s = max(0.0, -slope)
    scale = float(np.max(mags * ws ** s))
    return w_ceiling, sup, scale, s


def phi_decay_envelope(params: ConfluentParams, r: float, delta: float = 1.0,
                       rel_noise: float = 1e-9) -> DecayEnvelope:
    """Certify or empirically bound 1Phi1(-r / t^delta) as t -> 0.

    ``rel_noise`` is the acceptable relative noise of the series at the
    most negative argument the caller will evaluate; the returned
    ``w_ceiling``/``cutoff`` pair honors it.
    """
    if r < 0.0:
        raise DomainError(f"r must be nonnegative, got {r}")
    if delta <= 0.0:
        raise DomainError(f"delta must be positive, got {delta}")
    if r == 0.0 or params.kummer_poly_degree is not None:
        return DecayEnvelope("certified", r, delta)
    decade = int(math.floor(math.log10(max(rel_noise, 1e-14))))
    w_ceiling, sup, scale, s = _ceiling_and_fit(params, decade)
    cutoff = 0.0 if math.isinf(w_ceiling) else (r / w_ceiling) ** (1.0 / delta)
    return DecayEnvelope("empirical", r, delta, w_ceiling, cutoff,
                         sup, scale, s, 10.0 ** decade)


def phi_at_inverse(fn: PhiFunction, env: DecayEnvelope, t,
                   tol: Tolerances = DEFAULT_TOL):
    """1Phi1(-r / t^delta) on a node array, zeroed below the cutoff.

    The neglected mass is the caller's to account for via
    ``env.mass_bound``; nodes at t = 0 (argument -inf) evaluate to 0.
    """
    t = np.asarray(t, dtype=float)
    if env.r == 0.0:
        return np.ones(t.shape, dtype=complex)
    with np.errstate(divide="ignore", over="ignore"):
        w = -env.r / t ** env.delta
    if env.cutoff > 0.0:
        w = np.where(t < env.cutoff, -np.inf, w)
    return fn.eval_batch(w.astype(complex), tol)[0]
