"""The Fox-Wright function 1Psi1 and its convergence classification.

1Psi1[(a; tau); (b; beta); z] = sum_k Gamma(a + tau k) / Gamma(b + beta k)
* z^k / k!.  With d = 1 + beta - tau the series is entire for d > 0,
has radius beta^beta / tau^tau for d = 0, and diverges for d < 0.

Terms are computed in log space from log-gamma differences; the scalar
entry point accumulates with compensated summation, the vectorized
evaluator used inside quadrature loops reports a noise estimate
proportional to the summed term magnitudes instead.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .kernels import NeumaierSum, log_gamma
from .types import (DEFAULT_TOL, DomainError, EvalResult, OutsideDomain,
                    PoleError, Status, Tolerances, require_finite)

__all__ = ["FoxWrightParams", "ConvergenceClass", "classify_convergence",
           "fox_wright_1psi1", "WrightSeries"]

_DEAD = -1.0e9          # log-coefficient sentinel: denominator gamma pole
_PRECISION_LOSS_RATIO = 1e15
# exp(E) computed from a float exponent E carries ~eps |E| relative error,
# so per-term noise scales with the exponent magnitude
_EPS_NOISE = 1.2e-16


@dataclass(frozen=True)
class FoxWrightParams:
    """Parameter pair (a; tau) over (b; beta), strides positive."""

    a_top: complex
    tau_top: float
    b_bottom: complex
    beta_bottom: float

    def __post_init__(self):
        require_finite("a_top", self.a_top)
        require_finite("b_bottom", self.b_bottom)
        if not (self.tau_top > 0.0):
            raise DomainError(f"tau must be positive, got {self.tau_top}")
        if not (self.beta_bottom > 0.0):
            raise DomainError(f"beta must be positive, got {self.beta_bottom}")


@dataclass(frozen=True)
class ConvergenceClass:
    """Entire | FiniteRadius(radius) | Divergent."""

    kind: str                  # "entire" | "finite_radius" | "divergent"
    radius: float | None = None

    @property
    def is_entire(self) -> bool:
        return self.kind == "entire"


def classify_convergence(params: FoxWrightParams) -> ConvergenceClass:
    """Eq-2/3 trichotomy for p = q = 1: sign of 1 + beta - tau."""
    tau, beta = params.tau_top, params.beta_bottom
    d = 1.0 + beta - tau
    edge = 1e-13 * (1.0 + tau + beta)
    if d > edge:
        return ConvergenceClass("entire")
    if d < -edge:
        return ConvergenceClass("divergent")
    radius = beta ** beta / tau ** tau
    return ConvergenceClass("finite_radius", radius)


def _near_nonpositive_integer(v: complex) -> bool:
    if abs(v.imag) > 1e-12:
        return False
    n = round(v.real)
    return n <= 0 and abs(v.real - n) < 1e-12 * max(1.0, abs(v.real))


class WrightSeries:
    """Log-space term ladder for one parameter set, reusable across calls.

    ``coeff(k)`` is log Gamma(a + tau k) - log Gamma(b + beta k)
    - log Gamma(k + 1); ``eval_batch`` evaluates the series on an array
    of arguments, which is what the quadrature integrands consume.
    """

    def __init__(self, params: FoxWrightParams):
        self.params = params
        self._logc: list[complex] = []

    def _grow(self, n: int) -> None:
        p = self.params
        while len(self._logc) < n:
            k = len(self._logc)
            top = p.a_top + p.tau_top * k
            bot = p.b_bottom + p.beta_bottom * k
            if _near_nonpositive_integer(top):
                raise PoleError(
                    f"numerator gamma pole at a + tau k = {top} (k={k})")
            if _near_nonpositive_integer(bot):
                self._logc.append(complex(_DEAD, 0.0))
                continue
            c = (log_gamma(top) - log_gamma(bot)
                 - log_gamma(k + 1.0))
            self._logc.append(c)

    def coeff(self, k: int) -> complex:
        self._grow(k + 1)
        return self._logc[k]

    def _term_count(self, zmax: float, max_terms: int) -> int:
        """Terms needed so the tail at |z| = zmax is ~1e-20 of the peak."""
        if zmax <= 0.0:
            return 1
        lz = math.log(zmax)
        peak = -math.inf
        k = 0
        while k < max_terms:
            m = self.coeff(k).real + k * lz
            peak = max(peak, m)
            if k >= 3 and m < peak - 48.0:
                return k + 1
            k += 1
        return max_terms

    def eval_batch(self, z, tol: Tolerances = DEFAULT_TOL):
        """Series values on an argument array.

        Returns ``(values, noise, max_ratio, work)`` where ``noise`` is a
        per-point absolute error estimate (rounding of the summed term
        magnitudes plus the truncated tail) and ``max_ratio`` the largest
        |biggest term| / |value| seen, the cancellation severity index.
        """
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        values = np.zeros(z.shape, dtype=complex)
        noise = np.zeros(z.shape, dtype=float)
        zero = z == 0.0
        if np.any(zero):
            k0 = self.coeff(0)
            v0 = cmath.exp(k0) if k0 != _DEAD else 0.0
            values[zero] = v0
            noise[zero] = 4e-16 * abs(v0)
        live = ~zero
        work = 0
        max_ratio = 1.0
        if np.any(live):
            zl = z[live]
            nterms = self._term_count(float(np.max(np.abs(zl))), tol.max_terms)
            self._grow(nterms)
            coeffs = np.asarray(self._logc[:nterms], dtype=complex)
            ks = np.arange(nterms, dtype=float)
            logz = np.log(zl)
            vals = np.empty(zl.shape, dtype=complex)
            nz = np.empty(zl.shape, dtype=float)
            block = max(1, int(4.0e6 / max(nterms, 1)))
            ratio = 1.0
            for i0 in range(0, zl.size, block):
                sl = slice(i0, min(i0 + block, zl.size))
                expo = coeffs[None, :] + logz[sl, None] * ks[None, :]
                terms = np.exp(expo)
                vals[sl] = terms.sum(axis=1)
                mags = np.abs(terms)
                # per-term rounding ~ eps * (1 + |exponent|) * |term|
                esize = np.abs(expo.real) + np.abs(expo.imag)
                np.clip(esize, None, 1e8, out=esize)
                nz[sl] = (_EPS_NOISE * ((1.0 + esize) * mags).sum(axis=1)
                          + 2.0 * mags[:, -1])
                vmag = np.abs(vals[sl])
                safe = np.maximum(vmag, 1e-300)
                ratio = max(ratio, float(np.max(mags.max(axis=1) / safe)))
            values[live] = vals
            noise[live] = nz
            work = zl.size * nterms
            max_ratio = ratio
        return values, noise, max_ratio, work


def fox_wright_1psi1(params: FoxWrightParams, z: complex,
                     tol: Tolerances = DEFAULT_TOL) -> EvalResult:
    """Evaluate 1Psi1 at a single point with compensated summation.

    Raises OutsideDomain when the argument leaves the convergence region;
    flags ``precision_loss`` when intermediate terms exceeded 1e15 times
    the final value (cancellation has eaten the mantissa).
    """
    z = complex(z)
    require_finite("z", z)
    cls = classify_convergence(params)
    if cls.kind == "divergent":
        raise OutsideDomain("series diverges for all z != 0 "
                            "(1 + beta - tau < 0)")
    if cls.kind == "finite_radius" and abs(z) >= cls.radius:
        raise OutsideDomain(
            f"|z| = {abs(z)} outside radius {cls.radius}")
    series = WrightSeries(params)
    if z == 0.0:
        val = cmath.exp(series.coeff(0))
        return EvalResult(val, 4e-16 * abs(val), 1, Status.CONVERGED)
    if (params.tau_top == 1.0 and params.beta_bottom == 1.0
            and -600.0 < z.real < -1.0):
        # Kummer transformation: 1Psi1[(a,1);(b,1); z] =
        # e^z Gamma(a)/Gamma(b-a) 1Psi1[(b-a,1);(b,1); -z]; the flipped
        # series has no cancellation for Re z < 0
        d = complex(params.b_bottom) - complex(params.a_top)
        n = round(d.real)
        pole_dist = math.inf if n > 0 else abs(d - n)
        if abs(d.imag) > 1e-6 or pole_dist > 1e-6:
            flipped = fox_wright_1psi1(
                FoxWrightParams(d, 1.0, params.b_bottom, 1.0), -z, tol)
            scale = cmath.exp(z + log_gamma(params.a_top) - log_gamma(d))
            return flipped.scaled(scale)
    logz = cmath.log(z)
    re = NeumaierSum()
    im = NeumaierSum()
    absmax = 0.0
    noise = 0.0
    small_run = 0
    k = 0
    while k < tol.max_terms:
        c = series.coeff(k)
        if c.real > _DEAD / 2:
            expo = c + k * logz
            term = cmath.exp(expo)
            esize = abs(expo.real) + abs(expo.imag)
        else:
            term, esize = 0.0, 0.0
        re.add(term.real)
        im.add(term.imag)
        mag = abs(term)
        absmax = max(absmax, mag)
        noise += _EPS_NOISE * (1.0 + esize) * mag
        partial = math.hypot(re.total, im.total)
        if mag <= 0.01 * tol.target(partial) and mag < 1e-3 * absmax:
            small_run += 1
            if small_run >= 3:
                k += 1
                break
        else:
            small_run = 0
        k += 1
    value = complex(re.total, im.total)
    c_next = series.coeff(k) if k < tol.max_terms else complex(_DEAD, 0)
    tail = abs(cmath.exp(c_next + k * logz)) if c_next.real > _DEAD / 2 else 0.0
    err = 4.0 * tail + noise
    loss = (absmax > _PRECISION_LOSS_RATIO * max(abs(value), 1e-300)
            or noise > 0.5 * abs(value))
    if err <= tol.target(abs(value)) and k < tol.max_terms:
        status = Status.CONDITION_WARNING if loss else Status.CONVERGED
    else:
        status = Status.TOLERANCE_NOT_MET
    return EvalResult(value, err, k, status, precision_loss=loss)
