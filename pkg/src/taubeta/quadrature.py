"""Deterministic quadrature for the two integral shapes used everywhere here.

Two engines, both double-exponential with level-doubling refinement:

* ``integrate_unit`` -- integrals over (0, 1) of t^p (1-t)^q f(t) with
  declared endpoint exponents Re p, Re q > -1 and smooth f (tanh-sinh,
  Takahashi-Mori).  The singular factors are folded into the node weights
  in log space, so arbitrarily strong integrable singularities cost nothing.
* ``integrate_semi_infinite`` -- integrals over (0, inf) of t^p f(t) where
  f decays like e^{-lambda t}: tanh-sinh on (0, 1], exp-sinh on [1, inf).

Exponents may be complex (real part > -1); the imaginary part becomes a
pure phase t^{i Im p} carried by the weights.  The error estimate is the
standard Richardson-style model d1^2/d2 from the last three refinement
levels, clipped to the last level difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .types import (DEFAULT_TOL, DecayViolation, DomainError, EvalResult,
                    NonIntegrable, Status, Tolerances)

__all__ = ["UnitIntervalProblem", "SemiInfiniteProblem",
           "integrate_unit", "integrate_semi_infinite"]

_HALF_PI = 0.5 * math.pi
_LOG_TINY = -745.0          # exp() underflow edge in double precision
_H0 = 0.5                   # level-0 trapezoid step in the DE variable


@dataclass
class UnitIntervalProblem:
    """t^left_exponent (1-t)^right_exponent * integrand(t) on (0, 1)."""

    integrand: Callable[[np.ndarray], np.ndarray]
    left_exponent: complex = 0.0
    right_exponent: complex = 0.0

    def __post_init__(self):
        if complex(self.left_exponent).real <= -1.0:
            raise NonIntegrable(f"left exponent {self.left_exponent} <= -1")
        if complex(self.right_exponent).real <= -1.0:
            raise NonIntegrable(f"right exponent {self.right_exponent} <= -1")


@dataclass
class SemiInfiniteProblem:
    """t^zero_exponent * integrand(t) on (0, inf).

    ``integrand`` must be smooth on (0, inf), bounded near 0, and decay
    at least like e^{-decay_rate * t} up to polynomial growth.
    """

    integrand: Callable[[np.ndarray], np.ndarray]
    zero_exponent: complex = 0.0
    decay_rate: float = 1.0

    def __post_init__(self):
        if complex(self.zero_exponent).real <= -1.0:
            raise NonIntegrable(f"zero exponent {self.zero_exponent} <= -1")
        if not (self.decay_rate > 0.0):
            raise DomainError(f"decay_rate must be positive, got {self.decay_rate}")


def _neg_softplus(u: np.ndarray) -> np.ndarray:
    """-log(1 + e^u), computed without overflow."""
    return -np.logaddexp(0.0, u)


def _levels(tol: Tolerances):
    return (_H0 / (1 << m) for m in range(tol.max_refinements))


def _error_estimate(history) -> float:
    """Geometric-extrapolation estimate from the last levels' values.

    With ratio rho = d1/d2 of successive level differences, the
    remaining error is ~ d1 rho / (1 - rho); stalled convergence
    (rho near 1, the noise floor) is penalized rather than trusted.
    """
    if len(history) < 2:
        return math.inf
    d1 = abs(history[-1] - history[-2])
    if len(history) < 3:
        return d1
    d2 = abs(history[-2] - history[-3])
    if d1 == 0.0:
        return 0.0
    if d2 == 0.0:
        return d1
    rho = d1 / d2
    if rho >= 0.85:
        return 10.0 * d1
    return min(d1, d1 * rho / (1.0 - rho))


def _stalled(history) -> bool:
    """True when the last three level differences stopped shrinking."""
    if len(history) < 5:
        return False
    d1 = abs(history[-1] - history[-2])
    d2 = abs(history[-2] - history[-3])
    d3 = abs(history[-3] - history[-4])
    return d3 > 0.0 and d1 > 0.5 * d2 and d2 > 0.5 * d3


def _finish(value, err, work, tol, warn=False) -> EvalResult:
    ok = err <= tol.target(abs(value))
    status = Status.CONVERGED if ok else Status.TOLERANCE_NOT_MET
    if ok and warn:
        status = Status.CONDITION_WARNING
    return EvalResult(complex(value), float(err), int(work), status)


def _unit_level_sum(problem: UnitIntervalProblem, h: float):
    """One trapezoid level of the tanh-sinh rule; returns (sum, nevals)."""
    p = complex(problem.left_exponent)
    q = complex(problem.right_exponent)
    # node weight magnitude ~ exp((1+Re p) L(s) + (1+Re q) L(-s)), L <= 0:
    # truncate where even the weaker endpoint factor has underflowed
    shrink = min(1.0 + p.real, 1.0 + q.real, 1.0)
    s_max = math.asinh((-_LOG_TINY + 15.0) / (math.pi * shrink)) + 1.0
    k_max = int(math.ceil(s_max / h))
    s = h * np.arange(-k_max, k_max + 1, dtype=float)
    u = math.pi * np.sinh(s)
    log_t = _neg_softplus(-u)        # log t(s),    t = 1/(1+e^-u)
    log_1mt = _neg_softplus(u)       # log (1-t(s))
    log_jac = np.log(math.pi * np.cosh(s) * h)
    log_w_re = ((1.0 + p.real) * log_t + (1.0 + q.real) * log_1mt + log_jac)
    # second clause: t itself must stay representable (t = 0.0 would put
    # spurious NaNs into smooth parts that divide by t-dependent factors)
    keep = (log_w_re > _LOG_TINY) & (log_t > -744.0)
    if not np.any(keep):
        return 0.0 + 0.0j, 0
    log_t = log_t[keep]
    log_1mt = log_1mt[keep]
    log_w_re = log_w_re[keep]
    if p.imag == 0.0 and q.imag == 0.0:
        w = np.exp(log_w_re)
    else:
        w = np.exp(log_w_re + 1j * (p.imag * log_t + q.imag * log_1mt))
    t = np.exp(log_t)
    f = np.asarray(problem.integrand(t), dtype=complex)
    vals = w * f
    return complex(np.sum(vals)), t.size


def integrate_unit(problem: UnitIntervalProblem,
                   tol: Tolerances = DEFAULT_TOL) -> EvalResult:
    """Integrate t^p (1-t)^q f(t) over (0, 1) to the requested tolerance."""
    history = []
    work = 0
    err = math.inf
    for h in _levels(tol):
        val, n = _unit_level_sum(problem, h)
        work += n
        history.append(val)
        err = _error_estimate(history)
        if err <= tol.target(abs(val)) and len(history) >= 3:
            break
        if _stalled(history):
            break
    value = history[-1]
    err = max(err, 4e-16 * abs(value))
    return _finish(value, err, work, tol)


def _tail_level_sum(problem: SemiInfiniteProblem, h: float):
    """One exp-sinh level for the [1, inf) piece; returns (sum, n, peak)."""
    p = complex(problem.zero_exponent)
    lam = problem.decay_rate
    u_hi = math.log(1500.0 / lam)            # e^{-lam(t-1)} dead past here
    s_hi = math.asinh(max(u_hi, 1.0) / _HALF_PI) + 1.0
    s_lo = -(math.asinh(-_LOG_TINY / _HALF_PI) + 1.0)
    k_lo = int(math.floor(s_lo / h))
    k_hi = int(math.ceil(s_hi / h))
    s = h * np.arange(k_lo, k_hi + 1, dtype=float)
    u = _HALF_PI * np.sinh(s)
    keep = (u > _LOG_TINY) & (u < u_hi)
    if not np.any(keep):
        return 0.0 + 0.0j, 0, 0.0
    s = s[keep]
    u = u[keep]
    eu = np.exp(u)
    t = 1.0 + eu
    # dt/ds = (pi/2) cosh(s) e^u
    w = h * _HALF_PI * np.cosh(s) * eu
    tp = np.exp(p * np.log(t)) if p != 0.0 else 1.0
    f = np.asarray(problem.integrand(t), dtype=complex)
    vals = w * tp * f
    # decay audit: deflated by the declared envelope (and a generous
    # polynomial allowance), |f| must not keep growing at large t
    with np.errstate(over="ignore"):
        ratio = np.abs(f) * np.exp(np.minimum(lam * (t - 1.0), 700.0)) \
            / (1.0 + t) ** 12
    far = ratio[(t > 5.0) & (ratio > 0.0)]
    if far.size >= 4:
        last, first, mid = far[-1], far[0], far[far.size // 2]
        if last > 1e8 * first and last > 1e8 * mid:
            raise DecayViolation(
                f"integrand exceeds declared e^(-{lam} t) envelope by "
                f"{last / max(first, 1e-300):.2e} beyond t = 5")
    return complex(np.sum(vals)), t.size, 0.0


def integrate_semi_infinite(problem: SemiInfiniteProblem,
                            tol: Tolerances = DEFAULT_TOL) -> EvalResult:
    """Integrate t^p f(t) over (0, inf) to the requested tolerance.

    Splits at t = 1: tanh-sinh handles the algebraic singularity on
    (0, 1], exp-sinh the exponential tail on [1, inf).
    """
    half = tol.tightened(0.5)
    head_problem = UnitIntervalProblem(problem.integrand,
                                       problem.zero_exponent, 0.0)
    head = integrate_unit(head_problem, half)

    history = []
    work = head.work
    err = math.inf
    for h in _levels(tol):
        val, n, _ = _tail_level_sum(problem, h)
        work += n
        history.append(val)
        err = _error_estimate(history)
        if err <= half.target(abs(val)) and len(history) >= 3:
            break
        if _stalled(history):
            break
    tail_val = history[-1]
    err = max(err, 4e-16 * abs(tail_val))

    value = head.value + tail_val
    total_err = head.abs_error_est + err
    return _finish(value, total_err, work, tol)
