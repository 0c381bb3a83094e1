"""Classical and generalized Tricomi functions and their relations.

Psi(a, c; x) = (1/Gamma(a)) Int_0^inf t^(a-1) (1+t)^(c-a-1) e^(-x t) dt
solves Kummer's equation x y'' + (c - x) y' - a y = 0.  The generalized
form inserts 1Phi1(alpha; gamma; -r/t^delta) into the integrand; its
x-derivatives have exact integral formulas (extra t^n factors), and the
contiguous relations shift (alpha -> alpha+1) at the cost of one term
with parameters (a-delta, c-delta, alpha+tau, gamma+beta).

Only Re a > 0 and x > 0 are required (the e^(-x t) factor controls
t -> infinity for any c).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .confluent import (ConfluentParams, _phi_fn, phi_at_inverse,
                        phi_decay_envelope)
from .gengamma import REDUCIBLE
from .kernels import log_gamma
from .quadrature import SemiInfiniteProblem, integrate_semi_infinite
from .types import (DEFAULT_TOL, DomainError, EvalResult, IdentityReport,
                    Status, Tolerances, require_finite)

__all__ = ["TricomiParams", "GenTricomiParams", "tricomi_psi",
           "kummer_ode_residual", "gen_tricomi_u", "gen_tricomi_deriv",
           "relation_residual", "RELATION_TOLERANCES"]

RELATION_TOLERANCES = {"eq42": 1e-6, "eq43": 1e-6, "eq44": 1e-6,
                       "eq45": 1e-6}

_MAX_DERIV = 4


@dataclass(frozen=True)
class TricomiParams:
    a: complex
    c: complex
    x: float

    def __post_init__(self):
        require_finite("a", self.a)
        require_finite("c", self.c)
        if not (complex(self.a).real > 0.0):
            raise DomainError(f"Re a must be positive, got {self.a}")
        if not (self.x > 0.0):
            raise DomainError(f"x must be positive, got {self.x}")


@dataclass(frozen=True)
class GenTricomiParams:
    base: TricomiParams
    cp: ConfluentParams = field(default=REDUCIBLE)
    delta: float = 1.0
    r: float = 0.0

    def __post_init__(self):
        if not (self.delta > 0.0):
            raise DomainError(f"delta must be positive, got {self.delta}")
        if self.r < 0.0:
            raise DomainError(f"r must be nonnegative, got {self.r}")


def _kernel_integral(a, c, x, cp, delta, r, n, tol) -> EvalResult:
    """Int_0^inf t^(a+n-1) (1+t)^(c-a-1) e^(-x t) Phi(-r/t^delta) dt."""
    a, c = complex(a), complex(c)
    fn = _phi_fn(cp) if r > 0.0 else None
    env = phi_decay_envelope(cp, r, delta,
                             rel_noise=max(0.1 * tol.rel_tol, 1e-13))
    power = c - a - 1.0

    if r == 0.0:
        def integrand(t):
            t = np.asarray(t, dtype=float)
            return np.exp(power * np.log1p(t) - x * t)
    else:
        def integrand(t):
            t = np.asarray(t, dtype=float)
            base = np.exp(power * np.log1p(t) - x * t)
            return base * phi_at_inverse(fn, env, t, tol)

    problem = SemiInfiniteProblem(integrand, a + n - 1.0, x)
    quad = integrate_semi_infinite(problem, tol)
    err = quad.abs_error_est + env.mass_bound(a.real + n - 1.0, 1.2)
    if env.kind == "empirical":
        err += 3.0 * env.noise_ratio * abs(quad.value)
    ok = err <= tol.target(abs(quad.value))
    status = Status.CONVERGED if ok else Status.TOLERANCE_NOT_MET
    return EvalResult(quad.value, err, quad.work, status)


def tricomi_psi(p: TricomiParams, tol: Tolerances = DEFAULT_TOL) -> EvalResult:
    """The classical Tricomi (second Kummer) function Psi(a, c; x)."""
    res = _kernel_integral(p.a, p.c, p.x, REDUCIBLE, 1.0, 0.0, 0, tol)
    return res.scaled(cmath.exp(-log_gamma(p.a)))


def gen_tricomi_u(p: GenTricomiParams,
                  tol: Tolerances = DEFAULT_TOL) -> EvalResult:
    """Generalized Tricomi function; r = 0 reduces to tricomi_psi."""
    b = p.base
    res = _kernel_integral(b.a, b.c, b.x, p.cp, p.delta, p.r, 0, tol)
    return res.scaled(cmath.exp(-log_gamma(b.a)))


def gen_tricomi_deriv(n: int, p: GenTricomiParams,
                      tol: Tolerances = DEFAULT_TOL) -> EvalResult:
    """n-th x-derivative via the exact integral formula (extra t^n)."""
    if not (1 <= n <= _MAX_DERIV):
        raise DomainError(f"derivative order must be in 1..{_MAX_DERIV}")
    b = p.base
    res = _kernel_integral(b.a, b.c, b.x, p.cp, p.delta, p.r, n, tol)
    return res.scaled((-1.0) ** n * cmath.exp(-log_gamma(b.a)))


def kummer_ode_residual(p: TricomiParams, h: float = 1e-4,
                        tol: Tolerances = DEFAULT_TOL,
                        method: str = "integral") -> float:
    """Normalized residual of x y'' + (c - x) y' - a y at y = Psi(a, c; x).

    ``method="integral"`` uses the exact integral derivatives;
    ``method="fd"`` central differences with step ``h`` (the independent
    oracle route, O(h^2) accurate).  Requires x > 2h > 0.
    """
    if not (p.x > 2.0 * h > 0.0):
        raise DomainError(f"need x > 2h > 0, got x={p.x}, h={h}")
    gp = GenTricomiParams(p)
    y = gen_tricomi_u(gp, tol).value
    if method == "integral":
        y1 = gen_tricomi_deriv(1, gp, tol).value
        y2 = gen_tricomi_deriv(2, gp, tol).value
    elif method == "fd":
        up = tricomi_psi(TricomiParams(p.a, p.c, p.x + h), tol).value
        dn = tricomi_psi(TricomiParams(p.a, p.c, p.x - h), tol).value
        y1 = (up - dn) / (2.0 * h)
        y2 = (up - 2.0 * y + dn) / (h * h)
    else:
        raise DomainError(f"unknown method {method!r}")
    a, c, x = complex(p.a), complex(p.c), p.x
    res = x * y2 + (c - x) * y1 - a * y
    return abs(res) / max(1.0, abs(a * y))


def _gen_u(a, c, x, cp, delta, r, tol) -> complex:
    return gen_tricomi_u(GenTricomiParams(TricomiParams(a, c, x), cp,
                                          delta, r), tol).value


def _contiguous_sides(a, c, x, al, ga, tau, beta, delta, r, tol):
    """LHS/RHS of the alpha -> alpha + 1 contiguous relation."""
    a, c, al, ga = complex(a), complex(c), complex(al), complex(ga)
    if not ((a - delta).real > 0.0):
        raise DomainError(
            f"Re(a - delta) must be positive (a={a}, delta={delta})")
    lhs = _gen_u(a, c, x, ConfluentParams(al + 1.0, ga, tau, beta),
                 delta, r, tol)
    low = _gen_u(a, c, x, ConfluentParams(al, ga, tau, beta), delta, r, tol)
    shifted = _gen_u(a - delta, c - delta, x,
                     ConfluentParams(al + tau, ga + beta, tau, beta),
                     delta, r, tol)
    coef = (r * tau / al) * cmath.exp(
        log_gamma(a - delta) + log_gamma(al + tau) + log_gamma(ga)
        - log_gamma(a) - log_gamma(al) - log_gamma(ga + beta))
    return lhs, low - coef * shifted


def relation_residual(rel: str, p: GenTricomiParams,
                      tol: Tolerances = DEFAULT_TOL, n: int = 1,
                      tolerance: float | None = None) -> IdentityReport:
    """Residual of one functional relation of the generalized Tricomi family.

    eq42: the n-th derivative equals (-1)^n Gamma(a+n)/Gamma(a) times the
    (a+n, c+n) function.  eq43: derivatives of e^(-x) U shift only c.
    eq44: contiguous shift alpha -> alpha+1.  eq45: the same relation
    under the stride substitution tau -> tau - alpha, beta -> beta - gamma
    (p.cp carries (tau1, beta1); validity needs tau1 > alpha,
    beta1 > gamma, and the substituted strides to satisfy
    tau - beta < 1, plus Re(a - delta) > 0).
    """
    rel = rel.lower()
    if rel not in RELATION_TOLERANCES:
        raise DomainError(f"unknown relation {rel!r}")
    tolerance = RELATION_TOLERANCES[rel] if tolerance is None else tolerance
    b = p.base
    a, c, x = complex(b.a), complex(b.c), b.x
    al, ga = complex(p.cp.a), complex(p.cp.c)
    params_out = {"a": a.real, "c": c.real, "x": x, "alpha": al.real,
                  "gamma": ga.real, "tau": p.cp.tau, "beta": p.cp.beta,
                  "delta": p.delta, "r": p.r, "n": n}

    if rel == "eq42":
        lhs = gen_tricomi_deriv(n, p, tol).value
        shifted = GenTricomiParams(TricomiParams(a + n, c + n, x), p.cp,
                                   p.delta, p.r)
        fac = (-1.0) ** n * cmath.exp(log_gamma(a + n) - log_gamma(a))
        rhs = fac * gen_tricomi_u(shifted, tol).value
    elif rel == "eq43":
        derivs = [gen_tricomi_u(p, tol).value]
        for k in range(1, n + 1):
            derivs.append(gen_tricomi_deriv(k, p, tol).value)
        total = 0.0 + 0.0j
        for k in range(n + 1):
            total += (math.comb(n, k) * (-1.0) ** (n - k)) * derivs[k]
        lhs = math.exp(-x) * total
        shifted = GenTricomiParams(TricomiParams(a, c + n, x), p.cp,
                                   p.delta, p.r)
        rhs = (-1.0) ** n * math.exp(-x) * gen_tricomi_u(shifted, tol).value
    elif rel == "eq44":
        lhs, rhs = _contiguous_sides(a, c, x, al, ga, p.cp.tau, p.cp.beta,
                                     p.delta, p.r, tol)
    else:  # eq45
        if al.imag != 0.0 or ga.imag != 0.0:
            raise DomainError("eq45 requires real alpha, gamma slots")
        tau_eff = p.cp.tau - al.real
        beta_eff = p.cp.beta - ga.real
        if tau_eff <= 0.0 or beta_eff <= 0.0:
            raise DomainError(
                "eq45 needs tau1 > alpha and beta1 > gamma "
                f"(tau1={p.cp.tau}, alpha={al.real}, "
                f"beta1={p.cp.beta}, gamma={ga.real})")
        lhs, rhs = _contiguous_sides(a, c, x, al, ga, tau_eff, beta_eff,
                                     p.delta, p.r, tol)
    return IdentityReport.from_sides(rel, params_out, lhs, rhs, tolerance)
