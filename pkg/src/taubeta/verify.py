"""Seeded random-draw verification sweeps for every stated identity.

Each identity has a sampler that draws parameters inside its documented
validity region and a runner that evaluates both sides independently.
Identical seeds give identical draws, reports, and output bytes.

Draw regions (kept well inside each identity's convergence territory):

* thm1/thm2/thm3, eq12, eq14, eq22, eq31 -- reducible confluent block,
  sigma in (1.5, 4], r in (0, 2.5]; thm3 mixes q in {1/4, 1/2, 1} with
  uniform draws.
* eq10 -- reducible, real non-integer alpha in (0.3, 0.9) u (1.1, 1.7),
  r in (0.5, 2.5] (the Bessel continuation needs r > 0).
* eq42/eq43 -- mixes r = 0 classical draws with r > 0 draws whose
  confluent slots sit on the exact Kummer ladder (tau = beta = 1,
  alpha - gamma a small nonnegative integer), n alternating 1, 2.
* eq44 -- 70% Kummer-ladder slots, 30% mild general slots
  (tau in (0.75, 1), beta - tau in (0.05, 0.4), small r); always
  Re(a - delta) > 0.3.
* eq45 -- slots drawn so the substituted strides tau1 - alpha > 0,
  beta1 - gamma > 0 stay valid confluent parameters.
"""

from __future__ import annotations

import random
from typing import Callable

from .confluent import ConfluentParams
from .genzeta import IDENTITY_TOLERANCES, ZetaParams, identity_residual
from .tricomi import (RELATION_TOLERANCES, GenTricomiParams, TricomiParams,
                      relation_residual)
from .types import DEFAULT_TOL, DomainError, IdentityReport, Tolerances

__all__ = ["IDENTITY_IDS", "run_identity", "default_tolerance"]

_REDUCIBLE = ConfluentParams(1.0, 1.0, 1.0, 1.0)


def default_tolerance(identity: str) -> float:
    identity = identity.lower()
    if identity in IDENTITY_TOLERANCES:
        return IDENTITY_TOLERANCES[identity]
    if identity in RELATION_TOLERANCES:
        return RELATION_TOLERANCES[identity]
    raise DomainError(f"unknown identity {identity!r}")


def _zeta_case(rng: random.Random, *, sigma=(1.6, 4.0), r=(0.2, 2.5),
               q: str | None = None) -> ZetaParams:
    alpha = rng.uniform(*sigma)
    rr = rng.uniform(*r)
    if q == "mixed":
        qq = rng.choice([0.25, 0.5, 1.0, round(rng.uniform(0.15, 1.0), 3)])
    elif q == "uniform":
        qq = round(rng.uniform(0.2, 1.0), 3)
    else:
        qq = 1.0
    return ZetaParams(round(alpha, 6), round(rr, 6), qq, _REDUCIBLE)


def _eq10_case(rng: random.Random) -> ZetaParams:
    alpha = rng.uniform(0.3, 0.9) if rng.random() < 0.5 \
        else rng.uniform(1.1, 1.7)
    return ZetaParams(round(alpha, 6), round(rng.uniform(0.5, 2.5), 6),
                      1.0, _REDUCIBLE)


def _ladder_slots(rng: random.Random) -> ConfluentParams:
    gamma = round(rng.uniform(0.7, 1.8), 6)
    m = rng.choice([0, 0, 1])
    return ConfluentParams(gamma + m, gamma, 1.0, 1.0)


def _deriv_case(rng: random.Random, trial: int):
    a = round(rng.uniform(0.6, 2.4), 6)
    c = round(a + rng.uniform(-0.5, 1.5), 6)
    x = round(rng.uniform(0.6, 3.0), 6)
    slots = _ladder_slots(rng)
    r = 0.0 if rng.random() < 0.4 else round(rng.uniform(0.2, 1.5), 6)
    delta = round(rng.uniform(0.4, 1.2), 6)
    n = trial % 2 + 1
    return GenTricomiParams(TricomiParams(a, c, x), slots, delta, r), n


def _eq44_case(rng: random.Random, trial: int):
    a = round(rng.uniform(1.8, 2.8), 6)
    delta = round(rng.uniform(0.3, 0.8), 6)
    c = round(a + rng.uniform(-0.4, 1.2), 6)
    x = round(rng.uniform(0.5, 2.5), 6)
    if rng.random() < 0.7:
        slots = _ladder_slots(rng)
        r = round(rng.uniform(0.1, 1.0), 6)
    else:
        tau = round(rng.uniform(0.75, 1.0), 6)
        beta = round(tau + rng.uniform(0.05, 0.3), 6)
        alpha = round(rng.uniform(0.8, 1.4), 6)
        gamma = round(alpha + rng.uniform(0.0, 0.6), 6)
        slots = ConfluentParams(alpha, gamma, tau, beta)
        r = round(rng.uniform(0.05, 0.25), 6)
    return GenTricomiParams(TricomiParams(a, c, x), slots, delta, r), 1


def _eq45_case(rng: random.Random, trial: int):
    a = round(rng.uniform(1.4, 2.6), 6)
    delta = round(rng.uniform(0.3, min(a - 0.4, 1.0)), 6)
    c = round(a + rng.uniform(-0.3, 1.0), 6)
    x = round(rng.uniform(0.5, 2.0), 6)
    alpha = round(rng.uniform(0.5, 1.2), 6)
    gamma = round(rng.uniform(0.5, 1.2), 6)
    tau_eff = round(rng.uniform(0.5, 1.0), 6)
    beta_eff = round(rng.uniform(max(tau_eff - 0.9, 0.1), tau_eff + 0.5), 6)
    slots = ConfluentParams(alpha, gamma, alpha + tau_eff, gamma + beta_eff)
    r = round(rng.uniform(0.05, 0.4), 6)
    return GenTricomiParams(TricomiParams(a, c, x), slots, delta, r), 1


_ZETA_SAMPLERS: dict[str, Callable[[random.Random], ZetaParams]] = {
    "thm1": lambda rng: _zeta_case(rng, sigma=(1.6, 4.0), r=(0.3, 2.5)),
    "thm2": lambda rng: _zeta_case(rng, sigma=(1.6, 4.0), r=(0.2, 2.0)),
    "thm3": lambda rng: _zeta_case(rng, sigma=(1.5, 3.5), r=(0.2, 2.0),
                                   q="mixed"),
    "eq10": _eq10_case,
    "eq12": lambda rng: _zeta_case(rng, sigma=(1.5, 3.5), r=(0.5, 4.0)),
    "eq14": lambda rng: _zeta_case(rng, sigma=(1.6, 5.0), r=(0.2, 2.5)),
    "eq22": lambda rng: _zeta_case(rng, sigma=(1.6, 4.0), r=(0.2, 2.0)),
    "eq31": lambda rng: _zeta_case(rng, sigma=(1.5, 3.0), r=(0.2, 1.5),
                                   q="uniform"),
}

_TRICOMI_SAMPLERS = {
    "eq42": _deriv_case,
    "eq43": _deriv_case,
    "eq44": _eq44_case,
    "eq45": _eq45_case,
}

IDENTITY_IDS = tuple(sorted(_ZETA_SAMPLERS) + sorted(_TRICOMI_SAMPLERS))


def run_identity(identity: str, trials: int, seed: int,
                 tolerance: float | None = None,
                 tol: Tolerances = DEFAULT_TOL) -> list[IdentityReport]:
    """Run one identity's residual check on ``trials`` seeded draws."""
    identity = identity.lower()
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    rng = random.Random(seed)
    reports = []
    if identity in _ZETA_SAMPLERS:
        sampler = _ZETA_SAMPLERS[identity]
        for i in range(trials):
            p = sampler(rng)
            rep = identity_residual(identity, p, tol, tolerance)
            rep.params["trial"] = i
            reports.append(rep)
    elif identity in _TRICOMI_SAMPLERS:
        sampler = _TRICOMI_SAMPLERS[identity]
        for i in range(trials):
            p, n = sampler(rng, i)
            rep = relation_residual(identity, p, tol, n=n,
                                    tolerance=tolerance)
            rep.params["trial"] = i
            reports.append(rep)
    else:
        raise DomainError(f"unknown identity {identity!r}")
    return reports
