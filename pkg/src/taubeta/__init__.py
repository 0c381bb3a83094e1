"""Generalized zeta, gamma and Tricomi functions built on the
(tau, beta)-confluent hypergeometric function, with multiple independent
evaluation paths and executable identity verification."""

from .confluent import (ConfluentParams, DecayEnvelope, PhiFunction, phi,
                        phi_decay_envelope, phi_integral, phi_series)
from .foxwright import (ConvergenceClass, FoxWrightParams,
                        classify_convergence, fox_wright_1psi1)
from .gengamma import REDUCIBLE, GenGammaParams, gen_gamma, gen_gamma_bessel
from .genzeta import (ZetaParams, hurwitz_zeta_r, hurwitz_zeta_star,
                      identity_residual, normalizer, zeta_r_bessel,
                      zeta_r_csch, zeta_r_integral, zeta_r_laplace,
                      zeta_r_series, zeta_star)
from .kernels import (NeumaierSum, bessel_k, compensated_sum, gamma_fn,
                      hurwitz_zeta_ref, log_gamma, riemann_zeta_ref)
from .quadrature import (SemiInfiniteProblem, UnitIntervalProblem,
                         integrate_semi_infinite, integrate_unit)
from .tricomi import (GenTricomiParams, TricomiParams, gen_tricomi_deriv,
                      gen_tricomi_u, kummer_ode_residual, relation_residual,
                      tricomi_psi)
from .types import (DEFAULT_TOL, DecayViolation, DomainError, EvalResult,
                    IdentityReport, NonIntegrable, NormalizerZero,
                    OutsideDomain, PoleError, Status, TauBetaError,
                    Tolerances)
from .verify import IDENTITY_IDS, default_tolerance, run_identity

__version__ = "0.1.0"
