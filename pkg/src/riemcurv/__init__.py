"""Exact symbolic calculus of Riemannian curvature measures.

Curvature measures are encoded as truncated power series with exact
coefficients in Q[pi, pi^-1, lambda^(1/2), lambda^(-1/2)].  Submodules:

``scalars``      exact coefficients and combinatorial constants
``series``       weighted truncated power series
``riemannian``   C_{kp}, Lipschitz-Killing elements, the R[t] action
``immersion``    relative measures and the isometric-immersion transform
``sphere``       tau / phi / t bases on round spheres, tube-volume oracle
``hermitian``    Delta / Delta~ bases on complex space forms, t_lambda action
"""
from .scalars import LAMBDA, PI, DomainError, ExactScalar, double_factorial, factorial, gen_binomial, omega
from .series import Alphabet, GradedSeries, binomial_power, substitute
from .riemannian import RElement, basis_element, lk_bar, lk_normalized, t_act, t_power_act
from .immersion import (
    RelElement,
    c_to_gamma,
    gamma_to_c,
    immersion_pullback,
    lk_invariance_check,
    sphere_in_sphere_specialize,
    totally_geodesic_specialize,
)
from .sphere import (
    SphereElement,
    globalize_on_sphere,
    phi_in_tau,
    poly_in_t_to_tau,
    sphere_intrinsic_volumes,
    t_act_tau,
    t_power_eval_crosscheck,
    t_power_in_tau,
    tau_eval,
)
from .hermitian import (
    HermitianElement,
    C_from_tilde,
    O_transform,
    P_transform,
    delta_to_tilde,
    genfun_g,
    genfun_h,
    lk_in_tilde_delta,
    t_lambda_act_closed,
    t_lambda_act_via_C,
    tilde_from_C,
    tilde_to_delta,
)

__version__ = "0.1.0"
