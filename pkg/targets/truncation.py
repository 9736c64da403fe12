"""
truncation.py
-------------
Degree choices for the polynomial approximations.

Each function maps approximation parameters to the smallest degree (or
degree-determining constants) that the corresponding error bound certifies.
"""

import math

from processing.errors import DomainError


MAX_GAP = 1.0 / math.sqrt(12.0)


def require_eps(eps, upper=1.0):
    if not (0.0 < eps < upper):
        raise DomainError(f"eps must lie in (0, {upper:g}), got {eps}")


def require_positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise DomainError(f"{name} must be positive and finite, got {value}")


def truncation_hs(tau: float, eps: float) -> int:
    """
    Truncation order of the Jacobi-Anger expansion of e^{i tau cos theta}.

    ceil(e*tau + ln(1/eps)) for tau >= ln(1/eps)/e, else
    ceil(4 ln(1/eps) / ln(e + ln(1/eps)/tau)).
    """
    require_positive('tau', tau)
    require_eps(eps)
    log_inv = math.log(1.0 / eps)
    if tau >= log_inv / math.e:
        return math.ceil(math.e * tau + log_inv)
    return math.ceil(4.0 * log_inv / math.log(math.e + log_inv / tau))


def n_exp(beta: float, eps: float) -> int:
    """Degree at which the Chebyshev tail of e^{-beta(1-x)} drops below eps."""
    require_positive('beta', beta)
    require_eps(eps)
    inner = math.ceil(max(beta * math.e ** 2, math.log(2.0 / eps)))
    return math.ceil(math.sqrt(2.0 * math.log(4.0 / eps) * inner))


def n_erf(k: float, eps: float) -> int:
    """Odd degree of the erf(kx) approximation with uniform error eps on [-1, 1]."""
    require_positive('k', k)
    require_eps(eps)
    return 2 * n_exp(k * k / 2.0, math.sqrt(math.pi) * eps / (4.0 * k)) + 1


SIGN_EPS_LIMIT = 2.0 * math.sqrt(2.0 / (math.e * math.pi))


def sign_parameters(kappa: float, eps: float):
    """
    Steepness k and odd degree n of the sign approximation.

    Error at most eps outside a window of width kappa around the jump.

    Returns:
        (k, n)
    """
    require_positive('kappa', kappa)
    require_eps(eps, upper=SIGN_EPS_LIMIT)
    k = (math.sqrt(2.0) / kappa) * math.sqrt(math.log(8.0 / (math.pi * eps * eps)))
    n = 2 * n_exp(2.0 * k * k, math.sqrt(math.pi) * eps / (16.0 * k)) + 1
    return k, n


def threshold_degree(delta: float, eps: float) -> int:
    """k = ceil(ln(2/eps) / (sqrt(2) delta)); the threshold polynomial has degree 2k."""
    if not (0.0 < delta <= MAX_GAP):
        raise DomainError(f"delta must lie in (0, {MAX_GAP:.6f}], got {delta}")
    require_eps(eps)
    return math.ceil(math.log(2.0 / eps) / (math.sqrt(2.0) * delta))


def inverse_parameters(kappa: float, eps: float):
    """
    Binomial depth b and truncation index j0 of the 1/x approximation.

    Returns:
        (b, j0) with b = ceil(kappa^2 ln(kappa/eps)),
        j0 = ceil(sqrt(b ln(4b/eps)))
    """
    if not (kappa > 1 and math.isfinite(kappa)):
        raise DomainError(f"kappa must exceed 1, got {kappa}")
    require_eps(eps)
    b = math.ceil(kappa * kappa * math.log(kappa / eps))
    j0 = math.ceil(math.sqrt(b * math.log(4.0 * b / eps)))
    return b, j0
