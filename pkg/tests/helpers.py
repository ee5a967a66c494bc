"""Pointwise oracles shared by the certification tests.

These compose the closed forms directly, independent of the endpoint-bound
formulas they are used to check: on the interval I the certified quantities
are H(D), Sigma(D), Psi(D), W_lens(D), W_cone(D) and Phi(D) below.
"""

from hypercert import (
    CertifyParams,
    cone_volume,
    eta,
    lens_volume,
    omega,
    phi,
    psi,
    sigma,
    theta,
)


def h_at(params: CertifyParams, d: float) -> float:
    return eta(params.R - d, params.half_eps, d)


def sigma_at(params: CertifyParams, d: float) -> float:
    return sigma(params.R - d, params.half_eps, d)


def psi_at(params: CertifyParams, d: float) -> float:
    r = params.half_eps
    return psi(omega(r, d), theta(r, d))


def wlens_at(params: CertifyParams, d: float) -> float:
    return lens_volume(params.R - d, params.half_eps, d)


def wcone_at(params: CertifyParams, d: float) -> float:
    r = params.half_eps
    return cone_volume(omega(r, d), theta(r, d))


def phi_at(params: CertifyParams, d: float) -> float:
    return phi(params.R - d, params.half_eps, d)
