"""Quadratic dispersion relation for the growth rate of a Fourier mode.

Eliminating the middle-layer amplitude between the two interface
conditions leaves a 2x2 homogeneous system whose determinant, multiplied
through by ``sigma**2``, is the quadratic

    alpha * sigma**2 + beta * sigma + gamma = 0

with ``Q = exp(2k(a - b))`` and

    alpha = Q*i*j - m*n
    beta  = (m*E_b + n*E_a) - Q*(i*E_b + j*E_a)
    gamma = (Q - 1) * E_a * E_b

where ``i, j, m, n = mu_L - mu, mu_R - mu, mu_L + mu, mu_R + mu``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .model import FlowConfig


@dataclass(frozen=True)
class SpectralPoint:
    """Dispersion data at one wavenumber.

    ``sigma_plus`` / ``sigma_minus`` are ordered by descending real part,
    ties broken by descending imaginary part.
    """

    k: float
    E_a: float
    E_b: float
    Q: float
    i_: float
    j_: float
    m_: float
    n_: float
    alpha: float
    beta: float
    gamma: float
    discriminant: float
    sigma_plus: complex
    sigma_minus: complex

    @property
    def roots(self) -> tuple[complex, complex]:
        return self.sigma_plus, self.sigma_minus

    def root(self, branch: str) -> complex:
        if branch == "plus":
            return self.sigma_plus
        if branch == "minus":
            return self.sigma_minus
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")

    def residual(self, sigma: complex) -> complex:
        return (self.alpha * sigma + self.beta) * sigma + self.gamma

    def residual_scale(self, sigma: complex) -> float:
        s = abs(sigma)
        return abs(self.alpha) * s * s + abs(self.beta) * s + abs(self.gamma)


def _check_k(k: float) -> None:
    if not k >= 0:
        raise ValueError(f"wavenumber must be >= 0, got {k!r}")


def viscosity_combinations(cfg: FlowConfig) -> tuple[float, float, float, float]:
    """``(mu_L - mu, mu_R - mu, mu_L + mu, mu_R + mu)``."""
    return cfg.mu_L - cfg.mu, cfg.mu_R - cfg.mu, cfg.mu_L + cfg.mu, cfg.mu_R + cfg.mu


def mobility_terms(cfg: FlowConfig, k: float) -> tuple[float, float]:
    """Interface driving terms ``(E_a, E_b)``.

    ``E_a = ((mu - mu_L) U k^2 - T_a k^4) / mu`` and
    ``E_b = ((mu_R - mu) U k^2 - T_b k^4) / mu``: viscous destabilisation
    against the stabilising surface tension.
    """
    _check_k(k)
    k2 = k * k
    k4 = k2 * k2
    E_a = ((cfg.mu - cfg.mu_L) * cfg.U * k2 - cfg.T_a * k4) / cfg.mu
    E_b = ((cfg.mu_R - cfg.mu) * cfg.U * k2 - cfg.T_b * k4) / cfg.mu
    return E_a, E_b


def exp_factor(cfg: FlowConfig, k: float) -> float:
    """``Q = exp(2k(a - b))``; underflows harmlessly to 0 for large k."""
    return math.exp(2.0 * k * (cfg.a - cfg.b))


def quadratic_coefficients(cfg: FlowConfig, k: float) -> tuple[float, float, float]:
    """``(alpha, beta, gamma)`` of the dispersion quadratic at ``k``."""
    E_a, E_b = mobility_terms(cfg, k)
    return _coefficients(cfg, exp_factor(cfg, k), E_a, E_b)


def _coefficients(cfg, Q, E_a, E_b):
    i, j, m, n = viscosity_combinations(cfg)
    alpha = Q * i * j - m * n
    beta = (m * E_b + n * E_a) - Q * (i * E_b + j * E_a)
    gamma = (Q - 1.0) * E_a * E_b
    return alpha, beta, gamma


def _ordered(r1: complex, r2: complex) -> tuple[complex, complex]:
    if (r2.real, r2.imag) > (r1.real, r1.imag):
        return r2, r1
    return r1, r2


def solve_quadratic(alpha: float, beta: float, gamma: float) -> tuple[complex, complex, float]:
    """Roots of ``alpha*s**2 + beta*s + gamma`` with ``alpha != 0``.

    The larger-magnitude real root comes from ``-(beta + sign(beta) sqrt(D))
    / (2 alpha)`` and the other from the product of roots, so nothing
    cancels when ``beta`` and ``sqrt(D)`` are close. Complex pairs are
    returned as exact conjugates.

    Returns
    -------
    (root_hi, root_lo, discriminant)
        Roots ordered by descending real part, then imaginary part.
    """
    disc = beta * beta - 4.0 * alpha * gamma
    if disc < 0:
        re = -beta / (2.0 * alpha)
        im = math.sqrt(-disc) / (2.0 * abs(alpha))
        return complex(re, im), complex(re, -im), disc
    q = -0.5 * (beta + math.copysign(math.sqrt(disc), beta))
    if q == 0.0:
        # beta == 0 and disc == 0, hence gamma == 0
        return 0j, 0j, disc
    r1 = q / alpha
    r2 = gamma / q
    hi, lo = _ordered(complex(r1, 0.0), complex(r2, 0.0))
    return hi, lo, disc


def growth_rates(cfg: FlowConfig, k: float) -> SpectralPoint:
    """Both growth-rate roots and the intermediate terms at wavenumber ``k``."""
    E_a, E_b = mobility_terms(cfg, k)
    Q = exp_factor(cfg, k)
    i, j, m, n = viscosity_combinations(cfg)
    alpha, beta, gamma = _coefficients(cfg, Q, E_a, E_b)
    hi, lo, disc = solve_quadratic(alpha, beta, gamma)
    return SpectralPoint(
        k=k, E_a=E_a, E_b=E_b, Q=Q, i_=i, j_=j, m_=m, n_=n,
        alpha=alpha, beta=beta, gamma=gamma, discriminant=disc,
        sigma_plus=hi, sigma_minus=lo,
    )


def interface_rows(cfg: FlowConfig, k: float, sigma: complex):
    """Sigma-multiplied interface coefficients ``(C, D, G, H)``.

    ``C, D`` multiply ``A e^{ka}`` and ``B e^{-ka}`` in the row at ``x = a``;
    ``G, H`` multiply ``A e^{kb}`` and ``B e^{-kb}`` in the row at ``x = b``.
    """
    E_a, E_b = mobility_terms(cfg, k)
    i, j, m, n = viscosity_combinations(cfg)
    C = sigma * i - E_a
    D = sigma * m - E_a
    G = sigma * n - E_b
    H = sigma * j - E_b
    return C, D, G, H


def determinant_residual(cfg: FlowConfig, k: float, sigma: complex) -> complex:
    """``sigma**2 * (Q c h - g d)`` evaluated from the row products.

    Independent of :func:`quadratic_coefficients`; agrees with the
    expanded quadratic up to rounding. Finite at ``sigma = 0``.
    """
    C, D, G, H = interface_rows(cfg, k, sigma)
    return exp_factor(cfg, k) * C * H - G * D


def determinant_scale(cfg: FlowConfig, k: float, sigma: complex) -> float:
    """Sum of magnitudes of the products in :func:`determinant_residual`."""
    E_a, E_b = mobility_terms(cfg, k)
    i, j, m, n = viscosity_combinations(cfg)
    s = abs(sigma)
    Q = exp_factor(cfg, k)
    return (Q * (abs(i) * s + abs(E_a)) * (abs(j) * s + abs(E_b))
            + (n * s + abs(E_b)) * (m * s + abs(E_a)))


def is_root(cfg: FlowConfig, k: float, sigma: complex, tol: float = 1e-8) -> bool:
    res = abs(determinant_residual(cfg, k, sigma))
    return res <= tol * determinant_scale(cfg, k, sigma)


def asymptotic_growth_rates(cfg: FlowConfig, k: float) -> tuple[float, float]:
    """Large-k rates ``(E_b / (mu + mu_R), E_a / (mu_L + mu))``.

    These are the exact roots of the quadratic with ``Q = 0``, which
    factors as ``-((mu_L + mu) s - E_a) ((mu_R + mu) s - E_b)``.
    """
    if not k > 0:
        raise ValueError(f"wavenumber must be > 0, got {k!r}")
    E_a, E_b = mobility_terms(cfg, k)
    return E_b / (cfg.mu + cfg.mu_R), E_a / (cfg.mu_L + cfg.mu)


def collapsed_layer_rate(cfg: FlowConfig, k: float) -> float:
    """Nonzero root when the middle layer has zero thickness (``Q = 1``)."""
    E_a, E_b = mobility_terms(cfg, k)
    return (E_a + E_b) / (cfg.mu_L + cfg.mu_R)


def resonant_wavenumbers(cfg: FlowConfig) -> tuple[float | None, float | None]:
    """Positive wavenumbers where ``E_a`` resp. ``E_b`` change sign."""
    out = []
    for contrast, tension in ((cfg.mu - cfg.mu_L, cfg.T_a), (cfg.mu_R - cfg.mu, cfg.T_b)):
        drive = contrast * cfg.U
        out.append(math.sqrt(drive / tension) if drive > 0 else None)
    return out[0], out[1]


def cutoff_wavenumber(cfg: FlowConfig) -> float:
    """``sqrt(U max(mu - mu_L, mu_R - mu) / min(T_a, T_b))``.

    Bounds every resonant wavenumber from above; both driving terms are
    negative beyond it.
    """
    contrast = max(cfg.mu - cfg.mu_L, cfg.mu_R - cfg.mu)
    drive = abs(cfg.U) * abs(contrast)
    return math.sqrt(drive / min(cfg.T_a, cfg.T_b))

