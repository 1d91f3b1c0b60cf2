"""Compatibility of the two interface growth rates and its large-k limits.

For a genuine eigenpair the two interface conditions give the same rate,

    sigma = E_b / (mu F(k,b) + mu_R) = E_a / (mu_L - mu F(k,a)),

at every finite k. Each branch, however, tends to exactly one of the two
factor roots of the ``Q = 0`` quadratic: either ``E_b/sigma -> mu + mu_R``
or ``E_a/sigma -> mu_L + mu``. Requiring both limits at once forces
``T_b / T_a = (mu + mu_R) / (mu_L + mu)``, which generic configurations
violate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .dispersion import cutoff_wavenumber, exp_factor, growth_rates, mobility_terms
from .eigen import EigenPair, NumericalError, interface_ratio, null_vector
from .model import FlowConfig

FAR_FIELD_Q = 1e-12
DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class CompatibilityReport:
    branch: str
    k_sequence: tuple
    Eb_over_sigma: tuple
    Ea_over_sigma: tuple
    F_at_a: tuple
    F_at_b: tuple
    limit_Eb_over_sigma: complex
    limit_Ea_over_sigma: complex
    matched_interface: str
    cross_limit_mismatch: float
    tension_ratio_residual: float
    verdict: str

    @property
    def compatible(self) -> bool:
        return self.verdict == "compatible"


@dataclass(frozen=True)
class Feasibility:
    """Outcome of :func:`feasible_mu`; ``mu`` is ``None`` for equal tensions."""

    feasible: bool
    mu: float | None
    reason: str


def r9_identity_residuals(cfg: FlowConfig, pair: EigenPair) -> tuple[complex, complex]:
    """Sigma-multiplied rate identities at both interfaces.

    ``res_b = sigma (mu F(k,b) + mu_R) - E_b`` and
    ``res_a = sigma (mu_L - mu F(k,a)) - E_a``. Both vanish to rounding for
    a genuine eigenpair.
    """
    E_a, E_b = mobility_terms(cfg, pair.k)
    F_a = interface_ratio(pair, cfg, "a")
    F_b = interface_ratio(pair, cfg, "b")
    s = pair.sigma
    return s * (cfg.mu * F_b + cfg.mu_R) - E_b, s * (cfg.mu_L - cfg.mu * F_a) - E_a


def r9_identity_scales(cfg: FlowConfig, pair: EigenPair) -> tuple[float, float]:
    E_a, E_b = mobility_terms(cfg, pair.k)
    F_a = interface_ratio(pair, cfg, "a")
    F_b = interface_ratio(pair, cfg, "b")
    s = abs(pair.sigma)
    return (s * (cfg.mu * abs(F_b) + cfg.mu_R) + abs(E_b),
            s * (cfg.mu_L + cfg.mu * abs(F_a)) + abs(E_a))


def tension_ratio_residual(cfg: FlowConfig) -> float:
    """``T_b / T_a - (mu + mu_R) / (mu_L + mu)``; zero iff the limits agree."""
    return cfg.T_b / cfg.T_a - (cfg.mu + cfg.mu_R) / (cfg.mu_L + cfg.mu)


def cross_limit_mismatch(cfg: FlowConfig, matched: str) -> float:
    """Large-k miss of the quotient at the interface the branch does not match.

    If ``E_b/sigma -> mu + mu_R`` then ``E_a/sigma -> (mu + mu_R) T_a / T_b``
    (the driving terms are dominated by tension), to be compared with
    ``mu_L + mu``; symmetrically for the other interface.
    """
    m = cfg.mu_L + cfg.mu
    n = cfg.mu_R + cfg.mu
    if matched == "b":
        return abs(n * cfg.T_a / cfg.T_b - m)
    if matched == "a":
        return abs(m * cfg.T_b / cfg.T_a - n)
    raise ValueError(f"matched interface must be 'a' or 'b', got {matched!r}")


def is_compatible(cfg: FlowConfig, matched: str = "b", tol: float = DEFAULT_TOL) -> bool:
    return cross_limit_mismatch(cfg, matched) <= tol * (cfg.mu_L + cfg.mu_R)


def default_k_sequence(cfg: FlowConfig) -> tuple[float, float, float]:
    """Three wavenumbers, the last far enough that ``Q < 1e-14``."""
    k_far = max(14.0 * math.log(10.0) / (2.0 * cfg.layer_length), 4.0 * cutoff_wavenumber(cfg))
    return (k_far / 3.0, 2.0 * k_far / 3.0, k_far)


def branch_limit_report(cfg: FlowConfig, branch: str, k_sequence=None,
                        tol: float = DEFAULT_TOL) -> CompatibilityReport:
    """Tabulate both rate quotients along ``k_sequence`` for one branch.

    The last wavenumber must satisfy ``Q < 1e-12``; the neglected
    correction is ``O(Q)`` so that point stands in for the limit.

    Raises
    ------
    ValueError
        If the sequence is empty, not ascending, or too short
        ("sequence too short") to reach the far field.
    NumericalError
        If a rate vanishes or an interface ratio is indeterminate.
    """
    if branch not in ("plus", "minus"):
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    ks = tuple(float(k) for k in (k_sequence if k_sequence is not None
                                  else default_k_sequence(cfg)))
    if not ks:
        raise ValueError("empty wavenumber sequence")
    if ks[0] <= 0 or any(k2 <= k1 for k1, k2 in zip(ks, ks[1:])):
        raise ValueError(f"wavenumbers must be positive and strictly ascending: {ks}")
    if exp_factor(cfg, ks[-1]) >= FAR_FIELD_Q:
        raise ValueError(
            f"sequence too short: Q = exp(2k(a-b)) = {exp_factor(cfg, ks[-1]):.3g} "
            f">= {FAR_FIELD_Q:g} at k = {ks[-1]!r}"
        )

    eb_s, ea_s, fa_s, fb_s = [], [], [], []
    for k in ks:
        sigma = growth_rates(cfg, k).root(branch)
        if sigma == 0:
            raise NumericalError(f"growth rate vanishes at k={k!r}; quotient undefined")
        pair = null_vector(cfg, k, sigma, branch)
        E_a, E_b = mobility_terms(cfg, k)
        eb_s.append(E_b / sigma)
        ea_s.append(E_a / sigma)
        fa_s.append(interface_ratio(pair, cfg, "a"))
        fb_s.append(interface_ratio(pair, cfg, "b"))

    n = cfg.mu + cfg.mu_R
    m = cfg.mu_L + cfg.mu
    err_b = abs(eb_s[-1] - n) / n
    err_a = abs(ea_s[-1] - m) / m
    matched = "b" if err_b <= err_a else "a"
    mismatch = cross_limit_mismatch(cfg, matched)
    verdict = "compatible" if mismatch <= tol * (cfg.mu_L + cfg.mu_R) else "incompatible"
    return CompatibilityReport(
        branch=branch,
        k_sequence=ks,
        Eb_over_sigma=tuple(eb_s),
        Ea_over_sigma=tuple(ea_s),
        F_at_a=tuple(fa_s),
        F_at_b=tuple(fb_s),
        limit_Eb_over_sigma=eb_s[-1],
        limit_Ea_over_sigma=ea_s[-1],
        matched_interface=matched,
        cross_limit_mismatch=mismatch,
        tension_ratio_residual=tension_ratio_residual(cfg),
        verdict=verdict,
    )


def feasible_mu(mu_L: float, mu_R: float, T_a: float, T_b: float) -> Feasibility:
    """Middle viscosity forced by the tension-ratio restriction.

    Solving ``T_b/T_a = (mu_R + mu)/(mu_L + mu)`` gives
    ``mu = (mu_R T_a - mu_L T_b) / (T_b - T_a)``, acceptable only when
    strictly between ``mu_L`` and ``mu_R``.
    """
    for name, value in (("mu_L", mu_L), ("mu_R", mu_R), ("T_a", T_a), ("T_b", T_b)):
        if not value > 0:
            raise ValueError(f"{name} must be > 0, got {value!r}")
    if not mu_L < mu_R:
        raise ValueError(f"need mu_L < mu_R, got mu_L={mu_L!r}, mu_R={mu_R!r}")
    if T_a == T_b:
        return Feasibility(False, None, "equal tensions")
    mu_hat = (mu_R * T_a - mu_L * T_b) / (T_b - T_a)
    if not mu_hat > mu_L:
        return Feasibility(False, mu_hat, "lower bound")
    if not mu_hat < mu_R:
        return Feasibility(False, mu_hat, "upper bound")
    return Feasibility(True, mu_hat, "feasible")
