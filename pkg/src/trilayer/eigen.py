"""Middle-layer amplitude for a growth-rate root.

Inside the layer the amplitude is ``f(x) = A e^{kx} + B e^{-kx}``. We never
store ``A`` and ``B`` themselves: with ``a_hat = A e^{ka}`` and
``b_hat = B e^{-ka}`` every evaluation on ``[a, b]`` needs only
``exp(+-k(x - a))`` with ``0 <= k(x - a) <= kL'``, and the value at ``b``
is handled in log-scaled form, so large ``k`` and ``|a|`` cannot overflow
an intermediate.

Interface rows are used in sigma-multiplied form throughout, which keeps
them finite at ``sigma = 0``:

    row a:  a_hat * C + b_hat * D = 0
    row b:  a_hat * G + b_hat * Q * H = 0

with ``C, D, G, H`` from :func:`trilayer.dispersion.interface_rows`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .dispersion import (
    exp_factor,
    growth_rates,
    interface_rows,
    is_root,
    mobility_terms,
    viscosity_combinations,
)
from .model import FlowConfig

_EPS = 2.220446049250313e-16
# math.exp overflows just above 709.78
_EXP_MAX = 709.0


class NumericalError(ArithmeticError):
    """A quantity is undefined or cannot be computed for these inputs."""


@dataclass(frozen=True)
class EigenPair:
    """One growth-rate root with its scaled middle-layer coefficients.

    ``max(|a_hat|, |b_hat|) == 1`` and the larger component is real
    positive.
    """

    k: float
    sigma: complex
    branch: str
    a_hat: complex
    b_hat: complex


@dataclass(frozen=True)
class RowResiduals:
    row_a: complex
    row_b: complex
    scale_a: float
    scale_b: float
    degenerate_a: bool = False
    degenerate_b: bool = False

    @property
    def relative_a(self) -> float:
        return abs(self.row_a) / self.scale_a if self.scale_a else 0.0

    @property
    def relative_b(self) -> float:
        return abs(self.row_b) / self.scale_b if self.scale_b else 0.0

    @property
    def relative(self) -> float:
        return max(self.relative_a, self.relative_b)


def scaled_exp(value: complex, exponent: float) -> complex:
    """``value * exp(exponent)`` with overflow going to signed infinities.

    Zero components stay zero, so the result never contains NaN.
    """
    if exponent <= _EXP_MAX:
        return value * math.exp(exponent)
    parts = []
    for part in (value.real, value.imag):
        if part == 0.0:
            parts.append(0.0)
            continue
        log_mag = math.log(abs(part)) + exponent
        mag = math.exp(log_mag) if log_mag <= _EXP_MAX else math.inf
        parts.append(math.copysign(mag, part))
    return complex(parts[0], parts[1])


def _row_scales(cfg: FlowConfig, k: float, sigma: complex, a_hat: complex, b_hat: complex):
    E_a, E_b = mobility_terms(cfg, k)
    i, j, m, n = viscosity_combinations(cfg)
    Q = exp_factor(cfg, k)
    s = abs(sigma)
    ea, eb = abs(E_a), abs(E_b)
    scale_a = abs(a_hat) * (abs(i) * s + ea) + abs(b_hat) * (m * s + ea)
    scale_b = abs(a_hat) * (n * s + eb) + abs(b_hat) * Q * (abs(j) * s + eb)
    return scale_a, scale_b


def _normalize(a_hat: complex, b_hat: complex) -> tuple[complex, complex]:
    pivot = a_hat if abs(a_hat) >= abs(b_hat) else b_hat
    a_n, b_n = a_hat / pivot, b_hat / pivot
    if abs(a_hat) >= abs(b_hat):
        a_n = complex(1.0, 0.0)
    else:
        b_n = complex(1.0, 0.0)
    return a_n, b_n


def null_vector(cfg: FlowConfig, k: float, sigma: complex, branch: str = "plus",
                root_tol: float = 1e-8) -> EigenPair:
    """Nonzero ``(a_hat, b_hat)`` solving both interface rows at ``sigma``.

    Row a gives ``(D, -C)`` and row b gives ``(Q H, -G)``. Near the large-k
    limit one of these is pure rounding noise (e.g. ``D = O(Q)`` on the
    branch that tends to ``E_a / (mu_L + mu)``), so both candidates are
    formed and the one that better satisfies the *other* row is kept.

    Raises
    ------
    NumericalError
        If ``sigma`` is not a root at ``k``, or both rows vanish.
    """
    if not k > 0:
        raise ValueError(f"wavenumber must be > 0, got {k!r}")
    sigma = complex(sigma)
    if not is_root(cfg, k, sigma, root_tol):
        raise NumericalError(f"not a root: sigma={sigma!r} at k={k!r}")
    C, D, G, H = interface_rows(cfg, k, sigma)
    Q = exp_factor(cfg, k)
    candidates = []
    if C != 0 or D != 0:
        candidates.append(_normalize(D, -C))
    if G != 0 or Q * H != 0:
        candidates.append(_normalize(Q * H, -G))
    if not candidates:
        raise NumericalError(f"doubly degenerate: both interface rows vanish at k={k!r}")

    best = None
    for a_hat, b_hat in candidates:
        res = boundary_residuals(EigenPair(k, sigma, branch, a_hat, b_hat), cfg).relative
        if best is None or res < best[0]:
            best = (res, a_hat, b_hat)
    return EigenPair(k=k, sigma=sigma, branch=branch, a_hat=best[1], b_hat=best[2])


def eigenpair(cfg: FlowConfig, k: float, branch: str) -> EigenPair:
    """Null vector for the ``plus`` or ``minus`` root at ``k``."""
    return null_vector(cfg, k, growth_rates(cfg, k).root(branch), branch)


def boundary_residuals(pair: EigenPair, cfg: FlowConfig) -> RowResiduals:
    """Residuals of both sigma-multiplied rows for ``pair``.

    Scales are the sums of magnitudes of every elementary term, so a
    residual below ``tol * scale`` means agreement to rounding.
    """
    C, D, G, H = interface_rows(cfg, pair.k, pair.sigma)
    Q = exp_factor(cfg, pair.k)
    row_a = pair.a_hat * C + pair.b_hat * D
    row_b = pair.a_hat * G + pair.b_hat * (Q * H)
    scale_a, scale_b = _row_scales(cfg, pair.k, pair.sigma, pair.a_hat, pair.b_hat)
    return RowResiduals(
        row_a=row_a, row_b=row_b, scale_a=scale_a, scale_b=scale_b,
        degenerate_a=(C == 0 and D == 0),
        degenerate_b=(G == 0 and Q * H == 0),
    )


def _f_a(pair: EigenPair) -> complex:
    return pair.a_hat + pair.b_hat


def _combo(a_hat: complex, b_hat: complex, s: float) -> tuple[complex, float]:
    """``a_hat e^{s} + b_hat e^{-s}`` as ``(mantissa, exponent)``.

    The dominant exponential is factored out, so ``|mantissa|`` stays of
    order ``max(|a_hat|, |b_hat|)`` for any ``s >= 0``.
    """
    if a_hat == 0:
        return b_hat, -s
    if b_hat == 0:
        return a_hat, s
    log_rho = math.log(abs(b_hat)) - math.log(abs(a_hat)) - 2.0 * s
    if log_rho <= 0.0:
        return a_hat + b_hat * math.exp(-2.0 * s), s
    return a_hat * math.exp(2.0 * s) + b_hat, -s


def _mantissa(pair: EigenPair, cfg: FlowConfig, x: float) -> tuple[complex, float]:
    k = pair.k
    if x < cfg.a:
        return _f_a(pair), k * (x - cfg.a)
    if x > cfg.b:
        mant, expo = _combo(pair.a_hat, pair.b_hat, k * cfg.layer_length)
        return mant, expo - k * (x - cfg.b)
    return _combo(pair.a_hat, pair.b_hat, k * (x - cfg.a))


def amplitude_at(pair: EigenPair, cfg: FlowConfig, x: float) -> complex:
    """Amplitude ``f(x)`` on the whole line.

    Middle layer: ``a_hat e^{k(x-a)} + b_hat e^{-k(x-a)}``. Outside, the
    interface value decays as ``e^{k(x-a)}`` (left) or ``e^{-k(x-b)}``
    (right). Values too large for a double come back as signed infinities.
    """
    mant, expo = _mantissa(pair, cfg, x)
    return scaled_exp(mant, expo)


def log_abs_amplitude(pair: EigenPair, cfg: FlowConfig, x: float) -> float:
    """``log|f(x)|``; finite wherever ``f(x) != 0``, ``-inf`` at zeros."""
    mant, expo = _mantissa(pair, cfg, x)
    if mant == 0:
        return -math.inf
    return math.log(abs(mant)) + expo


def _vanishes(value: complex, *terms: complex) -> bool:
    return abs(value) <= 8.0 * _EPS * sum(abs(t) for t in terms)


def interface_ratio(pair: EigenPair, cfg: FlowConfig, at: str) -> complex:
    """``F(k, x) = (A e^{kx} - B e^{-kx}) / (A e^{kx} + B e^{-kx})`` at an interface.

    ``at`` is ``"a"`` or ``"b"``. At ``b`` the ratio is evaluated as
    ``(1 - rho) / (1 + rho)`` with ``rho = (b_hat / a_hat) e^{-2kL'}``
    (or the reciprocal form when ``rho`` is huge), so no exponential of
    ``kL'`` is ever formed.

    Raises
    ------
    NumericalError
        "indeterminate ratio" when ``f`` vanishes at the interface.
    """
    a_hat, b_hat = pair.a_hat, pair.b_hat
    if at == "a":
        den = a_hat + b_hat
        if _vanishes(den, a_hat, b_hat):
            raise NumericalError(f"indeterminate ratio: f(a) vanishes at k={pair.k!r}")
        return (a_hat - b_hat) / den
    if at != "b":
        raise ValueError(f"interface must be 'a' or 'b', got {at!r}")

    if b_hat == 0:
        return complex(1.0, 0.0)
    if a_hat == 0:
        return complex(-1.0, 0.0)
    two_kl = 2.0 * pair.k * cfg.layer_length
    log_rho = math.log(abs(b_hat)) - math.log(abs(a_hat)) - two_kl
    phase = cmath.phase(b_hat) - cmath.phase(a_hat)
    if log_rho <= 0.0:
        r = cmath.rect(math.exp(log_rho), phase)
        num, den = 1.0 - r, 1.0 + r
    else:
        # divide through by rho; 1/rho is small
        inv = cmath.rect(math.exp(-log_rho), -phase)
        num, den = inv - 1.0, inv + 1.0
        r = inv
    if _vanishes(den, 1.0, r):
        raise NumericalError(f"indeterminate ratio: f(b) vanishes at k={pair.k!r}")
    return num / den


def log_amplitude_ratio(pair: EigenPair, cfg: FlowConfig) -> float:
    """``log(|f(b)| / |f(a)|)``."""
    fa = _f_a(pair)
    if _vanishes(fa, pair.a_hat, pair.b_hat):
        raise NumericalError(f"indeterminate: f(a) vanishes at k={pair.k!r}")
    return log_abs_amplitude(pair, cfg, cfg.b) - math.log(abs(fa))


def amplitude_ratio(pair: EigenPair, cfg: FlowConfig) -> float:
    """Cross-layer amplification ``|f(b)| / |f(a)|``.

    ``math.inf`` when the ratio exceeds the double range; use
    :func:`log_amplitude_ratio` in that regime.
    """
    log_r = log_amplitude_ratio(pair, cfg)
    return math.exp(log_r) if log_r <= _EXP_MAX else math.inf


def perturbation_velocity(pair: EigenPair, cfg: FlowConfig, eps: float,
                          x: float, y: float, t: float) -> complex:
    """Fourier-mode velocity perturbation ``eps f(x) exp(i k y + sigma t)``."""
    if not eps > 0:
        raise ValueError(f"eps must be > 0, got {eps!r}")
    growth = pair.sigma.real * t
    phase = pair.k * y + pair.sigma.imag * t
    f = amplitude_at(pair, cfg, x)
    return eps * scaled_exp(f * cmath.rect(1.0, phase), growth)
