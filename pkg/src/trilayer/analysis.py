"""Wavenumber sweeps, maximal growth, and middle-viscosity selection."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .compat import DEFAULT_TOL, is_compatible
from .dispersion import cutoff_wavenumber, growth_rates, resonant_wavenumbers
from .model import ConfigError, FlowConfig, with_values

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
SCAN_AXES = ("mu", "U", "T_a", "T_b", "b", "a")


@dataclass(frozen=True)
class GrowthCurve:
    k_grid: tuple
    points: tuple
    sigma_max: float
    k_at_max: float
    unstable_band: tuple  # ((k_lo, k_hi), ...)


@dataclass(frozen=True)
class ScanCell:
    i: int
    j: int
    value1: float
    value2: float
    k_star: float | None = None
    sigma_star: float | None = None
    verdict: str | None = None
    error: str | None = None


@dataclass
class OptimizeResult:
    mu_star: float
    objective_star: float
    trace: list = field(default_factory=list)  # (mu, objective) in evaluation order


def _check_range(k_min: float, k_max: float) -> None:
    if not (math.isfinite(k_min) and math.isfinite(k_max)):
        raise ValueError(f"invalid range: [{k_min!r}, {k_max!r}] not finite")
    if not 0 <= k_min < k_max:
        raise ValueError(f"invalid range: need 0 <= k_min < k_max, got [{k_min!r}, {k_max!r}]")


def leading_rate(cfg: FlowConfig, k: float) -> float:
    """Real part of the faster-growing root."""
    return growth_rates(cfg, k).sigma_plus.real


def default_k_max(cfg: FlowConfig) -> float:
    return 10.0 * cutoff_wavenumber(cfg)


def k_grid(cfg: FlowConfig, k_min: float, k_max: float, samples: int) -> list[float]:
    """Wavenumbers uniform in ``k`` up to the largest resonance, logarithmic after.

    Points are uniform in ``s(k) = k`` for ``k <= k_c`` and
    ``s(k) = k_c (1 + ln(k / k_c))`` above, which keeps the spacing
    continuous across ``k_c``. Endpoints are exact.
    """
    _check_range(k_min, k_max)
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples!r}")
    k_c = max((k for k in resonant_wavenumbers(cfg) if k is not None), default=0.0)
    if k_c <= 0.0:
        k_c = k_min if k_min > 0 else k_max

    def fwd(k):
        return k if k <= k_c else k_c * (1.0 + math.log(k / k_c))

    def inv(s):
        return s if s <= k_c else k_c * math.exp(s / k_c - 1.0)

    s0, s1 = fwd(k_min), fwd(k_max)
    step = (s1 - s0) / (samples - 1)
    grid = [inv(s0 + idx * step) for idx in range(samples)]
    grid[0], grid[-1] = k_min, k_max
    return grid


def golden_section_max(f, lo: float, hi: float, tol: float, max_iter: int = 500):
    """Maximise a unimodal ``f`` on ``[lo, hi]`` to bracket width ``tol``.

    Returns ``(x_best, f_best, evaluations)`` where ``x_best`` is the best
    point actually evaluated.
    """
    evals = []

    def call(x):
        fx = f(x)
        evals.append((x, fx))
        return fx

    if hi <= lo:
        fx = call(lo)
        return lo, fx, evals
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = call(x1), call(x2)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = call(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = call(x2)
    x_best, f_best = max(evals, key=lambda e: e[1])
    return x_best, f_best, evals


def _refine_max(cfg, grid, values, tol):
    idx = max(range(len(values)), key=values.__getitem__)
    k_best, v_best = grid[idx], values[idx]
    lo = grid[max(idx - 1, 0)]
    hi = grid[min(idx + 1, len(grid) - 1)]
    k_ref, v_ref, _ = golden_section_max(lambda k: leading_rate(cfg, k), lo, hi, tol)
    if v_ref > v_best:
        return k_ref, v_ref
    return k_best, v_best


def _band_edge(cfg, k_out, k_in, tol):
    """Bisect between a stable ``k_out`` and an unstable ``k_in``."""
    while abs(k_in - k_out) > tol:
        mid = 0.5 * (k_in + k_out)
        if mid == k_in or mid == k_out:
            break
        if leading_rate(cfg, mid) > 0:
            k_in = mid
        else:
            k_out = mid
    return k_in


def unstable_bands(cfg, grid, values, tol):
    bands = []
    start = None
    for idx, (k, v) in enumerate(zip(grid, values)):
        unstable = v > 0
        if unstable and start is None:
            start = k if idx == 0 else _band_edge(cfg, grid[idx - 1], k, tol)
        elif not unstable and start is not None:
            bands.append((start, _band_edge(cfg, k, grid[idx - 1], tol)))
            start = None
    if start is not None:
        bands.append((start, grid[-1]))
    return tuple(bands)


def sweep(cfg: FlowConfig, k_min: float, k_max: float, samples: int) -> GrowthCurve:
    """Evaluate both roots on :func:`k_grid` and extract max growth and bands.

    Band edges are bisected to ``1e-9 * k_max``; the maximum is refined
    by golden section inside its grid cell.
    """
    grid = k_grid(cfg, k_min, k_max, samples)
    points = tuple(growth_rates(cfg, k) for k in grid)
    values = [p.sigma_plus.real for p in points]
    k_star, s_star = _refine_max(cfg, grid, values, 1e-10 * (k_max - k_min))
    bands = unstable_bands(cfg, grid, values, 1e-9 * k_max)
    return GrowthCurve(
        k_grid=tuple(grid), points=points, sigma_max=s_star,
        k_at_max=k_star, unstable_band=bands,
    )


def max_growth(cfg: FlowConfig, k_min: float, k_max: float,
               samples: int = 512) -> tuple[float, float]:
    """Largest real growth rate over ``[k_min, k_max]``: ``(k_star, sigma_star)``."""
    grid = k_grid(cfg, k_min, k_max, samples)
    values = [leading_rate(cfg, k) for k in grid]
    return _refine_max(cfg, grid, values, 1e-10 * (k_max - k_min))


def optimize_mu(cfg: FlowConfig, mu_bounds: tuple[float, float],
                k_range: tuple[float, float], coarse: int = 32,
                restarts: int = 3, samples: int = 512) -> OptimizeResult:
    """Middle viscosity minimising the maximal growth rate over ``k_range``.

    The objective ``J(mu) = max_k Re sigma_plus`` is evaluated on a coarse
    grid of ``mu`` (plus the template's own ``mu`` when inside the bounds);
    golden-section searches are restarted from the ``restarts`` best grid
    cells. No global optimality is claimed.

    Raises
    ------
    ValueError
        Empty bounds, or bounds outside the open interval ``(mu_L, mu_R)``.
    """
    lo, hi = (float(v) for v in mu_bounds)
    if not lo <= hi:
        raise ValueError(f"empty bounds: [{lo!r}, {hi!r}]")
    if not (cfg.mu_L < lo and hi < cfg.mu_R):
        raise ValueError(
            f"bounds [{lo!r}, {hi!r}] must lie inside (mu_L, mu_R) = "
            f"({cfg.mu_L!r}, {cfg.mu_R!r})"
        )
    k_min, k_max = k_range
    _check_range(k_min, k_max)
    trace = []

    def objective(mu):
        value = max_growth(with_values(cfg, mu=mu), k_min, k_max, samples)[1]
        trace.append((mu, value))
        return value

    if lo == hi:
        value = objective(lo)
        return OptimizeResult(lo, value, trace)

    step = (hi - lo) / (coarse - 1)
    mus = [lo + idx * step for idx in range(coarse)]
    mus[-1] = hi
    values = [objective(mu) for mu in mus]
    best_mu, best_val = min(zip(mus, values), key=lambda e: e[1])
    if lo <= cfg.mu <= hi:
        own = objective(cfg.mu)
        if own < best_val:
            best_mu, best_val = cfg.mu, own

    order = sorted(range(coarse), key=lambda idx: (values[idx], idx))[:restarts]
    for idx in order:
        cell_lo = mus[max(idx - 1, 0)]
        cell_hi = mus[min(idx + 1, coarse - 1)]
        mu_r, neg, _ = golden_section_max(lambda mu: -objective(mu), cell_lo, cell_hi,
                                          1e-6 * (hi - lo))
        if -neg < best_val:
            best_mu, best_val = mu_r, -neg
    return OptimizeResult(best_mu, best_val, trace)


def param_scan(cfg: FlowConfig, axis1: tuple[str, list], axis2: tuple[str, list],
               k_range: tuple[float, float] | None = None,
               samples: int = 512, tol: float = DEFAULT_TOL) -> list[ScanCell]:
    """Max growth and compatibility verdict on a 2-D parameter grid.

    Cells come back in row-major order (``axis1`` outer). A cell whose
    configuration fails validation carries the error text and the scan
    goes on.
    """
    (name1, values1), (name2, values2) = axis1, axis2
    for name in (name1, name2):
        if name not in SCAN_AXES:
            raise ValueError(f"unknown scan axis {name!r}; choose from {', '.join(SCAN_AXES)}")
    if name1 == name2:
        raise ValueError(f"scan axes must differ, got {name1!r} twice")
    if k_range is None:
        k_range = (0.0, default_k_max(cfg))
    _check_range(*k_range)

    cells = []
    for i, v1 in enumerate(values1):
        for j, v2 in enumerate(values2):
            try:
                cell_cfg = with_values(cfg, **{name1: float(v1), name2: float(v2)})
            except ConfigError as exc:
                cells.append(ScanCell(i, j, v1, v2, error=str(exc)))
                continue
            k_star, s_star = max_growth(cell_cfg, *k_range, samples=samples)
            verdict = "compatible" if is_compatible(cell_cfg, "b", tol) else "incompatible"
            cells.append(ScanCell(i, j, v1, v2, k_star, s_star, verdict))
    return cells

