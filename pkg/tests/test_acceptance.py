"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` (the verdict lines
are printed even without ``-s``).
"""
import math
import random
import time
from fractions import Fraction

import pytest

from trilayer import cli
from trilayer.compat import branch_limit_report, feasible_mu
from trilayer.dispersion import (
    collapsed_layer_rate,
    determinant_residual,
    determinant_scale,
    growth_rates,
    mobility_terms,
)
from trilayer.eigen import (
    amplitude_at,
    boundary_residuals,
    eigenpair,
    interface_ratio,
    log_abs_amplitude,
    log_amplitude_ratio,
)
from trilayer.compat import r9_identity_residuals, r9_identity_scales
from trilayer.model import with_values

from conftest import DATA, log_uniform_ks, make_cfg, random_configs


@pytest.fixture
def verdict(capsys, request):
    """Call with (ok, detail); prints the verdict line and asserts."""

    def report(ok, detail):
        name = request.node.name.replace("test_", "", 1)
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {name}: {detail}")
        assert ok, detail

    return report


def _rel(x, ref):
    return abs(x - ref) / abs(ref)


def test_criterion_01_root_correctness(verdict):
    cfgs = random_configs(1000)
    start = time.perf_counter()
    worst_root = worst_oracle = 0.0
    for idx, cfg in enumerate(cfgs):
        for k in log_uniform_ks(32, seed=idx):
            p = growth_rates(cfg, k)
            for s in p.roots:
                prod = determinant_residual(cfg, k, s)
                scale = determinant_scale(cfg, k, s)
                worst_root = max(worst_root, abs(prod) / scale)
                worst_oracle = max(worst_oracle, abs(prod - p.residual(s)) / scale)
    elapsed = time.perf_counter() - start
    ok = worst_root <= 1e-9 and worst_oracle <= 1e-12 and elapsed < 5.0
    verdict(ok, f"root residual {worst_root:.2e} <= 1e-9, oracle gap {worst_oracle:.2e} "
                f"<= 1e-12, {len(cfgs)}x32 points in {elapsed:.2f} s < 5 s")


def _bisect(f, lo, hi):
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_criterion_02_hand_value(cfg0, verdict):
    k = 0.5

    def det(s):
        return determinant_residual(cfg0, k, s).real

    # sign changes of the product-form determinant on a fine scan
    grid = [-0.2 + 0.4 * t / 4000 for t in range(4001)]
    brackets = [(x0, x1) for x0, x1 in zip(grid, grid[1:]) if det(x0) * det(x1) < 0]
    oracle = sorted((_bisect(det, *b) for b in brackets), reverse=True)
    roots = [s.real for s in growth_rates(cfg0, k).roots]
    errs = [_rel(r, o) for r, o in zip(roots, oracle)]
    ok = len(oracle) == 2 and max(errs) <= 1e-4 and abs(roots[0] - 0.03970) < 1e-5 \
        and abs(roots[1] - 0.00911) < 1e-5
    verdict(ok, f"roots {roots[0]:.6f}, {roots[1]:.6f}; max rel. error vs bisection {max(errs):.1e}")


def test_criterion_03_large_k_limits(cfg0, verdict):
    errs_b, errs_a = [], []
    for k in (5.0, 10.0, 15.0):
        p = growth_rates(cfg0, k)
        E_a, E_b = mobility_terms(cfg0, k)
        qb = E_b / p.sigma_plus
        qa = E_a / p.sigma_minus
        errs_b.append(abs(qb - 5.0) / abs(qb))
        errs_a.append(abs(qa - 3.0) / abs(qa))
    mono = all(x > y for x, y in zip(errs_b, errs_b[1:])) and \
        all(x > y for x, y in zip(errs_a, errs_a[1:]))
    ok = errs_b[-1] <= 1e-8 and errs_a[-1] <= 1e-8 and mono
    verdict(ok, f"b-branch errors {[f'{e:.1e}' for e in errs_b]}, "
                f"a-branch errors {[f'{e:.1e}' for e in errs_a]}, monotone={mono}")


def test_criterion_04_compatibility(cfg0, cfg_compatible, verdict):
    bad = [branch_limit_report(cfg0, br, [5, 10, 15]) for br in ("plus", "minus")]
    good = [branch_limit_report(cfg_compatible, br, [5, 10, 15]) for br in ("plus", "minus")]
    ok = (all(r.verdict == "incompatible" and abs(r.cross_limit_mismatch - 2.0) <= 1e-6
              for r in bad)
          and all(r.verdict == "compatible" and abs(r.tension_ratio_residual) <= 1e-12
                  for r in good))
    verdict(ok, f"cfg0 mismatch {bad[0].cross_limit_mismatch!r} ({bad[0].verdict}); "
                f"constructed config residual {good[0].tension_ratio_residual!r} "
                f"({good[0].verdict})")


def test_criterion_05_identities_on_shell(verdict):
    worst = 0.0
    count = 0
    for idx, cfg in enumerate(random_configs(200, seed=99)):
        for k in log_uniform_ks(8, seed=1000 + idx):
            for branch in ("plus", "minus"):
                pair = eigenpair(cfg, k, branch)
                try:
                    res = r9_identity_residuals(cfg, pair)
                    scales = r9_identity_scales(cfg, pair)
                except ArithmeticError:
                    continue  # amplitude node at an interface; ratio undefined
                worst = max(worst, *(abs(r) / s for r, s in zip(res, scales) if s))
                count += 1
    verdict(worst <= 1e-9 and count > 3000,
            f"max relative identity residual {worst:.2e} <= 1e-9 over {count} eigenpairs")


def test_criterion_06_feasibility(verdict):
    cases = [((1, 4, 1, 2), True, Fraction(2), "feasible"),
             ((1, 3, 1, 2), False, Fraction(1), "lower bound"),
             ((1, 4, 1, 1.5), False, Fraction(5), "upper bound")]
    got = []
    ok = True
    for args, feasible, exact, reason in cases:
        r = feasible_mu(*args)
        got.append(f"{args}->{r.mu!r} {r.reason}")
        ok &= r.feasible == feasible and Fraction(r.mu) == exact and r.reason == reason
    verdict(ok, "; ".join(got))


def test_criterion_07_collapsed_layer(cfg0, verdict):
    cfg = with_values(cfg0, a=-1e-6, b=0.0)
    errs = []
    for k in (0.1, 0.5, 2.0):
        p = growth_rates(cfg, k)
        target = collapsed_layer_rate(cfg, k)
        nonzero = max(p.roots, key=abs)
        errs.append(_rel(nonzero.real, target))
    verdict(max(errs) <= 1e-5, f"relative errors {[f'{e:.1e}' for e in errs]} <= 1e-5")


def test_criterion_08_swap_symmetry(verdict):
    rng = random.Random(4242)
    worst = 0.0
    for cfg in random_configs(300, seed=4242):
        swapped = make_cfg(mu_L=cfg.mu_R, mu=cfg.mu, mu_R=cfg.mu_L, U=-cfg.U,
                           T_a=cfg.T_b, T_b=cfg.T_a, a=cfg.a, b=cfg.b, relax_ordering=True)
        for _ in range(8):
            k = 10 ** rng.uniform(-3, math.log10(50))
            r1 = sorted(growth_rates(cfg, k).roots, key=lambda z: (z.real, z.imag))
            r2 = sorted(growth_rates(swapped, k).roots, key=lambda z: (z.real, z.imag))
            scale = max(abs(z) for z in r1) or 1.0
            worst = max(worst, *(abs(x - y) / scale for x, y in zip(r1, r2)))
    verdict(worst <= 1e-10, f"max relative root difference {worst:.2e} <= 1e-10")


def test_criterion_09_robustness(cfg0, verdict):
    cfg = with_values(cfg0, a=-100.0, b=0.0)
    k = 1e4
    values = []
    no_nan = True
    p = growth_rates(cfg, k)
    values += [p.alpha, p.beta, p.gamma, p.discriminant, *p.roots]
    for branch in ("plus", "minus"):
        pair = eigenpair(cfg, k, branch)
        values += [pair.a_hat, pair.b_hat, boundary_residuals(pair, cfg).relative,
                   interface_ratio(pair, cfg, "a"), interface_ratio(pair, cfg, "b"),
                   log_amplitude_ratio(pair, cfg), log_abs_amplitude(pair, cfg, -50.0)]
        # |f(-50)| ~ e^{5e5} on the plus branch: saturates, never NaN
        direct = amplitude_at(pair, cfg, -50.0)
        no_nan &= not (math.isnan(direct.real) or math.isnan(direct.imag))
    reports = [branch_limit_report(cfg, br, [100, 1000, 10000]) for br in ("plus", "minus")]
    for r in reports:
        values += [*r.Eb_over_sigma, *r.Ea_over_sigma, *r.F_at_a, *r.F_at_b,
                   r.cross_limit_mismatch]
    finite = all(math.isfinite(complex(v).real) and math.isfinite(complex(v).imag)
                 for v in values)
    limits = ", ".join(f"{r.branch}->{r.matched_interface} "
                       f"(E_b/s={r.limit_Eb_over_sigma.real:.6g}, "
                       f"E_a/s={r.limit_Ea_over_sigma.real:.6g})" for r in reports)
    verdict(finite and no_nan, f"{len(values)} quantities finite; limits {limits}")


def test_criterion_10_cli(tmp_path, verdict):
    from test_cli import GOLDEN, RUNS, run

    mismatched = []
    codes = {}
    for name in sorted(RUNS):
        d1, d2 = tmp_path / f"{name}1", tmp_path / f"{name}2"
        d1.mkdir()
        d2.mkdir()
        c1, expected, o1 = run(name, d1)
        c2, _, o2 = run(name, d2)
        codes[name] = c1
        if c1 != expected or c2 != c1 or o1 != o2 or \
                any(data != (GOLDEN / f).read_bytes() for f, data in o1.items()):
            mismatched.append(name)
    missing = tmp_path / "absent.json"
    exit_1 = cli.main(["dispersion", "--config", str(missing)])
    exit_2 = cli.main(["eigen", "--config", str(DATA / "edge_node.json"), "--k", "0.5",
                       "--branch", "minus"])
    taxonomy = (codes["dispersion"], exit_1, exit_2, codes["compat_incompatible"])
    ok = not mismatched and taxonomy == (0, 1, 2, 3)
    verdict(ok, f"{len(RUNS)} subcommand runs byte-identical to golden "
                f"(mismatched: {mismatched or 'none'}); exit codes 0/1/2/3 -> {taxonomy}")
