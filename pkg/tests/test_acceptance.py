"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings. The multi-seed optimizer comparison (criteria 6 and 7)
dominates the runtime at roughly ten minutes; everything else finishes in
seconds.
"""
import math
import time

import numpy as np
import pytest
from scipy import integrate

from leoconst.config import ExperimentConfig, apply_profile
from leoconst.coverage import (GridSpec, Timeline, coverage_ratio_timeline,
                               footprint_geometry, theta_from_beta)
from leoconst.evaluator import evaluate_design
from leoconst.geo import ConstellationGeometry, WalkerConfig, \
    propagate_ecef_batch
from leoconst.link import (hppp_interference_mc, mean_interference,
                           slant_range, spectral_efficiency_from_psi)
from leoconst.cost import space_segment_cost
from leoconst.optim import DesignVector, OptimizerConfig, run_baseline, \
    run_improved_ga
from leoconst.runner import compare_trials, write_evaluation_artifact

from _smoke import brute_force_optimum, smoke_bounds, smoke_evaluator


def announce(criterion, text):
    print(f"\nACCEPTANCE {criterion}: PASS - {text}")


def test_criterion_1_interference_monte_carlo_equivalence():
    """Closed-form mean interference vs HPPP sampling, 3% relative."""
    started = time.perf_counter()
    cfg = ExperimentConfig()
    errors = {}
    for h_km in (500.0, 1000.0, 1800.0):
        env = cfg.link_environment(h_km * 1e3)
        closed = mean_interference(env)
        # inflate the sampled density so every realization draws at least
        # ten thousand expected devices
        base_expected = hppp_expected_devices(env)
        inflation = max(1.0, 1e4 / base_expected)
        mc = hppp_interference_mc(env, realizations=200, seed=1234,
                                  density_inflation=inflation)
        rel = abs(mc - closed) / closed
        errors[h_km] = rel
        assert rel <= 0.03, f"h={h_km} km: MC={mc}, closed={closed}, rel={rel}"
    elapsed = time.perf_counter() - started
    assert elapsed < 120.0
    announce("criterion-1",
             f"closed-form interference within 3% of the Poisson oracle at "
             f"500/1000/1800 km (max rel err "
             f"{max(errors.values()):.4f}, {elapsed:.1f}s)")


def hppp_expected_devices(env):
    from leoconst.constants import EARTH_RADIUS_M
    cos_cap = EARTH_RADIUS_M / (EARTH_RADIUS_M + env.altitude_m)
    area = 2.0 * math.pi * EARTH_RADIUS_M**2 * (1.0 - cos_cap)
    return env.activity * env.device_density_per_m2 * area


def test_criterion_2_spectral_efficiency_quadrature_equivalence():
    """Closed-form mean spectral efficiency vs adaptive quadrature,
    1e-9 relative over a 5x5 (Psi, h) grid."""
    started = time.perf_counter()
    worst = 0.0
    for h_km in np.linspace(500.0, 1800.0, 5):
        h = h_km * 1e3
        theta = theta_from_beta(math.radians(45.0), h)
        d_max = slant_range(theta, h)
        for psi in np.logspace(4, 14, 5):
            oracle, _ = integrate.quad(lambda u: math.log1p(psi / u),
                                       h * h, d_max * d_max,
                                       epsabs=0.0, epsrel=1e-12, limit=200)
            oracle /= (d_max * d_max - h * h) * math.log(2.0)
            xi = spectral_efficiency_from_psi(psi, h, d_max)
            rel = abs(xi - oracle) / oracle
            worst = max(worst, rel)
            assert rel <= 1e-9, f"h={h_km}, psi={psi}: rel={rel}"
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    announce("criterion-2",
             f"closed-form spectral efficiency within 1e-9 of quadrature "
             f"on the 5x5 grid (worst {worst:.2e}, {elapsed:.2f}s)")


def test_criterion_3_coverage_brute_force_equivalence():
    """Grid coverage vs an independently coded great-circle check."""
    started = time.perf_counter()
    constellation = ConstellationGeometry.from_walker(WalkerConfig(
        sats_per_plane=2, planes=2, phase_factor=1, altitude_m=1200e3,
        inclination_rad=math.radians(55.0)))
    grid = GridSpec(step_deg=30.0)
    timeline = Timeline(duration_s=600.0, step_s=600.0)
    theta = theta_from_beta(math.radians(90.0), 1200e3)
    footprint = footprint_geometry(1200e3, theta)
    report = coverage_ratio_timeline(constellation, grid, timeline, footprint)

    # independent check: haversine distance from each grid point to each
    # subsatellite point
    def haversine(lat1, lon1, lat2, lon2):
        s = (math.sin((lat2 - lat1) / 2.0) ** 2
             + math.cos(lat1) * math.cos(lat2)
             * math.sin((lon2 - lon1) / 2.0) ** 2)
        return 2.0 * math.asin(min(1.0, math.sqrt(s)))

    positions = propagate_ecef_batch(constellation, timeline.offsets())
    lats, lons = grid.points()
    for slot_index in range(timeline.slot_count):
        subsat = []
        for p in positions[slot_index]:
            r = float(np.linalg.norm(p))
            subsat.append((math.asin(p[2] / r), math.atan2(p[1], p[0])))
        covered = 0
        for lat_deg, lon_deg in zip(lats, lons):
            lat, lon = math.radians(lat_deg), math.radians(lon_deg)
            if any(haversine(lat, lon, s_lat, s_lon) <= footprint.phi_max_rad
                   for s_lat, s_lon in subsat):
                covered += 1
        assert report.eta_per_slot[slot_index] == covered / lats.size
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    announce("criterion-3",
             f"coverage ratio equals the independent great-circle check "
             f"exactly (eta={report.eta_per_slot[0]:.4f}, {elapsed:.2f}s)")


def test_criterion_4_cost_regression():
    """Cost model vs independently computed breakdown, 1e-9 relative."""
    manufacture = 227.0 * 185e-5
    launch = 227.0 * 166e-6 * math.exp(0.43 * math.log(1589.0 / 1.609))
    per_satellite = 1.2 * (manufacture + launch)
    total = 48 * per_satellite
    cb = space_segment_cost(8, 6, 1589.0, 227.0, 0.2)
    assert cb.manufacture == pytest.approx(manufacture, rel=1e-9)
    assert cb.launch == pytest.approx(launch, rel=1e-9)
    assert cb.per_satellite_total == pytest.approx(per_satellite, rel=1e-9)
    assert cb.constellation_total == pytest.approx(total, rel=1e-9)
    assert per_satellite == pytest.approx(1.381, abs=5e-4)
    assert total == pytest.approx(66.3, abs=0.02)
    announce("criterion-4",
             f"cost breakdown reproduces the arithmetic oracle to 1e-9 "
             f"(per-satellite {cb.per_satellite_total:.6f}, "
             f"total {cb.constellation_total:.4f})")


def test_criterion_5_optimizer_on_analytic_smoke_problem():
    """Improved GA within 5% of the exhaustive-grid optimum on >= 90% of
    20 seeds; incumbent trace nonincreasing on all seeds."""
    started = time.perf_counter()
    opt_cost, opt_point = brute_force_optimum()
    bounds = smoke_bounds()
    hits = 0
    for seed in range(1, 21):
        res = run_improved_ga(smoke_evaluator, bounds,
                              OptimizerConfig(seed=seed))
        costs = [p.incumbent_cost for p in res.trace
                 if not math.isnan(p.incumbent_cost)]
        assert np.all(np.diff(costs) <= 0.0), f"seed {seed}: cost increased"
        if res.feasible and res.best_cost <= 1.05 * opt_cost:
            hits += 1
    elapsed = time.perf_counter() - started
    assert hits >= 18, f"only {hits}/20 seeds within 5% of {opt_cost}"
    assert elapsed < 60.0
    announce("criterion-5",
             f"improved GA within 5% of the grid optimum ({opt_cost:.2f} at "
             f"P={opt_point[0]}, N={opt_point[1]}, h={opt_point[2]/1e3:.0f} km) "
             f"on {hits}/20 seeds, incumbents monotone ({elapsed:.1f}s)")


@pytest.fixture(scope="module")
def desk_comparison():
    """Improved GA vs classical GA on the desk profile, 20 seeds, equal
    evaluator-call budgets (shared by criteria 6 and 7)."""
    cfg = apply_profile(ExperimentConfig(), "desk")
    started = time.perf_counter()
    comparison = compare_trials(cfg, ["improved", "classical-ga"],
                                seeds=list(range(1, 21)),
                                equalize_budget=True)
    return cfg, comparison, time.perf_counter() - started


def test_criterion_6_desk_scale_convergence(desk_comparison):
    """Improved GA's mean final cost <= classical GA's; its mean
    incumbent curve reaches within 5% of its final value by iteration 15."""
    cfg, comparison, elapsed = desk_comparison
    improved = comparison.row("improved")
    classical = comparison.row("classical-ga")
    assert improved.mean_evaluations == classical.mean_evaluations
    assert improved.mean_final_cost <= classical.mean_final_cost, (
        f"improved {improved.mean_final_cost} vs classical "
        f"{classical.mean_final_cost}")
    curve = comparison.curves["improved"]
    final = curve[-1]
    assert np.isfinite(curve[14]), "no incumbent by iteration 15"
    assert curve[14] <= 1.05 * final, (
        f"iteration-15 mean {curve[14]} vs final {final}")
    assert elapsed < 1800.0
    announce("criterion-6",
             f"desk-scale comparison: improved {improved.mean_final_cost:.2f} "
             f"<= classical {classical.mean_final_cost:.2f} at equal budgets "
             f"({improved.mean_evaluations:.0f} calls); iteration-15/final "
             f"ratio {curve[14]/final:.4f} <= 1.05 ({elapsed/60:.1f} min)")


def test_criterion_7_feasible_designs_satisfy_qos(desk_comparison):
    """Every design reported feasible re-evaluates to eta_min >= eta_th
    and min_visible >= required count, with zero tolerance."""
    cfg, comparison, _ = desk_comparison
    checked = 0
    results = list(comparison.results.values())
    # also cover the remaining baselines on two seeds each
    evaluator_cache = {}
    from leoconst.evaluator import make_evaluator
    for kind in ("pso", "sca", "gwo", "tabu"):
        for seed in (1, 2):
            ev = make_evaluator(cfg)
            res = run_baseline(kind, ev, cfg.bounds(),
                               cfg.optimizer_config(seed=seed))
            results.append(res)
    for res in results:
        if not res.feasible:
            continue
        report = evaluate_design(cfg, res.best_design)
        assert report.eta_min >= cfg.qos_eta_th, (
            f"{res.algorithm} seed {res.seed}: eta {report.eta_min}")
        assert report.min_visible >= report.required_count, (
            f"{res.algorithm} seed {res.seed}: nvis {report.min_visible} "
            f"< {report.required_count}")
        checked += 1
    assert checked > 0, "no feasible final designs to check"
    announce("criterion-7",
             f"{checked} feasible final designs re-evaluated; all satisfy "
             f"both QoS constraints exactly")


def test_criterion_8_paper_design_benchmark(tmp_path):
    """The published optimized design evaluates to completion at paper
    fidelity; eta_min is reported and any shortfall against the 90%
    threshold is recorded in the artifact rather than silently passed."""
    started = time.perf_counter()
    cfg = apply_profile(ExperimentConfig(), "paper")
    design = DesignVector(altitude_m=1589e3, planes=6.0, sats_per_plane=8.0,
                          inclination_rad=math.radians(41.0))
    report = evaluate_design(cfg, design)
    elapsed = time.perf_counter() - started

    assert report.eta_per_slot.size == cfg.timeline().slot_count
    assert 0.0 <= report.eta_min <= 1.0
    assert report.cost.constellation_total == pytest.approx(66.28, abs=0.01)

    path = tmp_path / "paper_design_eval.txt"
    write_evaluation_artifact(cfg, report, path)
    text = path.read_text()
    assert "coverage.eta_min" in text
    if report.eta_min < cfg.qos_eta_th:
        assert "qos.note" in text, "shortfall must be recorded"
        status = (f"eta_min={report.eta_min:.4f} falls short of 0.9 under "
                  f"this simulator; shortfall recorded in the artifact")
    else:
        status = f"eta_min={report.eta_min:.4f} meets the 0.9 expectation"
    announce("criterion-8",
             f"paper-design evaluation completed in {elapsed:.1f}s; {status}")
