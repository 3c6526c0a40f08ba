"""Acceptance gate: one test per release criterion, at fixed tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line per
criterion.  Oracles here are independent of the implementation paths they
check (exact rational arithmetic, numeric quadrature, dense sampling,
exhaustive enumeration, linear solves).
"""
import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest
from fastapi.testclient import TestClient
from scipy.integrate import quad

from decisionlab import bezier, cli, correlation, leveling, lineargaussian, markov, mdp
from decisionlab.service import create_app

from conftest import (
    DATA_DIR,
    EMPLOYMENT_MANUFACTURING,
    EMPLOYMENT_SEASONAL,
    GAMBLING_GDP,
    GAMBLING_REVENUE,
    MINING_GDP,
    TAX_REVENUE_SEASONAL,
    read_table,
    register_all,
)
from decisionlab.store import HistoryStore, load_rules


def announce(name: str) -> None:
    print(f"ACCEPTANCE PASS — {name}")


# --- correlation ---------------------------------------------------------------


def test_correlation_regression_reference_digits():
    seasonal = correlation.PairedSample(EMPLOYMENT_SEASONAL, TAX_REVENUE_SEASONAL)
    gdp = correlation.PairedSample(GAMBLING_GDP, MINING_GDP)
    expected = {
        "seasonal": (0.776017710959035, 0.642857142857143, 0.833333333333333),
        "gdp": (-0.0116493580762903, 0.166666666666667, 0.133333333333333),
    }

    def compute(sample):
        return (
            correlation.pearson(sample),
            correlation.kendall_tau(sample),
            correlation.spearman(sample),
        )

    for name, sample in (("seasonal", seasonal), ("gdp", gdp)):
        r, tau, rho = compute(sample)
        # population (divisor n) deviations reproduce the reference output;
        # if this ever drifts, rerun with sample deviations per the contingency
        assert r == pytest.approx(expected[name][0], abs=1e-9), \
            f"{name}: population-deviation Pearson missed; check divisor"
        assert tau == pytest.approx(expected[name][1], abs=1e-9)
        assert rho == pytest.approx(expected[name][2], abs=1e-9)

    elapsed = min(
        _timed(lambda: (compute(seasonal), compute(gdp))) for _ in range(5)
    )
    assert elapsed < 1e-3, f"six coefficients took {elapsed * 1e3:.3f} ms"
    announce(f"correlation regression (both datasets, {elapsed * 1e6:.0f} us)")


def _timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def test_spearman_equivalence_on_tie_free_samples():
    rng = np.random.default_rng(101)
    checked = 0
    while checked < 1000:
        n = int(rng.integers(8, 51))
        x = rng.standard_normal(n)
        y = rng.standard_normal(n)
        if len(np.unique(x)) != n or len(np.unique(y)) != n:
            continue
        # textbook shortcut with integer ranks (valid only without ties)
        rx = np.empty(n)
        rx[np.argsort(x)] = np.arange(1, n + 1)
        ry = np.empty(n)
        ry[np.argsort(y)] = np.arange(1, n + 1)
        d2 = float(np.sum((rx - ry) ** 2))
        shortcut = 1.0 - 6.0 * d2 / (n * (n * n - 1))
        value = correlation.spearman(correlation.PairedSample(x.tolist(), y.tolist()))
        assert abs(value - shortcut) <= 1e-12
        checked += 1
    announce("spearman shortcut equals rank-pearson on 1000 tie-free samples")


# --- linear gaussian --------------------------------------------------------------


def _central_gradient(series, model, rel_step=1e-5):
    grads = []
    for name in ("a", "b", "sigma"):
        p = getattr(model, name)
        # sigma's step must scale with sigma itself: the likelihood is only
        # quadratic in a and b, so those tolerate a floored relative step
        h = rel_step * (abs(p) if name == "sigma" else max(abs(p), 1e-2))
        hi = lineargaussian.log_likelihood(
            series, lineargaussian.LinearGaussianModel(**{**model.__dict__, name: p + h})
        )
        lo = lineargaussian.log_likelihood(
            series, lineargaussian.LinearGaussianModel(**{**model.__dict__, name: p - h})
        )
        grads.append((hi - lo) / (2 * h))
    return grads


def test_mle_gradient_check():
    rng = np.random.default_rng(102)
    series_pool = [list(EMPLOYMENT_MANUFACTURING), list(GAMBLING_REVENUE)]
    while len(series_pool) < 102:
        n = int(rng.integers(5, 40))
        a = float(rng.uniform(-1.05, 1.05))  # keep trajectories from exploding
        b = float(rng.uniform(-5, 5))
        sigma = float(rng.uniform(0.1, 2.0))
        x = float(rng.uniform(-10, 10))
        values = [x]
        for _ in range(n - 1):
            x = a * x + b + sigma * float(rng.standard_normal())
            values.append(x)
        try:
            lineargaussian.fit_mle(values)
        except lineargaussian.DegenerateVariance:  # pragma: no cover
            continue
        series_pool.append(values)
    worst = 0.0
    for series in series_pool:
        model = lineargaussian.fit_mle(series)
        gradient = _central_gradient(series, model)
        worst = max(worst, float(np.max(np.abs(gradient))))
    assert worst < 1e-6, f"largest finite-difference gradient {worst:.3e}"
    announce(f"mle gradient check on 102 series (max |grad| {worst:.1e})")


def test_gaussian_propagation_against_quadrature():
    a, b, sigma = 2.0, 1.0, 0.5
    mu_t, sd_t = 10.0, 1.0
    out = lineargaussian.predict_one(
        lineargaussian.GaussianBelief(mu_t, sd_t),
        lineargaussian.LinearGaussianModel(a, b, sigma),
    )
    assert out.mean == pytest.approx(21.0, abs=1e-12)
    assert out.variance == pytest.approx(4.25, abs=1e-12)

    # independent oracle: push the belief through the transition integral
    def push_forward(x_next):
        integrand = lambda x: (
            math.exp(-0.5 * ((x_next - (a * x + b)) / sigma) ** 2)
            / (sigma * math.sqrt(2 * math.pi))
            * math.exp(-0.5 * ((x - mu_t) / sd_t) ** 2)
            / (sd_t * math.sqrt(2 * math.pi))
        )
        return quad(integrand, mu_t - 10 * sd_t, mu_t + 10 * sd_t, limit=200)[0]

    span = 10 * math.sqrt(4.25)
    mean = quad(lambda x: x * push_forward(x), 21 - span, 21 + span, limit=400)[0]
    var = quad(lambda x: (x - mean) ** 2 * push_forward(x), 21 - span, 21 + span, limit=400)[0]
    assert mean == pytest.approx(21.0, abs=1e-6)
    assert var == pytest.approx(4.25, abs=1e-6)

    # variance recursion holds exactly along any horizon
    model = lineargaussian.fit_mle(GAMBLING_REVENUE)
    chain = lineargaussian.predict_horizon(GAMBLING_REVENUE[-1], model, 6)
    var_expected = 0.0
    for belief in chain:
        var_expected = model.a**2 * var_expected + model.sigma**2
        assert belief.variance == pytest.approx(var_expected, rel=1e-12)
    announce("gaussian propagation matches quadrature and variance recursion")


# --- markov chain -------------------------------------------------------------------


def test_markov_simplex_and_prediction_oracle():
    rng = np.random.default_rng(103)
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        labels = rng.integers(0, n, size=int(rng.integers(2, 40))).tolist()
        laplace = bool(rng.integers(0, 2))
        p = markov.learn_transition_matrix(labels, n, laplace)
        assert np.all(p >= 0)
        assert np.max(np.abs(p.sum(axis=1) - 1.0)) <= 1e-9
        if laplace:
            assert np.all(p > 0)

    for _ in range(200):
        n = int(rng.integers(1, 6))
        raw = rng.uniform(0.01, 1.0, size=(n, n))
        p = raw / raw.sum(axis=1, keepdims=True)
        start = rng.dirichlet(np.ones(n))
        k = int(rng.integers(0, 9))
        predicted = markov.predict_distribution(start, p, k)
        stepped = start.copy()
        for _ in range(k):
            stepped = stepped @ p
        assert np.max(np.abs(predicted - stepped)) <= 1e-12
        a_steps = int(rng.integers(0, 5))
        b_steps = int(rng.integers(0, 5))
        joint = markov.predict_distribution(start, p, a_steps + b_steps)
        split_path = markov.predict_distribution(
            markov.predict_distribution(start, p, a_steps), p, b_steps
        )
        assert np.max(np.abs(joint - split_path)) <= 1e-9
    announce("markov learning simplex + stepwise/chapman-kolmogorov oracles")


# --- mdp -----------------------------------------------------------------------------


def test_mdp_optimality_against_enumeration():
    rng = np.random.default_rng(104)
    epsilon = 1e-8
    start = time.perf_counter()

    # closed form: single state, single action
    for gamma in (0.5, 0.9, 0.99):
        for reward in (-3.0, 0.0, 1.0, 7.5):
            model = mdp.MdpModel([[[1.0]]], [reward], gamma)
            u, _ = mdp.value_iteration(model, epsilon)
            assert abs(u[0] - reward / (1 - gamma)) <= epsilon

    # contraction on random utility pairs
    for _ in range(100):
        n = int(rng.integers(1, 5))
        m = int(rng.integers(1, 4))
        t = rng.uniform(0.01, 1.0, size=(n, m, n))
        t /= t.sum(axis=2, keepdims=True)
        model = mdp.MdpModel(t, rng.uniform(-5, 5, size=n), float(rng.choice([0.5, 0.9, 0.99])))
        u1 = rng.uniform(-20, 20, size=n)
        u2 = rng.uniform(-20, 20, size=n)
        lhs = np.max(np.abs(mdp.bellman_update(model, u1) - mdp.bellman_update(model, u2)))
        assert lhs <= model.gamma * np.max(np.abs(u1 - u2)) + 1e-12

    # optimality against exhaustive enumeration with linear-solve evaluation
    for i in range(200):
        n = int(rng.integers(1, 5))
        m = int(rng.integers(1, 4))
        gamma = (0.5, 0.9, 0.99)[i % 3]
        t = rng.uniform(0.01, 1.0, size=(n, m, n))
        t /= t.sum(axis=2, keepdims=True)
        model = mdp.MdpModel(t, rng.uniform(-5, 5, size=n), gamma)
        u_vi, _ = mdp.value_iteration(model, epsilon)
        policy = tuple(mdp.extract_policy(model, u_vi))

        def linear_value(pi):
            t_pi = model.transitions[np.arange(n), list(pi)]
            return np.linalg.solve(np.eye(n) - gamma * t_pi, model.rewards)

        u_policy = linear_value(policy)
        for candidate in itertools.product(range(m), repeat=n):
            assert np.all(linear_value(candidate) <= u_policy + 1e-8)
        assert np.max(np.abs(u_vi - u_policy)) <= epsilon + 1e-12

    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"mdp acceptance took {elapsed:.2f}s"
    announce(f"mdp optimality vs enumeration on 200 models ({elapsed:.2f}s)")


# --- bezier ---------------------------------------------------------------------------


def test_bezier_identities_split_and_hit_test():
    rng = np.random.default_rng(105)

    reference = bezier.CubicBezier((0, 0), (0, 8), (8, 8), (8, 0))
    assert bezier.evaluate(reference, 0.5) == (4.0, 6.0)

    for _ in range(100):
        curve = bezier.CubicBezier(*[tuple(p) for p in rng.uniform(-100, 100, size=(4, 2))])
        assert bezier.evaluate(curve, 0.0) == curve.p0
        assert bezier.evaluate(curve, 1.0) == curve.p3

    # split reparameterization on a 101-point grid
    grid = np.linspace(0.0, 1.0, 101)
    for _ in range(20):
        curve = bezier.CubicBezier(*[tuple(p) for p in rng.uniform(-100, 100, size=(4, 2))])
        t = float(rng.uniform(0.15, 0.85))
        left, right = bezier.split(curve, t)
        for u in grid:
            u = float(u)
            lx, ly = bezier.evaluate(left, u)
            ex, ey = bezier.evaluate(curve, t * u)
            assert math.hypot(lx - ex, ly - ey) <= 1e-9
            rx, ry = bezier.evaluate(right, u)
            ex, ey = bezier.evaluate(curve, t + (1 - t) * u)
            assert math.hypot(rx - ex, ry - ey) <= 1e-9

    # hit-test distance against a dense brute-force oracle
    t_dense = np.linspace(0.0, 1.0, 10_000)
    mt = 1.0 - t_dense
    weights = np.stack([mt**3, 3 * mt**2 * t_dense, 3 * mt * t_dense**2, t_dense**3], axis=1)
    worst = 0.0
    for _ in range(100):
        curve = bezier.CubicBezier(*[tuple(p) for p in rng.uniform(-50, 50, size=(4, 2))])
        xy = weights @ np.array(curve.control_points)
        point = tuple(rng.uniform(-60, 60, size=2))
        oracle = float(np.min(np.hypot(xy[:, 0] - point[0], xy[:, 1] - point[1])))
        reported = bezier.hit_test(curve, point, threshold=5.0).distance
        worst = max(worst, abs(reported - oracle))
        assert abs(reported - oracle) <= 2 * bezier.FLATTEN_TOLERANCE
    announce(f"bezier identities, split oracle, hit-test (max dev {worst:.3f})")


# --- leveling ----------------------------------------------------------------------------


def test_leveling_partition_of_unity_and_tie_break():
    rng = np.random.default_rng(106)
    breakpoints = ((0.0, 1.0), (-3.0, 0.5, 2.0, 11.0), (10.0, 20.0, 30.0))
    values = rng.uniform(-20.0, 40.0, size=100_000)
    for i, value in enumerate(values):
        bp = breakpoints[i % len(breakpoints)]
        v = leveling.membership_vector(float(value), bp)
        assert abs(float(v.sum()) - 1.0) <= 1e-12
    # deterministic tie-break toward the lower level
    assert leveling.assign_level([0.5, 0.5]) == 0
    assert leveling.assign_level([0.2, 0.4, 0.4]) == 1
    midpoint = leveling.membership_vector(15.0, (10.0, 20.0, 30.0))
    assert leveling.assign_level(midpoint) == 0
    announce("leveling partition of unity on 100000 values + tie-break")


# --- ingestion ------------------------------------------------------------------------------


def test_ingestion_round_trip_reproduces_published_values():
    st = HistoryStore()
    register_all(st)
    datasets = (
        ("employment_manufacturing", 7),
        ("gambling_revenue", 8),
        ("employment_tax_seasonal", 16),
        ("gdp_gambling_mining", 18),
    )
    for name, expected_count in datasets:
        result = st.convert_spreadsheet(
            read_table(name), load_rules(DATA_DIR / f"{name}.rules")
        )
        assert result.written == expected_count
        assert result.warnings == []

    assert st.get_series(6, 3).values == EMPLOYMENT_MANUFACTURING
    assert st.get_series(6, 3).times == tuple(float(y) for y in range(2002, 2009))
    assert st.get_series(1, 4).values == GAMBLING_REVENUE
    assert st.get_series(10, 3).values == EMPLOYMENT_SEASONAL
    assert st.get_series(1, 2).values == TAX_REVENUE_SEASONAL
    assert st.get_series(1, 6).values == GAMBLING_GDP
    assert st.get_series(2, 6).values == MINING_GDP

    # reference row: gambling GDP, year 2000
    row = [o for o in st.observations()
           if o.index_id == 6 and o.industry_id == 1 and o.year == 2000]
    assert len(row) == 1
    assert row[0].value == 19225.4
    assert row[0].period == 0
    announce("ingestion round trip reproduces all published table values")


# --- interface parity --------------------------------------------------------------------------


def test_cli_http_parity_on_coefficient_digits(store_dir, capsys):
    app = create_app(HistoryStore.open(store_dir), store_dir / "templates")
    client = TestClient(app)
    pairs = (
        (("10:3", "1:2"), {"x": {"industry": 10, "index": 3}, "y": {"industry": 1, "index": 2}}),
        (("1:6", "2:6"), {"x": {"industry": 1, "index": 6}, "y": {"industry": 2, "index": 6}}),
    )
    for cli_pair, body in pairs:
        assert cli.main(["--store", str(store_dir), "correlate", *cli_pair]) == 0
        cli_text = capsys.readouterr().out
        http_text = client.post("/correlate", json=body).json()["report"]
        assert http_text == cli_text
        cli_lines = [ln for ln in cli_text.splitlines() if "Coefficient" in ln or "Correlation:" in ln]
        http_lines = [ln for ln in http_text.splitlines() if "Coefficient" in ln or "Correlation:" in ln]
        assert len(cli_lines) == 3
        assert cli_lines == http_lines
    announce("cli and http coefficient digits agree byte-for-byte")


# --- fit closed form vs exact rational oracle (supports the gradient criterion) -------------


def test_fit_matches_exact_rational_arithmetic():
    for series in (EMPLOYMENT_MANUFACTURING, GAMBLING_REVENUE):
        vals = [Fraction(v) for v in series]
        x, y = vals[:-1], vals[1:]
        m = len(x)
        sx, sy = sum(x), sum(y)
        sxx = sum(v * v for v in x)
        sxy = sum(u * v for u, v in zip(x, y))
        a = (m * sxy - sx * sy) / (m * sxx - sx * sx)
        b = (sy - a * sx) / m
        ssr = sum((v - (a * u + b)) ** 2 for u, v in zip(x, y))
        model = lineargaussian.fit_mle(series)
        assert model.a == pytest.approx(float(a), abs=1e-9)
        assert model.b == pytest.approx(float(b), abs=1e-9)
        assert model.sigma == pytest.approx(math.sqrt(float(ssr / m)), abs=1e-9)
    announce("mle closed form matches exact rational oracle")
