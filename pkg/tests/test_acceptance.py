"""Acceptance gate: one test per criterion, printing one PASS/FAIL line each.

Criterion 5 asserts the curvature-interval bounds reported in the literature
for the Cheeger-Gromoll metric (c2 = 0 and C2 >= 40 for n = 2; c3 < 0 and
C3 > 60 for n = 3).  The lower endpoints hold, but the upper bounds
contradict the curvature formulas that the finite-difference oracle
independently confirms (they force C2 = 4 and C3 = 3 + sqrt(11)), so the two
upper-bound assertions fail and are expected to fail; see the test output and
README for the computed endpoints.
"""

import math
import time

import numpy as np
from numpy.testing import assert_allclose

from cgm.scalars import Params, mu
from cgm import curvature as cv
from cgm import oracle as oc
from cgm import regions as rg
from cgm.verify import (
    _cell_point,
    nonneg_witness_points,
    oracle_matrix_cells,
    strata_parameter_points,
    sufficient_condition_samples,
    suite_identities,
    suite_symmetries,
)


def report(k: int, ok: bool, detail: str) -> bool:
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


def test_criterion_1_oracle_equivalence():
    start = time.time()
    worst = 0.0
    failures = []
    cells = oracle_matrix_cells()
    for params, n, c, t in cells:
        rep = oc.compare(params, oc.Chart.space_form(n, c), _cell_point(n, c, t))
        worst = max(worst, rep.max_rel_err())
        if not rep.passed:
            failures.append((params.p, params.q, n, c, t))
    elapsed = time.time() - start
    ok = not failures and elapsed < 60
    assert report(
        1, ok,
        f"{len(cells)} cells, sectional/ricci/scalar 1e-3 + connection 1e-4, "
        f"worst rel err {worst:.2e}, {elapsed:.1f}s (< 60s)",
    ), failures


def test_criterion_2_identity_suite():
    names_i = {"identity_omega_q_A_qB_C", "poly_C_definition"}
    checks = {r.name: r for r in suite_identities(seed=0)}
    ok = all(checks[n].ok for n in names_i)
    worst_i = max(checks[n].max_err for n in names_i)
    names_s = {"curvature_antisymmetry", "curvature_pair_symmetry", "first_bianchi"}
    sym = {r.name: r for r in suite_symmetries(seed=0)}
    ok &= all(sym[n].ok for n in names_s)
    worst_s = max(sym[n].max_err for n in names_s)
    assert report(
        2, ok,
        f"identities at 1e-12 over 1e4 samples (worst {worst_i:.2e}); "
        f"symmetries + Bianchi at 1e-9 over 1e3 samples (worst {worst_s:.2e})",
    )


def test_criterion_3_region_equivalence():
    band = 1e-7
    disagreements = []
    for n in (2, 3):
        for _, pts in strata_parameter_points().items():
            for idx, (p, q) in enumerate(pts):
                params = Params(p, q)
                cl = rg.vertical_positivity(params, n)
                bmin = rg.vertical_curvature_minimum(params, n, 10_000, seed=idx)
                if cl != (bmin > 0) and abs(bmin) > band:
                    disagreements.append((n, p, q, bmin))
    witness_bad = []
    from fractions import Fraction

    for c in (0, 1, Fraction(16, 3), 6):
        pts = nonneg_witness_points(float(c), seed=0)
        for n in (2, 3):
            for p, q in pts:
                params = Params(p, q)
                verdict = rg.nonneg_sectional(params, n, c)
                m = rg.sectional_witness_min(params, n, float(c), n_random=1000, seed=0)
                if verdict and m < -1e-9:
                    witness_bad.append(("sound", n, float(c), p, q, m))
                if not verdict and 2 * p + q >= 0 and m >= -1e-9:
                    witness_bad.append(("complete", n, float(c), p, q, m))
    ok = not disagreements and not witness_bad
    assert report(
        3, ok,
        f"vertical positivity vs brute force on 1500 points x n in {{2,3}} "
        f"({len(disagreements)} outside 1e-7 band); K>=0 witness on 500 points per "
        f"c in {{0,1,16/3,6}} ({len(witness_bad)} mismatches)",
    ), (disagreements[:3], witness_bad[:3])


def test_criterion_4_scalar_positivity_soundness():
    samples = sufficient_condition_samples(seed=0)
    assert len(samples) == 1000
    worst = math.inf
    labeled = True
    for params, n, c in samples:
        labeled &= rg.scalar_pos_sufficient(params, n, c) is not None
        worst = min(worst, rg.scalar_grid_min(params, n, c))
    ok = labeled and worst > 0
    assert report(
        4, ok,
        f"1000 labeled parameter samples, 1e4-point grids, min stilde = {worst:.4g} > 0",
    )


def test_criterion_5_h11_curvature_interval():
    start = time.time()
    lo2, hi2 = rg.scalar_positivity_interval(Params(1, 1), 2)
    lo3, hi3 = rg.scalar_positivity_interval(Params(1, 1), 3)
    elapsed = time.time() - start
    ok_lower = abs(lo2) <= 1e-6 and lo3 < 0 and elapsed < 30
    ok_quoted = hi2 >= 40 and hi3 > 60
    report(
        5, ok_lower and ok_quoted,
        f"n=2: ({lo2:.2e}, {hi2:.6f}) vs quoted (0, >=40); "
        f"n=3: ({lo3:.6f}, {hi3:.6f}) vs quoted (<0, >60); {elapsed:.1f}s (< 30s). "
        f"Computed uppers equal 4 and 3+sqrt(11); the reported 40/60 are incompatible "
        f"with the oracle-verified curvature formulas (see README)",
    )
    assert ok_lower, (lo2, lo3, elapsed)
    assert hi2 >= 40, f"C_2 = {hi2}: the reported bound C_2 >= 40 is unattainable"
    assert hi3 > 60, f"C_3 = {hi3}: the reported bound C_3 > 60 is unattainable"


def test_criterion_6_constructive_searches():
    start = time.time()
    problems = []
    for n in (2, 3, 5):
        for c in (-10, -1, 0, 1, 10):
            r1 = rg.find_params_thm1(n, c)
            if not r1.certificate["min_scalar_on_grid"] > 0:
                problems.append(("thm1", n, c))
            r3 = rg.find_params_thm3(n, c)
            if (
                not r3.certificate["min_scalar_on_grid"] > 0
                or float(r3.params.q) < 0
                or not all(g > 0 for g in r3.certificate["G_coefficients"])
            ):
                problems.append(("thm3", n, c))
    for a, b in ((0, 0), (-12, 8)):
        c_used, res = rg.find_params_general(3, a, b)
        if not res.certificate["min_scalar_on_grid"] > 0:
            problems.append(("general", a, b))
    elapsed = time.time() - start
    ok = not problems and elapsed < 120
    assert report(
        6, ok,
        f"both routes certified on (n,c) in {{2,3,5}}x{{-10,-1,0,1,10}}, q>=0 and "
        f"positive G coefficients on the second route, curvature-bound route at "
        f"(a,b) in {{(0,0),(-12,8)}}; {elapsed:.1f}s (< 120s)",
    ), problems


def test_criterion_7_limit_behaviour():
    base0 = cv.BaseCurvature.space_form(0.0)
    e = cv.FiberPoint.radial(1 - 1e-6, 3)
    k = cv.sectional(Params(2, -1), e, "vv", np.eye(3)[1], np.eye(3)[2], base0)
    ok = abs(k - 4.0) / 4.0 <= 1e-4
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 5))
        p, q, c = rng.uniform(-3, 4), rng.uniform(-2, 3), rng.uniform(-3, 3)
        params, base = Params(p, q), cv.BaseCurvature.space_form(c)
        e0 = cv.FiberPoint.zero(n)
        basis = np.eye(n)
        kvv = cv.sectional(params, e0, "vv", basis[0], basis[1], base)
        khv = cv.sectional(params, e0, "hv", basis[0], basis[1], base)
        s = cv.scalar(params, n, e0, base)
        want_s = n * (n - 1) * c + n * (n - 1) * (2 * p + q)
        worst = max(
            worst,
            abs(kvv - (2 * p + q)) / max(abs(2 * p + q), 1.0),
            abs(khv),
            abs(s - want_s) / max(abs(want_s), 1.0),
        )
    ok &= worst <= 1e-12
    assert report(
        7, ok,
        f"boundary vertical curvature = mu(2) = 4 within 1e-4 (got {k:.6f}); "
        f"zero-section identities within 1e-12 (worst {worst:.2e})",
    )


def test_criterion_8_alpha_discrepancy_adjudication():
    n, params = 3, Params(1, 1)
    chart = oc.Chart.space_form(n, 1.0)
    pt = oc.TMPoint(np.array([0.12, -0.07, 0.05]), np.zeros(3))
    h_field = oc.tm_metric_field(params, chart)
    z = pt.coords()
    H = h_field(z)
    R = oc.fd_riemann(h_field, z)
    rho = oc._ricci_matrix(R, H, np.linalg.inv(H))
    g = chart.metric(pt.x)
    Y = np.zeros(3)
    Y[0] = 1.0 / math.sqrt(float(g[0, 0]))
    V = np.concatenate([np.zeros(3), Y])
    val = float(np.einsum("ca,c,a->", rho, V, V) / (V @ H @ V))
    want, reject = (n - 1) * 3, (n - 2) * 3
    ok = abs(val - want) / want <= 1e-4 and abs(val - reject) / reject > 0.5
    assert report(
        8, ok,
        f"numeric vertical Ricci at the zero section = {val:.6f}; matches "
        f"(n-1)(2p+q) = {want} within 1e-4 and excludes (n-2)(2p+q) = {reject}",
    )
