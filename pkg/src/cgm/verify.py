"""Invariant suites behind the `verify` command.

Each suite returns a list of named checks with the worst observed error, so
the CLI can emit one JSON line per check and exit nonzero when anything
fails.  All sampling is seeded and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np

from . import curvature as cv
from . import oracle as oc
from . import regions as rg
from .scalars import (
    Params,
    coefficients,
    f_sup,
    f_value,
    hyperbola_nu,
    mu,
    multipliers,
    omega_q,
    phi,
    poly_C,
    poly_G,
    poly_P,
    poly_Q,
    scalar_curvature_spaceform,
)


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail"
    max_err: Optional[float] = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        out = {"name": self.name, "status": self.status, "max_err": self.max_err}
        if self.detail:
            out["detail"] = self.detail
        return out


def _check(name: str, err: float, tol: float, detail: str = "") -> CheckResult:
    status = "pass" if err <= tol else "fail"
    return CheckResult(name, status, float(err), detail or f"tol={tol:g}")


def _check_bool(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, "pass" if ok else "fail", None, detail)


def _sample_params(rng, count, p_range=(-6, 6), q_range=(-4, 4)):
    ps = rng.uniform(*p_range, count)
    qs = rng.uniform(*q_range, count)
    return ps, qs


# ---------------------------------------------------------------------------
# identities


def suite_identities(seed: int = 0, tol_scale: float = 1.0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []

    # omega_q (A - qB) = C over 1e4 domain-valid samples
    worst = 0.0
    ps, qs = _sample_params(rng, 10_000)
    ts = rng.uniform(0, 3, 10_000)
    ns = rng.integers(2, 7, 10_000)
    for p, q, t, n in zip(ps, qs, ts, ns):
        if q * t <= -0.9:
            t = min(t, -0.9 / q)
        cs = coefficients(Params(p, q), t, int(n))
        wq = omega_q(t, Params(p, q))
        lhs = wq * (cs.A - q * cs.B)
        scale = max(abs(wq * cs.A), abs(wq * q * cs.B), abs(cs.C), 1e-12)
        worst = max(worst, abs(lhs - cs.C) / scale)
    out.append(_check("identity_omega_q_A_qB_C", worst, 1e-12 * tol_scale))

    # C(t) defining combination, against the expanded coefficients
    worst = 0.0
    for p, q, t, n in zip(ps[:2000], qs[:2000], ts[:2000], ns[:2000]):
        if q * t <= -0.9:
            t = min(t, -0.9 / q)
        params = Params(p, q)
        direct = 2 * poly_P(params).evaluate(t) + (int(n) - 2) * (1 + q * t) * poly_Q(params).evaluate(t)
        via = poly_C(params, int(n)).evaluate(t)
        worst = max(worst, abs(direct - via) / max(abs(direct), 1.0))
    out.append(_check("poly_C_definition", worst, 1e-12 * tol_scale))

    # coefficientwise C == 2P at n = 2, exactly
    exact = True
    for p, q in zip(ps[:200], qs[:200]):
        c2 = poly_C(Params(p, q), 2).coefficients
        twop = tuple(2 * c for c in poly_P(Params(p, q)).coefficients) + (0.0,)
        exact &= all(a == b for a, b in zip(c2, twop))
    out.append(_check_bool("poly_C_n2_equals_2P", exact))

    # Sasaki degeneration
    cs = coefficients(Params(0, 0), 1.7, 4)
    sas = max(abs(v) for v in (cs.A, cs.B, cs.C, cs.alpha, cs.beta))
    sas = max(
        sas,
        max(abs(float(c)) for c in poly_P(Params(0, 0)).coefficients),
        max(abs(float(c)) for c in poly_Q(Params(0, 0)).coefficients),
        max(abs(float(c)) for c in poly_C(Params(0, 0), 5).coefficients),
    )
    out.append(_check("sasaki_degeneration", sas, 0.0))

    # mu strictly increasing on the 0.1 grid
    grid = [1 + k / 10 for k in range(91)]
    mono = all(float(mu(a)) < float(mu(b)) for a, b in zip(grid, grid[1:]))
    out.append(_check_bool("mu_strictly_increasing", mono))

    # phi from poly_C vs the coefficient form in the scalar curvature
    worst = 0.0
    for p, q, t, n in zip(ps[:2000], qs[:2000], ts[:2000], ns[:2000]):
        if q * t <= -0.9:
            t = min(t, -0.9 / q)
        params = Params(p, q)
        cs = coefficients(params, t, int(n))
        direct = (1 + t) ** p * (2 * cs.alpha - (int(n) - 2) * cs.B)
        via = phi(params, int(n), t)
        worst = max(worst, abs(direct - via) / max(abs(direct), 1.0))
    out.append(_check("phi_consistency", worst, 1e-12 * tol_scale))

    # f_sup against a grid maximum
    worst_low, ok_upper = 0.0, True
    for _ in range(1000):
        p = rng.uniform(1, 6)
        q = rng.uniform(-2, 3)
        params = Params(p, q)
        res = f_sup(params)
        cap = 1e3 if q >= 0 else -1 / q * (1 - 1e-9)
        grid_t = np.concatenate([[0.0], np.geomspace(1e-9, cap, 9_999)])
        gmax = float(f_value(grid_t, p).max())
        ok_upper &= gmax <= res.sup + 1e-12
        worst_low = max(worst_low, res.sup - gmax)
    out.append(_check("f_sup_grid_lower", worst_low, 1e-3 * tol_scale))
    out.append(_check_bool("f_sup_grid_upper", ok_upper))

    # G coefficient expansion vs its defining three-term expression
    worst = 0.0
    for p, q, n, c in [
        (1, 0, 3, -1),
        (2, 1, 3, 1),
        (3, 2, 4, -2),
        (2, Fraction(1, 2), 2, Fraction(16, 3)),
        (4, 3, 5, -10),
    ]:
        g = poly_G(Params(p, q), n, c)
        for t in rng.uniform(0, 5, 20):
            qf, cf = float(q), float(c)
            direct = (
                n * cf * (1 + t) ** p * (1 + qf * t) ** 2
                - 0.5 * cf * cf * t * (1 + qf * t) ** 2
                + (1 + t) ** (2 * p - 2) * poly_C(Params(p, q), n).evaluate(t)
            )
            worst = max(worst, abs(g.evaluate(t) - direct) / max(abs(direct), 1.0))
    out.append(_check("poly_G_three_term", worst, 1e-10 * tol_scale))

    # zero-section scalar curvature identity
    worst = 0.0
    for p, q in zip(ps[:200], qs[:200]):
        n = int(rng.integers(2, 6))
        c = float(rng.uniform(-5, 5))
        got = scalar_curvature_spaceform(Params(p, q), n, c, 0.0)
        want = n * (n - 1) * (c + 2 * p + q)
        worst = max(worst, abs(got - want) / max(abs(want), 1.0))
    out.append(_check("scalar_zero_section", worst, 1e-12 * tol_scale))
    return out


# ---------------------------------------------------------------------------
# curvature symmetries


def _random_point(rng, n, q) -> cv.FiberPoint:
    direction = rng.standard_normal(n)
    direction /= np.linalg.norm(direction)
    cap = 3.0 if q >= 0 else -1 / q * 0.9
    t = rng.uniform(0, cap)
    return cv.FiberPoint(math.sqrt(t) * direction)


def suite_symmetries(seed: int = 0, tol_scale: float = 1.0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []

    worst_anti = worst_pair = worst_bianchi = 0.0
    for _ in range(1000):
        n = int(rng.integers(2, 4))
        p = rng.uniform(-3, 4)
        q = rng.uniform(-2, 3)
        c = rng.uniform(-2, 2)
        params = Params(p, q)
        base = cv.BaseCurvature.space_form(c)
        e = _random_point(rng, n, q)
        A, B, C, D = (cv.LiftVector(rng.standard_normal(n), rng.standard_normal(n)) for _ in range(4))
        RAB = cv.riemann_full(params, e, A, B, C, base)
        RBA = cv.riemann_full(params, e, B, A, C, base)
        RCD = cv.riemann_full(params, e, C, D, A, base)
        hRABCD = cv.metric_h(params, e, RAB, D)
        scale = max(abs(hRABCD), 1.0)
        worst_anti = max(worst_anti, abs(hRABCD + cv.metric_h(params, e, RBA, D)) / scale)
        worst_pair = max(worst_pair, abs(hRABCD - cv.metric_h(params, e, RCD, B)) / scale)
        bi = (
            RAB
            + cv.riemann_full(params, e, B, C, A, base)
            + cv.riemann_full(params, e, C, A, B, base)
        )
        bnorm = float(np.linalg.norm(bi.h) + np.linalg.norm(bi.v))
        rnorm = float(np.linalg.norm(RAB.h) + np.linalg.norm(RAB.v))
        worst_bianchi = max(worst_bianchi, bnorm / max(rnorm, 1.0))
    out.append(_check("curvature_antisymmetry", worst_anti, 1e-9 * tol_scale))
    out.append(_check("curvature_pair_symmetry", worst_pair, 1e-9 * tol_scale))
    out.append(_check("first_bianchi", worst_bianchi, 1e-9 * tol_scale))

    # vertical sectional formula vs assembled curvature / metric quotient
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 5))
        params = Params(rng.uniform(-3, 4), rng.uniform(-2, 3))
        base = cv.BaseCurvature.space_form(rng.uniform(-2, 2))
        e = _random_point(rng, n, float(params.q))
        basis = np.eye(n)
        X, Y = basis[0], basis[1]
        u = (X @ e.e) ** 2 + (Y @ e.e) ** 2
        if 1 + float(params.q) * u <= 1e-3:
            continue
        direct = cv.sectional(params, e, "vv", X, Y, base)
        via = cv.sectional_plane(params, e, cv.LiftVector.vertical(X), cv.LiftVector.vertical(Y), base)
        worst = max(worst, abs(direct - via) / max(abs(direct), 1.0))
    out.append(_check("metric_compatibility_vv", worst, 1e-10 * tol_scale))

    # flat fibres characterize the Sasaki point
    base0 = cv.BaseCurvature.space_form(0.0)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(2, 4))
        e = _random_point(rng, n, 0.0)
        basis = np.eye(n)
        worst = max(worst, abs(cv.sectional(Params(0, 0), e, "vv", basis[0], basis[1], base0)))
    out.append(_check("sasaki_flat_fibres", worst, 1e-13 * tol_scale))
    nonflat = True
    for _ in range(20):
        p, q = rng.uniform(-3, 4), rng.uniform(-2, 3)
        if abs(p) + abs(q) < 1e-3:
            continue
        vals = [
            abs(cv.sectional(Params(p, q), _random_point(rng, 3, q), "vv", np.eye(3)[0], np.eye(3)[1], base0))
            for _ in range(50)
        ]
        nonflat &= max(vals) > 1e-12
    out.append(_check_bool("non_sasaki_curved_fibres", nonflat))

    # bounded vertical curvature at the boundary for p + q = 1
    worst = 0.0
    for p in (1.5, 2.0, 3.0):
        params = Params(p, 1 - p)
        tb = -1.0 / float(params.q)
        e = cv.FiberPoint.radial(tb - 1e-6, 3)
        k = cv.sectional(params, e, "vv", np.eye(3)[1], np.eye(3)[2], cv.BaseCurvature.space_form(0.0))
        worst = max(worst, abs(k - float(mu(p))) / float(mu(p)))
    out.append(_check("boundary_vertical_limit", worst, 1e-4 * tol_scale))

    # Ricci = sum of sectional curvatures over an orthonormal completion
    worst = 0.0
    for _ in range(60):
        n = int(rng.integers(2, 4))
        params = Params(rng.uniform(-2, 3), rng.uniform(-1.5, 2))
        base = cv.BaseCurvature.space_form(rng.uniform(-2, 2))
        e = _random_point(rng, n, float(params.q))
        frame = cv.tangent_frame(params, e)
        V = frame[n]  # first vertical frame vector
        total = sum(cv.sectional_plane(params, e, V, F, base) for F in frame if F is not V)
        rho = cv.ricci(params, n, e, "vv", V.v, V.v, base) / cv.metric_h(params, e, V, V)
        worst = max(worst, abs(total - rho) / max(abs(rho), 1.0))
    out.append(_check("ricci_sectional_trace", worst, 1e-8 * tol_scale))

    # scalar = full Ricci trace over the 2n-frame
    worst = 0.0
    for _ in range(60):
        n = int(rng.integers(2, 4))
        params = Params(rng.uniform(-2, 3), rng.uniform(-1.5, 2))
        base = cv.BaseCurvature.space_form(rng.uniform(-2, 2))
        e = _random_point(rng, n, float(params.q))
        trace = sum(
            cv.ricci(params, n, e, "hh", F.h, F.h, base)
            if F.h.any()
            else cv.ricci(params, n, e, "vv", F.v, F.v, base)
            for F in cv.tangent_frame(params, e)
        )
        s = cv.scalar(params, n, e, base)
        worst = max(worst, abs(trace - s) / max(abs(s), 1.0))
    out.append(_check("scalar_ricci_trace", worst, 1e-10 * tol_scale))

    # zero-section identities
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 5))
        p, q, c = rng.uniform(-3, 4), rng.uniform(-2, 3), rng.uniform(-3, 3)
        params = Params(p, q)
        base = cv.BaseCurvature.space_form(c)
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
    out.append(_check("zero_section_identities", worst, 1e-12 * tol_scale))
    return out


# ---------------------------------------------------------------------------
# regions


def strata_parameter_points() -> dict:
    """Deterministic 500-point strata of the (p, q) plane: q<0, q=0, q>0."""
    neg, zero, pos = [], [], []
    for i in range(25):
        p = -9.7 + 13.57 * i / 24
        for j in range(20):
            neg.append((p, -3.91 + 3.72 * j / 19))
            pos.append((p, 0.11 + 3.7 * j / 19))
    for i in range(500):
        zero.append((-10 + (i + 0.5) * 14 / 500, 0.0))
    return {"q<0": neg, "q=0": zero, "q>0": pos}


def suite_regions(seed: int = 0, tol_scale: float = 1.0) -> list[CheckResult]:
    out = []

    # classifier vs brute-force oracle, 1e-7 boundary band
    band = 1e-7
    bad = []
    strata = strata_parameter_points()
    for n in (2, 3):
        for name, pts in strata.items():
            for idx, (p, q) in enumerate(pts):
                params = Params(p, q)
                cl = rg.vertical_positivity(params, n)
                bmin = rg.vertical_curvature_minimum(params, n, 10_000, seed + idx)
                if cl != (bmin > 0) and abs(bmin) > band:
                    bad.append((n, name, round(p, 3), round(q, 3), bmin, cl))
    out.append(
        _check_bool(
            "classifier_vs_bruteforce",
            not bad,
            f"disagreements outside the band: {bad[:4]}" if bad else "3000 points agree",
        )
    )

    # Delta monotonicity in c, and subset relations
    mono = subset = closure = True
    probes = [(1e-6, 0.0), (-1e-6, 0.0), (0.0, 1e-6), (0.0, -1e-6), (1e-6, 1e-6), (-1e-6, 1e-6)]
    for p in np.linspace(-9, 4, 100):
        for q in np.linspace(-4, 4, 100):
            params = Params(p, q)
            v1 = rg.classify(params, 3, 6)
            v2 = rg.classify(params, 3, Fraction(16, 3))
            v3 = rg.classify(params, 3, 1)
            v0 = rg.classify(params, 3, 0)
            mono &= (not v1.in_delta or v2.in_delta) and (not v2.in_delta or v3.in_delta)
            mono &= not v3.in_delta or v0.in_delta
            subset &= not v0.in_gamma or v0.in_gamma_prime
            for v in (v0, v1, v2, v3):
                subset &= (not v.in_delta) or v.in_delta_prime
            if v3.in_delta and not v3.in_gamma:
                closure &= any(
                    rg.classify(Params(p + dp, q + dq), 3).in_gamma for dp, dq in probes
                )
    out.append(_check_bool("delta_monotone_in_c", mono))
    out.append(_check_bool("subset_relations", subset))
    out.append(_check_bool("delta_in_gamma_closure", closure))

    # scalar-positivity sufficiency is sound on a labeled sample
    labeled = sufficient_condition_samples(seed)
    worst_min = math.inf
    label_ok = True
    for params, n, c in labeled:
        lbl = rg.scalar_pos_sufficient(params, n, c)
        label_ok &= lbl is not None
        worst_min = min(worst_min, rg.scalar_grid_min(params, n, c))
    out.append(
        _check_bool(
            "scalar_sufficiency_sound",
            label_ok and worst_min > 0,
            f"{len(labeled)} labeled samples, min stilde {worst_min:.3g}",
        )
    )

    # structured witness agrees with the K >= 0 classifier, both directions
    bad = []
    for c in (0, 1, Fraction(16, 3), 6):
        pts = nonneg_witness_points(float(c), seed)
        for n in (2, 3):
            for p, q in pts:
                params = Params(p, q)
                verdict = rg.nonneg_sectional(params, n, c)
                m = rg.sectional_witness_min(params, n, float(c), n_random=1000, seed=seed)
                if verdict and m < -1e-9 * tol_scale:
                    bad.append(("sound", n, float(c), round(p, 3), round(q, 3), m))
                if not verdict and 2 * p + q >= 0 and m >= -1e-9:
                    bad.append(("complete", n, float(c), round(p, 3), round(q, 3), m))
    out.append(
        _check_bool(
            "nonneg_sectional_witness",
            not bad,
            f"witness mismatches: {bad[:4]}" if bad else "both directions verified",
        )
    )

    # constructive searches, the full (n, c) matrix
    ok = True
    detail = []
    for n in (2, 3, 5):
        for c in (-10, -1, 0, 1, 10):
            r1 = rg.find_params_thm1(n, c)
            ok &= r1.certificate["min_scalar_on_grid"] > 0
            r3 = rg.find_params_thm3(n, c)
            ok &= r3.certificate["min_scalar_on_grid"] > 0
            ok &= float(r3.params.q) >= 0
            ok &= all(g > 0 for g in r3.certificate["G_coefficients"])
            detail.append(
                f"n={n},c={c}:({float(r1.params.p):g},{float(r1.params.q):g})"
                f"/({float(r3.params.p):g},{float(r3.params.q):g})"
            )
    for a, b in ((0, 0), (-12, 8)):
        c_used, res = rg.find_params_general(3, a, b)
        ok &= res.certificate["min_scalar_on_grid"] > 0 and c_used < 0
    out.append(_check_bool("constructive_searches", ok, "; ".join(detail)))
    return out


def sufficient_condition_samples(seed: int = 0, per_family: int = 112) -> list:
    """Deterministic (params, n, c) samples inside each sufficiency case."""
    rng = np.random.default_rng(seed + 17)
    samples = []

    def centered(center, radius):
        # strictly inside the open bound, and away from c = 0
        for _ in range(50):
            c = center + radius * rng.uniform(-0.95, 0.95)
            if abs(c) > 1e-3:
                return c
        return center + 0.5 * radius

    for _ in range(per_family):
        # dimension 2 cases (a)-(e)
        samples.append((Params(1.0, rng.uniform(0.01, 5)), 2, rng.uniform(0.05, 3.95)))
        p = rng.uniform(1, 1.99)
        samples.append((Params(p, 0.0), 2, rng.uniform(0.05, 4 * float(mu(p)) - 0.05)))
        p = rng.uniform(2, 6)
        m = multipliers(Params(p, 0.0), 2)
        samples.append((Params(p, 0.0), 2, centered(2 * float(mu(p)), 2 * m.m2 * float(mu(p)))))
        p = rng.uniform(1.05, 4)
        q = float(hyperbola_nu(p)) * rng.uniform(0.02, 0.98)
        m = multipliers(Params(p, q), 2)
        samples.append((Params(p, q), 2, centered(2 * float(mu(p)), 2 * m.m4 * float(mu(p)))))
        p = rng.uniform(1.05, 4)
        nu = float(hyperbola_nu(p))
        q = 1 - p + (nu - (1 - p)) * rng.uniform(0.02, 0.98)
        m = multipliers(Params(p, q), 2)
        samples.append((Params(p, q), 2, centered(2 * float(mu(p)), 2 * m.m5 * float(mu(p)))))
        # dimension >= 3 cases (a)-(d)
        n = 3
        m = multipliers(Params(1.0, 1.0), n)
        samples.append((Params(1.0, rng.uniform(0.01, 5)), n, centered(n, m.m1 * n)))
        p = rng.uniform(1, 1.99)
        m = multipliers(Params(p, 0.0), n)
        samples.append((Params(p, 0.0), n, centered(n * float(mu(p)), m.m1 * n * float(mu(p)))))
        m = multipliers(Params(2.0, 0.0), n)
        samples.append((Params(2.0, 0.0), n, centered(4 * n, 4 * m.m2 * n)))
        p = rng.uniform(1.05, 4)
        m = multipliers(Params(p, 1 - p), n)
        samples.append((Params(p, 1 - p), n, centered(n * float(mu(p)), m.m3 * n * float(mu(p)))))
    return samples[:1000]


def nonneg_witness_points(c: float, seed: int = 0, count: int = 500) -> list:
    """Mixture of random and boundary-targeted (p, q) points for the K >= 0 test."""
    rng = np.random.default_rng(seed + int(c * 977) + 31)
    targeted = count // 3
    pts = [(rng.uniform(-9, 4), rng.uniform(-4, 4)) for _ in range(count - targeted)]
    if c == 0:
        for _ in range(targeted):
            pts.append((rng.uniform(-2, 1), rng.uniform(0.01, 4)))
        return pts
    # members and near-members of the c > 0 regions
    p_min = 1.0
    while float(mu(p_min)) < 3 * c / 4 and p_min < 60:
        p_min += 1e-3
    for _ in range(targeted - 2 * (targeted // 4)):
        p = p_min + rng.uniform(0.05, 3)
        pts.append((p, 1 - p))
        pts.append((p, 0.0))
    for _ in range(targeted // 4):
        p = max(1.0, p_min - rng.uniform(0.05, 0.5))
        pts.append((p, 1 - p))  # mu cut fails just below the threshold
        pts.append((1.0, rng.uniform(0.1, 3)))
    return pts[:count]


# ---------------------------------------------------------------------------
# oracle


ORACLE_PARAM_POINTS = [(0, 0), (1, 1), (2, 0), (1, -0.5), (2, -1), (-1, 3)]


def oracle_matrix_cells() -> list:
    cells = []
    for n in (2, 3):
        for c in (-1.0, 0.0, 1.0):
            for p, q in ORACLE_PARAM_POINTS:
                tmax = 1.0 if q >= 0 else -1.0 / q
                for t in (0.0, 0.25, 0.81 * tmax):
                    cells.append((Params(p, q), n, c, t))
    return cells


def _cell_point(n: int, c: float, t: float) -> oc.TMPoint:
    chart = oc.Chart.space_form(n, c)
    x = np.array([0.12, -0.07, 0.05][:n])
    g = chart.metric(x)
    d = np.array([0.3, 1.0, -0.2][:n])
    d = d / math.sqrt(float(d @ g @ d))
    return oc.TMPoint(x, math.sqrt(t) * d)


def suite_oracle(seed: int = 0, tol_scale: float = 1.0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []

    # chart self-certification (samples stay inside the safe coordinate radius)
    worst = 0.0
    for n in (2, 3):
        for c in (-2.0, -1.0, 1.0, 2.0):
            chart = oc.Chart.space_form(n, c)
            for _ in range(50):
                x = rng.uniform(-0.4, 0.4, n)
                K, _ = oc.chart_base_check(chart, x)
                worst = max(worst, abs(K - c) / abs(c))
    out.append(_check("chart_self_certification", worst, 1e-5 * tol_scale))

    # cross-validation matrix
    tols = {k: v * tol_scale for k, v in oc.DEFAULT_TOLERANCES.items()}
    worst = 0.0
    failures = []
    for params, n, c, t in oracle_matrix_cells():
        rep = oc.compare(params, oc.Chart.space_form(n, c), _cell_point(n, c, t), tolerances=tols)
        worst = max(worst, rep.max_rel_err())
        if not rep.passed:
            failures.append((params, n, c, t, [r.name for r in rep.failures()]))
    out.append(
        CheckResult(
            "oracle_cross_validation",
            "pass" if not failures else "fail",
            worst,
            f"{len(oracle_matrix_cells())} cells" if not failures else f"failures: {failures[:3]}",
        )
    )

    # vertical Ricci at the zero section: (n-1)(2p+q), not (n-2)(2p+q)
    n, params = 3, Params(1, 1)
    chart = oc.Chart.space_form(n, 1.0)
    pt = oc.TMPoint(np.array([0.12, -0.07, 0.05]), np.zeros(3))
    z = pt.coords()
    h_field = oc.tm_metric_field(params, chart)
    H = h_field(z)
    R = oc.fd_riemann(h_field, z)
    rho = oc._ricci_matrix(R, H, np.linalg.inv(H))
    g = chart.metric(pt.x)
    Y = np.zeros(3)
    Y[0] = 1.0 / math.sqrt(float(g[0, 0]))
    V = np.concatenate([np.zeros(3), Y])
    val = float(np.einsum("ca,c,a->", rho, V, V) / (V @ H @ V))
    want = (n - 1) * 3
    reject = (n - 2) * 3
    out.append(
        _check(
            "alpha_zero_section_adjudication",
            abs(val - want) / want,
            1e-4 * tol_scale,
            f"numeric {val:.6f} matches (n-1)(2p+q)={want}, excludes (n-2)(2p+q)={reject}",
        )
    )

    # step halving improves the sectional comparison
    params = Params(1, 1)
    chart = oc.Chart.space_form(3, 1.0)
    pt = _cell_point(3, 1.0, 0.49)
    base = cv.BaseCurvature.space_form(1.0)
    g = chart.metric(pt.x)
    frame = oc.base_frame(g, pt.u)
    e_frame = cv.FiberPoint(np.array([float(pt.u @ g @ frame[i]) for i in range(3)]))
    closed_val = cv.sectional(params, e_frame, "hh", np.eye(3)[0], np.eye(3)[1], base)
    h_field = oc.tm_metric_field(params, chart)
    H = h_field(pt.coords())
    gam0 = oc.fd_christoffel(chart.metric, pt.x)
    hor = lambda X: np.concatenate([X, -np.einsum("kij,i,j->k", gam0, X, pt.u)])
    A = hor(np.einsum("i,ij->j", np.eye(3)[0], frame))
    B = hor(np.einsum("i,ij->j", np.eye(3)[1], frame))
    errs = [
        abs(oc.numeric_sectional(oc.fd_riemann(h_field, pt.coords(), step), H, A, B) - closed_val)
        for step in (4e-3, 2e-3)
    ]
    ratio = errs[0] / max(errs[1], 1e-300)
    out.append(
        CheckResult(
            "fd_step_halving",
            "pass" if ratio >= 2.0 else "fail",
            ratio,
            f"errors {errs[0]:.3e} -> {errs[1]:.3e}",
        )
    )
    return out


# ---------------------------------------------------------------------------
# scalar positivity interval


def suite_interval(seed: int = 0, tol_scale: float = 1.0) -> list[CheckResult]:
    out = []
    lo2, hi2 = rg.scalar_positivity_interval(Params(1, 1), 2)
    lo3, hi3 = rg.scalar_positivity_interval(Params(1, 1), 3)
    out.append(_check("interval_h11_n2_lower", abs(lo2), 1e-6 * tol_scale, f"c_lo={lo2:.2e}"))
    out.append(
        _check_bool(
            "interval_h11_n2_upper_reported",
            hi2 >= 40,
            f"c_hi={hi2:.6f}; the reported bound C_2 >= 40 is incompatible with the "
            f"oracle-verified curvature formulas, which force C_2 = 4",
        )
    )
    out.append(_check_bool("interval_h11_n3_lower", lo3 < 0, f"c_lo={lo3:.6f}"))
    out.append(
        _check_bool(
            "interval_h11_n3_upper_reported",
            hi3 > 60,
            f"c_hi={hi3:.6f}; the reported bound C_3 > 60 is incompatible with the "
            f"oracle-verified curvature formulas, which force C_3 = 3 + sqrt(11)",
        )
    )
    lo10, hi10 = rg.scalar_positivity_interval(Params(1, 0), 2)
    out.append(
        _check_bool(
            "interval_h10_n2_contains_0_4",
            lo10 <= 1e-5 and hi10 >= 4 - 1e-5,
            f"interval ({lo10:.6f}, {hi10:.6f})",
        )
    )
    return out


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "identities": suite_identities,
    "symmetries": suite_symmetries,
    "regions": suite_regions,
    "oracle": suite_oracle,
    "interval": suite_interval,
}


def run_suites(names: Iterable[str], seed: int = 0, tol_scale: float = 1.0) -> list[CheckResult]:
    results = []
    for name in names:
        results.extend(SUITES[name](seed=seed, tol_scale=tol_scale))
    return results
