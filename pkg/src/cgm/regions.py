"""Parameter-plane region classifiers and constructive positivity searches.

Region membership follows the defining inequalities verbatim: strict versus
non-strict comparisons are preserved, comparisons are performed in exact
rational arithmetic whenever the inputs are rational (floats are compared
exactly as the rationals they represent, never with an epsilon), and the
boundary curves mu, lambda, nu are evaluated exactly where possible.

The constructive searches return a :class:`SearchResult` whose certificate
records the grid minimum of the scalar curvature (always positive) and, for
the nonnegative-q route, the all-positive coefficient list of the sign
polynomial G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .scalars import (
    Params,
    analysis_scalars,
    hyperbola_lambda,
    hyperbola_nu,
    mu,
    multipliers,
    poly_C,
    poly_G,
    poly_P,
    poly_Q,
)

Number = Union[int, float, Fraction]


def _x(v: Number) -> Fraction:
    """Exact rational image of the input (floats convert exactly)."""
    return v if isinstance(v, Fraction) else Fraction(v)


# ---------------------------------------------------------------------------
# memberships


def _gamma_plus_component(p, q) -> Optional[str]:
    if Fraction(-8) < p <= -2 and q > hyperbola_lambda(p):
        return "gamma_plus_1"
    if -2 <= p <= 0 and 2 * p + q > 0:
        return "gamma_plus_2"
    if 0 <= p <= 1 and q > 0:
        return "gamma_plus_3"
    return None


def _in_gamma_minus(p, q) -> bool:
    return p + q == 1 and q < 0


def _in_gamma_prime_minus(p, q) -> bool:
    return p + q >= 1 and q < 0


def _in_gamma_zero(p, q) -> bool:
    return q == 0 and 0 < p <= 2


def _in_gamma_prime_zero(p, q) -> bool:
    return q == 0 and p > 0


def _in_omega(p, q) -> bool:
    kappa1 = (p - 2) * (p - 2) / Fraction(4)
    if (p > 2 or p < -2) and q > kappa1:
        return True
    if -2 <= p <= 0 and 2 * p + q > 0:
        return True
    if 0 <= p <= 2 and q > 0:
        return True
    return False


def _mu_cut(p, c) -> bool:
    """mu(p) >= 3c/4, evaluated exactly for integer p."""
    return mu(p) >= 3 * c / 4


def _in_delta(p, q, c, prime: bool) -> bool:
    if c == 0:
        if prime:
            if q == 0 and p >= 0:
                return True
            if p + q >= 1 and q < 0:
                return True
        else:
            if q == 0 and 0 <= p <= 2:
                return True
            if p + q == 1 and q < 0:
                return True
        # Delta_plus: closures of the q>0 components except the third
        if Fraction(-8) < p <= -2 and q >= hyperbola_lambda(p):
            return True
        if -2 <= p <= 0 and 2 * p + q >= 0:
            return True
        if 0 <= p <= 1 and q > 0:
            return True
        return False
    # c > 0
    if q < 0 and (p + q >= 1 if prime else p + q == 1) and p >= 1 and _mu_cut(p, c):
        return True
    if q == 0 and (p >= 1 if prime else 1 <= p <= 2) and _mu_cut(p, c):
        return True
    if c <= Fraction(4, 3) and p == 1 and q > 0:
        return True
    return False


@dataclass(frozen=True)
class RegionVerdict:
    """Membership record across the positivity regions of the parameter plane."""

    in_gamma: bool
    in_gamma_prime: bool
    in_omega: bool
    in_delta: Optional[bool]
    in_delta_prime: Optional[bool]
    gamma_component: str
    scalar_condition: Optional[str]
    delta_reason: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "in_gamma": self.in_gamma,
            "in_gamma_prime": self.in_gamma_prime,
            "in_omega": self.in_omega,
            "in_delta": self.in_delta,
            "in_delta_prime": self.in_delta_prime,
            "gamma_component": self.gamma_component,
            "scalar_condition": self.scalar_condition,
            "delta_reason": self.delta_reason,
        }


def classify(params: Params, n: int, c: Optional[Number] = None) -> RegionVerdict:
    """Evaluate every region membership for (p, q), dimension n, curvature c."""
    if n < 2:
        raise ValueError("n >= 2 required")
    p, q = _x(params.p), _x(params.q)

    plus = _gamma_plus_component(p, q)
    gm, gz = _in_gamma_minus(p, q), _in_gamma_zero(p, q)
    gpm, gpz = _in_gamma_prime_minus(p, q), _in_gamma_prime_zero(p, q)
    in_gamma = plus is not None or gm or gz
    in_gamma_prime = plus is not None or gpm or gpz

    if plus is not None:
        component = plus
    elif gm:
        component = "gamma_minus"
    elif gz:
        component = "gamma_zero"
    elif gpm:
        component = "gamma_prime_minus"
    elif gpz:
        component = "gamma_prime_zero"
    else:
        component = "none"

    if c is None:
        in_delta = in_delta_prime = None
        reason = "no base curvature supplied"
    elif _x(c) < 0:
        in_delta = in_delta_prime = False
        reason = "nonnegative sectional curvature requires c >= 0"
    else:
        cx = _x(c)
        in_delta = _in_delta(p, q, cx, prime=False)
        in_delta_prime = _in_delta(p, q, cx, prime=True)
        reason = None

    condition = None if c is None else scalar_pos_sufficient(params, n, c)

    return RegionVerdict(
        in_gamma,
        in_gamma_prime,
        in_omega=_in_omega(p, q),
        in_delta=in_delta,
        in_delta_prime=in_delta_prime,
        gamma_component=component,
        scalar_condition=condition,
        delta_reason=reason,
    )


def vertical_positivity(params: Params, n: int) -> bool:
    """Whether every vertical 2-plane has strictly positive sectional curvature."""
    if n < 2:
        raise ValueError("n >= 2 required")
    v = classify(params, max(n, 2))
    return v.in_gamma if n >= 3 else v.in_gamma_prime


def nonneg_sectional(params: Params, n: int, c: Number) -> bool:
    """Whether h_{p,q} over a curvature-c space form has K >= 0 everywhere."""
    if n < 2:
        raise ValueError("n >= 2 required")
    if _x(c) < 0:
        return False  # K >= 0 necessary on the base
    p, q = _x(params.p), _x(params.q)
    return _in_delta(p, q, _x(c), prime=(n == 2))


def scalar_pos_sufficient(params: Params, n: int, c: Number) -> Optional[str]:
    """First matching sufficient condition for positive scalar curvature, or None."""
    if n < 2:
        raise ValueError("n >= 2 required")
    p, q = _x(params.p), _x(params.q)
    cx = _x(c)
    if cx == 0:
        v = classify(params, n)
        if n >= 3:
            return "gamma" if v.in_gamma else None
        return "gamma_prime" if v.in_gamma_prime else None

    cf = float(cx)
    m = multipliers(params, n)
    if n == 2:
        if q > 0 and p == 1 and abs(cf - 2) < 2:
            return "a"
        if q == 0 and 1 <= p < 2 and abs(cf - 2 * float(mu(p))) < 2 * float(mu(p)):
            return "b"
        if q == 0 and p >= 2 and abs(cf - 2 * float(mu(p))) < 2 * m.m2 * float(mu(p)):
            return "c"
        if q < 0 and p > 1 and q >= hyperbola_nu(p) and m.m4 is not None:
            if abs(cf - 2 * float(mu(p))) < 2 * m.m4 * float(mu(p)):
                return "d"
        if q < 0 and p + q >= 1 and q <= hyperbola_nu(p) and m.m5 is not None:
            if abs(cf - 2 * float(mu(p))) < 2 * m.m5 * float(mu(p)):
                return "e"
        return None
    if q > 0 and p == 1 and abs(cf - n) < m.m1 * n:
        return "a"
    if q == 0 and 1 <= p < 2 and abs(cf - n * float(mu(p))) < m.m1 * n * float(mu(p)):
        return "b"
    if q == 0 and p == 2 and abs(cf - 4 * n) < 4 * m.m2 * n:
        return "c"
    if q < 0 and p + q == 1 and abs(cf - n * float(mu(p))) < m.m3 * n * float(mu(p)):
        return "d"
    return None


# ---------------------------------------------------------------------------
# scalar curvature grids and tail analysis


def _t_grid(params: Params, points: int = 10000, cap: float = 1e6) -> np.ndarray:
    """Deterministic grid over the admissible fibre radii (log-spaced, with 0)."""
    q = float(params.q)
    if q >= 0:
        return np.concatenate([[0.0], np.geomspace(1e-8, cap, points - 1)])
    tb = -1.0 / q
    k = points // 2
    low = np.linspace(0.0, tb * (1 - 1e-3), k)
    near = tb * (1.0 - np.geomspace(1e-6, 1e-3, points - k))
    return np.unique(np.concatenate([low, near]))


def stilde_values(params: Params, n: int, c: Number, t: np.ndarray) -> np.ndarray:
    """Vectorized scalar curvature of h_{p,q} over a curvature-c space form."""
    p, q = float(params.p), float(params.q)
    cf = float(c)
    cpoly = np.array(poly_C(params, n).as_floats())
    t = np.asarray(t, dtype=float)
    cval = np.polyval(cpoly[::-1], t)
    phi = (1 + t) ** (p - 2) * (1 + q * t) ** (-2) * cval
    f = t / (1 + t) ** p
    return (n - 1) * (n * cf - 0.5 * cf * cf * f + phi)


def scalar_grid_min(
    params: Params, n: int, c: Number, points: int = 10000, cap: float = 1e6
) -> float:
    return float(stilde_values(params, n, c, _t_grid(params, points, cap)).min())


def _tail_limit(params: Params, n: int, c: Number) -> float:
    """Limit of stilde/(n-1) as t -> infinity (q >= 0 only), by leading terms."""
    p, q = float(params.p), float(params.q)
    cf = float(c)
    if q < 0:
        raise ValueError("tail analysis applies to unbounded fibre ranges only")
    if cf != 0 and p < 1:
        return -math.inf  # f(t) ~ t^(1-p) dominates every other term
    cpoly = poly_C(params, n)
    d = cpoly.degree()
    lead = float(cpoly.coefficients[d])
    if lead == 0.0:
        phi_inf = 0.0
    else:
        expo = d + (p - 2) - (2 if q > 0 else 0)
        if expo > 0:
            phi_inf = math.copysign(math.inf, lead)
        elif expo == 0:
            phi_inf = lead / (q * q) if q > 0 else lead
        else:
            phi_inf = 0.0
    f_inf = 0.0 if (cf == 0 or p > 1) else 1.0  # p == 1 here; p < 1 handled above
    return n * cf - 0.5 * cf * cf * f_inf + phi_inf


def _positivity_predicate(params: Params, n: int, c: float, points: int, cap: float) -> bool:
    if scalar_grid_min(params, n, c, points, cap) <= 0:
        return False
    if float(params.q) >= 0:
        return _tail_limit(params, n, c) >= 0
    return True


def scalar_positivity_interval(
    params: Params,
    n: int,
    tol: float = 1e-6,
    points: int = 10000,
    cap: float = 1e6,
) -> tuple[float, float]:
    """Maximal open interval of base curvatures c with positive scalar curvature.

    Bisection around the seed c = 0 on the predicate "grid minimum positive,
    tail limit nonnegative"; returns (nan, nan) when the seed itself fails.
    Implemented for q >= 0 and for the bounded-range family p + q >= 1, q < 0.
    """
    p, q = float(params.p), float(params.q)
    if q < 0 and p + q < 1:
        raise ValueError("interval search implemented for q >= 0 or p + q >= 1")
    pred = lambda c: _positivity_predicate(params, n, c, points, cap)
    if not pred(0.0):
        return (math.nan, math.nan)

    def expand_and_bisect(sign: float) -> float:
        lo, hi = 0.0, sign
        for _ in range(60):
            if not pred(hi):
                break
            lo, hi = hi, 2 * hi
        else:
            return sign * math.inf
        while abs(hi - lo) > tol:
            mid = 0.5 * (lo + hi)
            if pred(mid):
                lo = mid
            else:
                hi = mid
        return lo

    return (expand_and_bisect(-1.0), expand_and_bisect(1.0))


# ---------------------------------------------------------------------------
# brute-force vertical-plane oracle


def _AB_arrays(params: Params, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p, q = float(params.p), float(params.q)
    w = 1.0 / (1.0 + t)
    wq = 1.0 / (1.0 + q * t)
    A = p * w * wq * ((p + 2 * q - 2) * w - q)
    B = wq * (p * p * w * w - p * (p - 2) * w + q)
    return A, B


def _vertical_samples(
    params: Params, n: int, samples: int, seed: int, cap: float = 1e3
) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic (t, u) samples: u = <X,e>^2 + <Y,e>^2 over random planes.

    Radii are log-distributed (plus the zero section and, for q < 0, a
    boundary-concentrated band); each radius contributes the plane through
    the radial direction, the plane orthogonal to it (n >= 3) and a uniformly
    random plane.
    """
    rng = np.random.default_rng(seed)
    q = float(params.q)
    m = max(samples, 2)
    if q >= 0:
        t = np.exp(rng.uniform(math.log(1e-9), math.log(cap), m))
    else:
        tb = -1.0 / q
        k = m // 2
        t_low = np.exp(rng.uniform(math.log(1e-9), math.log(tb * 0.9), k))
        t_near = tb * (1.0 - 10.0 ** rng.uniform(-6, -0.05, m - k))
        t = np.concatenate([t_low, t_near])
    t = np.concatenate([[0.0], t])

    g = rng.standard_normal((t.size, 2, n))
    x1 = g[:, 0] / np.linalg.norm(g[:, 0], axis=1, keepdims=True)
    y = g[:, 1] - np.einsum("mi,mi->m", g[:, 1], x1)[:, None] * x1
    y /= np.linalg.norm(y, axis=1, keepdims=True)
    ehat = np.zeros(n)
    ehat[0] = 1.0
    u_rand = t * ((x1 @ ehat) ** 2 + (y @ ehat) ** 2)

    ts = [t, t]
    us = [u_rand, t]  # random plane; plane containing the radial direction
    if n >= 3:
        ts.append(t)
        us.append(np.zeros_like(t))  # plane orthogonal to the fibre point
    return np.concatenate(ts), np.concatenate(us)


def vertical_curvature_minimum(
    params: Params, n: int, samples: int = 10000, seed: int = 0
) -> float:
    """Minimum sampled sectional curvature of vertical 2-planes."""
    if samples < 1:
        raise ValueError("samples >= 1 required")
    t, u = _vertical_samples(params, n, samples, seed)
    A, B = _AB_arrays(params, t)
    p, q = float(params.p), float(params.q)
    k = (1.0 + t) ** p * (A * u + B) / (1.0 + q * u)
    return float(k.min())


def brute_force_vertical_positivity(
    params: Params, n: int, samples: int = 10000, seed: int = 0
) -> bool:
    """Sampled check that every vertical 2-plane has positive sectional curvature."""
    return vertical_curvature_minimum(params, n, samples, seed) > 0.0


# ---------------------------------------------------------------------------
# structured sectional-curvature witness search (space forms)


def _quadratic_sign_probes(coeffs: tuple, t_hi: float) -> list:
    """Radii hitting every sign region of c0 + c1 t + c2 t^2 on [0, t_hi]."""
    c0, c1, c2 = coeffs
    roots = []
    if c2 != 0:
        disc = c1 * c1 - 4 * c0 * c2
        if disc >= 0:
            roots = sorted(((-c1 - math.sqrt(disc)) / (2 * c2), (-c1 + math.sqrt(disc)) / (2 * c2)))
    elif c1 != 0:
        roots = [-c0 / c1]
    probes = []
    for r in roots:
        probes += [r / 2, 2 * r + 1.0]
    if len(roots) == 2:
        probes.append(0.5 * (roots[0] + roots[1]))
        probes.append(0.5 * (roots[1] + t_hi))
    return [t for t in probes if 0 < t <= t_hi and math.isfinite(t)]


def sectional_witness_min(
    params: Params,
    n: int,
    c: Number,
    n_random: int = 1000,
    seed: int = 0,
    t_count: int = 48,
    include_mixed: bool = False,
) -> float:
    """Minimum sectional curvature over lifted-plane families at sampled radii.

    Structured families along the fibre radius: horizontal planes containing
    the radial direction, vertizontal planes, vertical planes containing the
    canonical vector and orthogonal to it; radii include the critical points
    of f, P and Q.  Random planes are drawn within the three lifted families
    (random orthonormal base pairs), which is the scope of the K >= 0
    characterization.  ``include_mixed`` additionally probes fully general
    2-planes of the total space; those can be negative even where every
    lifted plane is nonnegative (e.g. (p,q)=(1.108,0), n=2, c=1 near the zero
    section, confirmed by finite differences), so the default excludes them.
    """
    from .curvature import FiberPoint, sectional_batch_spaceform

    p, q = float(params.p), float(params.q)
    cf = float(c)
    t_hi = 1e3 if q >= 0 else -1.0 / q * (1 - 2e-9)
    t_vals = [0.0] + list(np.geomspace(1e-6, t_hi * 0.999, t_count))
    if q < 0:
        tb = -1.0 / q
        t_vals += list(tb * (1.0 - np.geomspace(2e-9, 1e-1, 16)))
    an = analysis_scalars(params)
    for crit in (1.0 / (p - 1.0) if p > 1 else None, an.t0, an.s0):
        if crit is not None and 0 < crit < t_hi:
            t_vals.append(crit)
    # scale-free sign probes: one point in every sign region of P and Q
    for poly in (poly_P(params), poly_Q(params)):
        t_vals += _quadratic_sign_probes(poly.as_floats(), t_hi)
    t_arr = np.array(sorted({t for t in t_vals if 0 <= t <= t_hi}))

    # closed-form families
    A, B = _AB_arrays(params, t_arr)
    w = 1.0 / (1.0 + t_arr)
    mins = []
    # horizontal plane containing the radial direction; its infimum over an
    # unbounded radius range is analytic (sup f = 1/mu for p >= 1, else inf)
    mins.append((cf - 0.75 * cf * cf * w**p * t_arr).min())
    if q >= 0 and cf != 0:
        sup_f = math.inf if p < 1 else 1.0 / float(mu(p))
        mins.append(cf - 0.75 * cf * cf * sup_f)
    # vertizontal planes (radial horizontal against the two vertical types)
    mins.append((0.25 * cf * cf * w**p * t_arr / (1.0 + q * t_arr)).min())
    mins.append((0.25 * cf * cf * w**p * t_arr).min())
    # vertical planes through / orthogonal to the canonical vector
    kv_u = (1.0 + t_arr) ** p * (A * t_arr + B) / (1.0 + q * t_arr)
    mins.append(kv_u.min())
    if n >= 3:
        mins.append(((1.0 + t_arr) ** p * B).min())

    if n_random > 0:
        rng = np.random.default_rng(seed)
        m = n_random
        ts = t_arr[rng.integers(0, t_arr.size, size=m)]
        g1 = rng.standard_normal((m, n))
        g2 = rng.standard_normal((m, n))
        X = g1 / np.linalg.norm(g1, axis=1, keepdims=True)
        Y = g2 - np.einsum("mi,mi->m", g2, X)[:, None] * X
        Y /= np.linalg.norm(Y, axis=1, keepdims=True)
        x2 = ts * X[:, 0] ** 2
        y2 = ts * Y[:, 0] ** 2
        u = x2 + y2
        wr = 1.0 / (1.0 + ts)
        Ar, Br = _AB_arrays(params, ts)
        mins.append((cf - 0.75 * cf * cf * wr**p * u).min())
        mins.append((0.25 * cf * cf * wr**p * x2 / (1.0 + q * y2)).min())
        mins.append(((1.0 + ts) ** p * (Ar * u + Br) / (1.0 + q * u)).min())
        if include_mixed:
            t_sub = t_arr[rng.integers(0, t_arr.size, size=min(8, t_arr.size))]
            per = max(n_random // max(len(t_sub), 1), 1)
            for tv in t_sub:
                e = FiberPoint.radial(float(tv), n)
                raw = rng.standard_normal((per, 4, n))
                k = sectional_batch_spaceform(
                    params, cf, e, raw[:, 0], raw[:, 1], raw[:, 2], raw[:, 3]
                )
                mins.append(k.min())
    return float(min(mins))


# ---------------------------------------------------------------------------
# constructive searches


@dataclass
class SearchResult:
    """Parameters returned by a search plus a positivity certificate."""

    params: Params
    certificate: dict = field(default_factory=dict)


def _certificate(params: Params, n: int, c: Number, extra: Optional[dict] = None) -> dict:
    m = scalar_grid_min(params, n, c)
    if not m > 0:
        raise AssertionError(
            f"search postcondition violated: grid minimum {m} at {params}"
        )
    cert = {
        "min_scalar_on_grid": m,
        "grid": "10000-point log grid on the admissible radii (t <= 1e6)",
    }
    if extra:
        cert.update(extra)
    return cert


def find_params_thm1(n: int, c: Number) -> SearchResult:
    """Smallest-on-grid parameters with positive scalar curvature over M(c).

    Dimension 2 searches the line q = 0; higher dimensions the line p+q = 1
    (so q < 0 and the result metric lives on the ball bundle).  The grid step
    is 0.1 starting from p = 2, driven by the growth of mu.
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    cf = float(c)
    if n == 2 and cf == 0:
        params = Params(1, 0)
        return SearchResult(params, _certificate(params, n, c, {"path": "c=0: any p>0 on q=0"}))
    if cf > 0:
        threshold = cf
    elif cf == 0:
        threshold = 0.0
    else:
        root = math.sqrt(math.e + 2) - math.sqrt(math.e) if n == 2 else math.sqrt(n + 0.75) - math.sqrt(n)
        threshold = -cf / root
    steps = 0
    pf = Fraction(2)
    while float(mu(pf)) <= threshold:
        pf += Fraction(1, 10)
        steps += 1
        if steps > 5000:
            raise RuntimeError("mu-threshold search failed to terminate")
    p = float(pf)
    params = Params(p, 0.0) if n == 2 else Params(p, 1.0 - p)
    extra = {"path": f"grid p=2.0+0.1k, {steps} rejections, mu(p)={float(mu(pf)):.6g} > {threshold:.6g}"}
    return SearchResult(params, _certificate(params, n, c, extra))


def _coeff_polys_in_q(p: int, n: int) -> tuple[tuple, tuple]:
    """The t^2 and t^1 coefficients of C(t) as quadratics in q (ascending)."""
    a = (0, n + 2 * (n - 3) * p - (n - 2) * p * p, 2 * (n - 2))
    b = ((n - 2) * p * (2 - p), 2 * (n + (n - 1) * p), n - 2)
    return a, b


def _larger_root(quad: tuple) -> float:
    c0, c1, c2 = (float(v) for v in quad)
    if c2 == 0:
        return 0.0 if c1 == 0 else max(0.0, -c0 / c1)
    disc = c1 * c1 - 4 * c0 * c2
    if disc < 0:
        return 0.0
    return (-c1 + math.sqrt(disc)) / (2 * c2)


def _all_positive(spec) -> bool:
    return all(coef > 0 for coef in spec.coefficients)


def find_params_thm3(n: int, c: Number) -> SearchResult:
    """Parameters with q >= 0 and positive scalar curvature over M(c).

    The certificate is the all-positive coefficient list of the sign
    polynomial G (sufficient for G > 0 on t >= 0, hence stilde > 0), found by
    an ascending integer-p / doubling-q search seeded at the analytic bounds.
    Exact rational arithmetic keeps the coefficient signs trustworthy.
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    cx = _x(c)
    cf = float(cx)
    path = []
    if cf == 0:
        params = Params(1, 1)
        g = poly_G(params, n, 0)
        extra = {"G_coefficients": g.as_floats(), "path": "c=0: Cheeger-Gromoll point"}
        if not _all_positive(g):
            raise AssertionError("G positivity failed at the c=0 seed")
        return SearchResult(params, _certificate(params, n, cx, extra))

    if n == 2:
        p = 2
        for _ in range(400):
            g = poly_G(Params(p, 0), n, cx)
            if _all_positive(g):
                params = Params(p, 0)
                extra = {
                    "G_coefficients": g.as_floats(),
                    "path": f"q=0, integer p ascent: accepted p={p} ({len(path)} rejections)",
                }
                return SearchResult(params, _certificate(params, n, cx, extra))
            path.append(p)
            p += 1
        raise RuntimeError("surface search failed to terminate")

    if cf > 0:
        p0 = 2
        while float(mu(p0)) <= cf / (2 * n):
            p0 += 1
    else:
        p0 = max(2, math.ceil(1 - 9 * cf / 8), math.ceil(1 + math.log(-3 * cf) / math.log(2)))
    for p in range(p0, p0 + 60):
        aq, bq = _coeff_polys_in_q(p, n)
        q0 = max(
            1,
            math.ceil(-cf - 2 * p) + 1,
            math.ceil(_larger_root(aq)) + 1,
            math.ceil(_larger_root(bq)) + 1,
        )
        q = q0
        for _ in range(40):
            g = poly_G(Params(p, q), n, cx)
            if _all_positive(g):
                params = Params(p, q)
                extra = {
                    "G_coefficients": g.as_floats(),
                    "path": f"started p={p0}, accepted (p,q)=({p},{q}) after {len(path)} rejections",
                }
                return SearchResult(params, _certificate(params, n, cx, extra))
            path.append((p, q))
            q *= 2
    raise RuntimeError("coefficient-positivity search failed to terminate")


def find_params_general(n: int, a: Number, b: Number) -> tuple[float, SearchResult]:
    """Parameters with positive scalar curvature from scalar/curvature bounds.

    ``a`` bounds the base scalar curvature from below and ``b`` bounds the
    squared curvature frame sum by b|e|^2; the comparison space form uses
    c_used = min(a / n(n-1), -sqrt(b / 2(n-1))) minus a safety margin.
    """
    if b < 0:
        raise ValueError("b >= 0 required")
    base = min(float(a) / (n * (n - 1)), -math.sqrt(float(b) / (2 * (n - 1))))
    margin = max(1.0, 0.01 * abs(base))
    c_used = base - margin
    return c_used, find_params_thm3(n, c_used)
