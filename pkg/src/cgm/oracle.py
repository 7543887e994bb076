"""Independent finite-difference verification of the closed-form curvature.

Space forms are realized as explicit conformal charts (flat, stereographic
sphere, Poincare ball).  The induced metric of h_{p,q} on the tangent bundle
is assembled in coordinates from the chart metric and finite-difference base
Christoffel symbols, then differentiated numerically a second time to produce
Christoffel symbols and the Riemann tensor of the total space.  No closed
curvature formula from the rest of the package enters this pipeline, so
agreement between the two is a genuine cross-check.

Index convention: R^a_{bcd} components satisfy R(dc, dd)db = R^a_{bcd} da
with R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .curvature import BaseCurvature, FiberPoint, LiftVector
from . import curvature as closed
from .scalars import DomainError, Params, omega

DEFAULT_FIRST_STEP = 1e-5
DEFAULT_NESTED_STEP = 1e-3
#: compare() keeps q|e|^2 at least this far from the singular boundary
BOUNDARY_MARGIN = 1e-3


@dataclass(frozen=True)
class Chart:
    """Conformal coordinate chart of a space form of curvature c."""

    n: int
    c: float
    kind: str
    radius: float  # coordinate radius of the safe domain

    @classmethod
    def space_form(cls, n: int, c: float) -> "Chart":
        c = float(c)
        if c == 0:
            return cls(n, c, "flat", math.inf)
        if c > 0:
            return cls(n, c, "stereographic_sphere", 0.8)
        return cls(n, c, "poincare_ball", 0.9)

    def metric(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind == "flat":
            return np.eye(self.n)
        r2 = float(x @ x)
        if self.kind == "stereographic_sphere":
            return (1.0 / self.c) * (2.0 / (1.0 + r2)) ** 2 * np.eye(self.n)
        return (1.0 / abs(self.c)) * (2.0 / (1.0 - r2)) ** 2 * np.eye(self.n)

    def in_domain(self, x: np.ndarray) -> bool:
        return float(np.linalg.norm(x)) <= self.radius


@dataclass
class TMPoint:
    """Point of the tangent bundle in induced chart coordinates (x, u)."""

    x: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.u = np.asarray(self.u, dtype=float)

    def coords(self) -> np.ndarray:
        return np.concatenate([self.x, self.u])


def fd_christoffel(metric_field: Callable, pt: np.ndarray, step: float = DEFAULT_FIRST_STEP) -> np.ndarray:
    """Christoffel symbols Gamma^a_{bc} of a metric field by central differences."""
    pt = np.asarray(pt, dtype=float)
    m = pt.size
    g = metric_field(pt)
    ginv = np.linalg.inv(g)
    dg = np.empty((m, m, m))
    for b in range(m):
        e = np.zeros(m)
        e[b] = step
        dg[b] = (metric_field(pt + e) - metric_field(pt - e)) / (2 * step)
    T = dg + np.einsum("cbd->bdc", dg) - np.einsum("dbc->bdc", dg)
    return 0.5 * np.einsum("ad,bdc->abc", ginv, T)


def fd_riemann(
    metric_field: Callable,
    pt: np.ndarray,
    step: float = DEFAULT_NESTED_STEP,
    christoffel_step: float = DEFAULT_FIRST_STEP,
) -> np.ndarray:
    """Riemann tensor R^a_{bcd} by nested central differences of Gamma."""
    pt = np.asarray(pt, dtype=float)
    m = pt.size
    gamma = lambda z: fd_christoffel(metric_field, z, christoffel_step)
    G0 = gamma(pt)
    dG = np.empty((m, m, m, m))
    for cidx in range(m):
        e = np.zeros(m)
        e[cidx] = step
        dG[cidx] = (gamma(pt + e) - gamma(pt - e)) / (2 * step)
    return (
        np.einsum("cadb->abcd", dG)
        - np.einsum("dacb->abcd", dG)
        + np.einsum("ace,edb->abcd", G0, G0)
        - np.einsum("ade,ecb->abcd", G0, G0)
    )


def tm_metric(
    params: Params, chart: Chart, pt: TMPoint, base_step: float = DEFAULT_FIRST_STEP
) -> np.ndarray:
    """Induced metric of h_{p,q} on TM in chart coordinates, as a 2n x 2n matrix.

    The connection-map component of a tangent vector (dx, du) is
    du^k + Gamma^k_{ij} dx^i u^j with finite-difference base Christoffels, the
    horizontal block pairs with the chart metric and the vertical block with
    omega^p (g + q (g u)(g u)^T).
    """
    n = chart.n
    g = chart.metric(pt.x)
    t = float(pt.u @ g @ pt.u)
    q = float(params.q)
    if q * t <= -1.0 + 1e-9:
        raise DomainError("tangent-bundle point outside the ball bundle")
    gam = fd_christoffel(chart.metric, pt.x, base_step)
    M = np.einsum("kij,j->ki", gam, pt.u)
    gu = g @ pt.u
    W = omega(t) ** float(params.p) * (g + q * np.outer(gu, gu))
    H = np.zeros((2 * n, 2 * n))
    H[:n, :n] = g + M.T @ W @ M
    H[:n, n:] = M.T @ W
    H[n:, :n] = W @ M
    H[n:, n:] = W
    return 0.5 * (H + H.T)


def tm_metric_field(params: Params, chart: Chart, base_step: float = DEFAULT_FIRST_STEP):
    n = chart.n

    def h_field(z: np.ndarray) -> np.ndarray:
        return tm_metric(params, chart, TMPoint(z[:n], z[n:]), base_step)

    return h_field


# ---------------------------------------------------------------------------
# numeric curvature contractions


def _ricci_matrix(R: np.ndarray, H: np.ndarray, Hinv: np.ndarray) -> np.ndarray:
    """rho[c,a] such that rho(Y,Z) = rho[c,a] Y^c Z^a (trace of the curvature)."""
    return np.einsum("ebcd,ea,bd->ca", R, H, Hinv)


def numeric_sectional(R: np.ndarray, H: np.ndarray, A: np.ndarray, B: np.ndarray) -> float:
    rab_b = np.einsum("abcd,b,c,d->a", R, B, A, B)  # R(A,B)B
    num = float(rab_b @ H @ A)
    gram = float((A @ H @ A) * (B @ H @ B) - (A @ H @ B) ** 2)
    return num / gram


def base_frame(g: np.ndarray, u: Optional[np.ndarray] = None) -> np.ndarray:
    """g-orthonormal frame by Gram-Schmidt on the coordinate basis.

    When a nonzero fibre vector u is given, the first frame vector points
    along it so that closed-form comparisons exercise radial-aligned planes.
    """
    n = g.shape[0]
    seeds = []
    if u is not None and float(u @ g @ u) > 0:
        seeds.append(np.asarray(u, dtype=float))
    seeds.extend(np.eye(n))
    frame = []
    for s in seeds:
        v = s.copy()
        for w in frame:
            v = v - (w @ g @ v) * w
        norm2 = float(v @ g @ v)
        if norm2 > 1e-12:
            frame.append(v / math.sqrt(norm2))
        if len(frame) == n:
            break
    return np.array(frame)


@dataclass
class QuantityCheck:
    name: str
    closed_form: float
    numeric: float
    rel_err: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.rel_err <= self.tol


@dataclass
class ComparisonReport:
    """Per-quantity closed-form vs numeric record with pass/fail verdict."""

    records: list = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)

    def add(self, name: str, closed_val: float, numeric_val: float, tol: float):
        if abs(closed_val) >= 1e-8:
            err = abs(closed_val - numeric_val) / abs(closed_val)
        else:
            err = abs(closed_val - numeric_val)
        self.records.append(QuantityCheck(name, closed_val, numeric_val, err, tol))

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.records)

    def max_rel_err(self) -> float:
        return max((r.rel_err for r in self.records), default=0.0)

    def failures(self) -> list:
        return [r for r in self.records if not r.ok]


DEFAULT_TOLERANCES = {"sectional": 1e-3, "ricci": 1e-3, "scalar": 1e-3, "connection": 1e-4}


def compare(
    params: Params,
    chart: Chart,
    pt: TMPoint,
    suites: Iterable[str] = ("sectional", "ricci", "scalar", "connection"),
    tolerances: Optional[dict] = None,
    first_step: float = DEFAULT_FIRST_STEP,
    nested_step: float = DEFAULT_NESTED_STEP,
) -> ComparisonReport:
    """Evaluate both curvature pipelines at a tangent-bundle point and diff them.

    Builds a g-orthonormal base frame (radial-aligned when the fibre vector is
    nonzero), maps frame vectors to induced coordinates, runs the named suites
    and reports per-quantity relative errors (absolute when the closed form
    vanishes).
    """
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    n = chart.n
    if not chart.in_domain(pt.x):
        raise DomainError("base point outside the chart's safe domain")
    g = chart.metric(pt.x)
    t = float(pt.u @ g @ pt.u)
    if float(params.q) * t <= -1.0 + BOUNDARY_MARGIN:
        raise DomainError("too close to the singular boundary for differencing")

    frame = base_frame(g, pt.u if t > 0 else None)
    e_frame = FiberPoint(np.array([float(pt.u @ g @ frame[i]) for i in range(n)]))
    base = BaseCurvature.space_form(chart.c)
    gam0 = fd_christoffel(chart.metric, pt.x, first_step)

    def to_coords(vec_frame: np.ndarray) -> np.ndarray:
        return np.einsum("i,ij->j", vec_frame, frame)

    def lift_coords(lv: LiftVector) -> np.ndarray:
        """Coordinate representation (dx, du) of a frame-component lift vector."""
        hor = to_coords(lv.h)
        ver = to_coords(lv.v)
        du = ver - np.einsum("kij,i,j->k", gam0, hor, pt.u)
        return np.concatenate([hor, du])

    z = pt.coords()
    h_field = tm_metric_field(params, chart, first_step)
    H = h_field(z)
    Hinv = np.linalg.inv(H)
    report = ComparisonReport(tolerances=tol)
    needs_riemann = {"sectional", "ricci", "scalar"} & set(suites)
    if needs_riemann:
        R = fd_riemann(h_field, z, nested_step, first_step)
        rho = _ricci_matrix(R, H, Hinv)

    f1 = np.zeros(n); f1[0] = 1.0
    f2 = np.zeros(n); f2[1] = 1.0

    if "sectional" in suites:
        planes = [
            ("sectional_hh_radial", "hh", f1, f2),
            ("sectional_hv_radial", "hv", f1, f2),
            ("sectional_hv_vertical_radial", "hv", f2, f1),
            ("sectional_vv_radial", "vv", f1, f2),
        ]
        if n >= 3:
            f3 = np.zeros(n); f3[2] = 1.0
            planes.append(("sectional_vv_orthogonal", "vv", f2, f3))
        for name, plane, X, Y in planes:
            k_closed = closed.sectional(params, e_frame, plane, X, Y, base)
            if plane == "hh":
                A = lift_coords(LiftVector.horizontal(X))
                B = lift_coords(LiftVector.horizontal(Y))
            elif plane == "hv":
                A = lift_coords(LiftVector.horizontal(X))
                B = lift_coords(LiftVector.vertical(Y))
            else:
                A = lift_coords(LiftVector.vertical(X))
                B = lift_coords(LiftVector.vertical(Y))
            report.add(name, k_closed, numeric_sectional(R, H, A, B), tol["sectional"])

    if "ricci" in suites:
        cases = [
            ("ricci_hh", "hh", f1, f1),
            ("ricci_hh_mixed", "hh", f1, f2),
            ("ricci_hv", "hv", f1, f2),
            ("ricci_vv_radial", "vv", f1, f1),
            ("ricci_vv", "vv", f2, f2),
        ]
        for name, case, X, Y in cases:
            r_closed = closed.ricci(params, n, e_frame, case, X, Y, base)
            if case == "hh":
                A = lift_coords(LiftVector.horizontal(X))
                B = lift_coords(LiftVector.horizontal(Y))
            elif case == "hv":
                A = lift_coords(LiftVector.horizontal(X))
                B = lift_coords(LiftVector.vertical(Y))
            else:
                A = lift_coords(LiftVector.vertical(X))
                B = lift_coords(LiftVector.vertical(Y))
            r_num = float(np.einsum("ca,c,a->", rho, A, B))
            report.add(name, r_closed, r_num, tol["ricci"])

    if "scalar" in suites:
        s_closed = closed.scalar(params, n, e_frame, base)
        s_num = float(np.einsum("ca,ca->", rho, Hinv))
        report.add("scalar", s_closed, s_num, tol["scalar"])

    if "connection" in suites:
        GamTM = fd_christoffel(h_field, z, first_step)

        def hor_field(Xc):
            def fld(zz):
                gz = fd_christoffel(chart.metric, zz[:n], first_step)
                return np.concatenate([Xc, -np.einsum("kij,i,j->k", gz, Xc, zz[n:])])
            return fld

        def ver_field(Yc):
            def fld(zz):
                return np.concatenate([np.zeros(n), Yc])
            return fld

        def nabla_numeric(Acoord, B_field):
            m = 2 * n
            jac = np.empty((m, m))
            for a in range(m):
                ez = np.zeros(m)
                ez[a] = first_step
                jac[a] = (B_field(z + ez) - B_field(z - ez)) / (2 * first_step)
            Bv = B_field(z)
            return np.einsum("a,ac->c", Acoord, jac) + np.einsum("cab,a,b->c", GamTM, Acoord, Bv)

        def hor_coord(Xc):
            return np.concatenate([Xc, -np.einsum("kij,i,j->k", gam0, Xc, pt.u)])

        def ver_coord(Yc):
            return np.concatenate([np.zeros(n), Yc])

        cases = []
        for suffix, X, Y in (("", f1, f2), ("_swapped", f2, f1)):
            Xc, Yc = to_coords(X), to_coords(Y)
            nabla_xy_coord = np.einsum("kij,i,j->k", gam0, Xc, Yc)
            nab = np.array([float(nabla_xy_coord @ g @ frame[i]) for i in range(n)])
            cases += [
                (f"connection_hh{suffix}", "hh", X, Y, hor_field(Yc), hor_coord(Xc), nab),
                (f"connection_hv{suffix}", "hv", X, Y, ver_field(Yc), hor_coord(Xc), nab),
                (f"connection_vh{suffix}", "vh", X, Y, hor_field(Yc), ver_coord(Xc), None),
                (f"connection_vv{suffix}", "vv", X, Y, ver_field(Yc), ver_coord(Xc), None),
            ]
        for name, case, X, Y, B_field, A_coord, nab in cases:
            closed_lv = closed.connection(params, e_frame, case, X, Y, base, nabla_xy=nab)
            closed_coord = lift_coords(closed_lv)
            num_coord = nabla_numeric(A_coord, B_field)
            norm_closed = float(np.linalg.norm(closed_coord))
            diff = float(np.linalg.norm(closed_coord - num_coord))
            err = diff / norm_closed if norm_closed >= 1e-8 else diff
            report.records.append(
                QuantityCheck(name, norm_closed, float(np.linalg.norm(num_coord)),
                              err, tol["connection"])
            )

    return report


def chart_base_check(chart: Chart, x: np.ndarray, nested_step: float = DEFAULT_NESTED_STEP):
    """Numeric sectional and scalar curvature of the chart itself at x."""
    x = np.asarray(x, dtype=float)
    n = chart.n
    R = fd_riemann(chart.metric, x, nested_step)
    g = chart.metric(x)
    ginv = np.linalg.inv(g)
    frame = base_frame(g)
    K = numeric_sectional(R, g, frame[0], frame[1])
    rho = _ricci_matrix(R, g, ginv)
    s = float(np.einsum("ca,ca->", rho, ginv))
    return K, s
