"""Closed-form connection and curvature of h_{p,q} on explicit frame vectors.

All computations happen in an orthonormal frame of the base tangent space, so
the base inner product is the Euclidean dot product.  Tangent vectors of the
total space are split into horizontal and vertical frame components
(LiftVector); the canonical vertical vector at a fibre point e is the vertical
lift of e itself, and the U-terms of the formulas are folded into vertical
components as multiples of e.

Field-extension data (the covariant derivative of the second argument, the
covariant derivative of the base curvature, and its coderivative) enter as
caller-supplied values defaulting to zero, which reproduces evaluation in a
normal frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .scalars import (
    DomainError,
    Params,
    check_fiber_radius,
    coefficients,
    omega,
    omega_q,
)

ORTHO_TOL = 1e-10


@dataclass
class FiberPoint:
    """A point e of the ball bundle in base-orthonormal coordinates."""

    e: np.ndarray
    t: float = field(init=False)

    def __post_init__(self):
        self.e = np.asarray(self.e, dtype=float)
        self.t = float(self.e @ self.e)

    @classmethod
    def zero(cls, n: int) -> "FiberPoint":
        return cls(np.zeros(n))

    @classmethod
    def radial(cls, t: float, n: int, axis: int = 0) -> "FiberPoint":
        e = np.zeros(n)
        e[axis] = math.sqrt(t)
        return cls(e)

    @property
    def n(self) -> int:
        return self.e.shape[0]


@dataclass
class LiftVector:
    """Tangent vector of the total space: horizontal and vertical components."""

    h: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        self.h = np.asarray(self.h, dtype=float)
        self.v = np.asarray(self.v, dtype=float)

    @classmethod
    def horizontal(cls, X) -> "LiftVector":
        X = np.asarray(X, dtype=float)
        return cls(X, np.zeros_like(X))

    @classmethod
    def vertical(cls, Y) -> "LiftVector":
        Y = np.asarray(Y, dtype=float)
        return cls(np.zeros_like(Y), Y)

    @classmethod
    def canonical_vertical(cls, e: FiberPoint) -> "LiftVector":
        return cls.vertical(e.e)

    def __add__(self, other: "LiftVector") -> "LiftVector":
        return LiftVector(self.h + other.h, self.v + other.v)

    def __mul__(self, s: float) -> "LiftVector":
        return LiftVector(s * self.h, s * self.v)

    __rmul__ = __mul__


@dataclass
class BaseCurvature:
    """Curvature data of the base manifold as operators on frame vectors.

    ``r_op(X, Y, Z)`` returns R(X,Y)Z.  ``nabla_op(W, X, Y, Z)`` returns
    (nabla_W R)(X,Y)Z and ``delta_op(X, e)`` the coderivative vector whose
    pairing with Y gives the horizontal-vertical Ricci; both vanish for space
    forms and default to None for custom bases.
    """

    kind: str
    c: Optional[float]
    r_op: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]
    nabla_op: Optional[Callable] = None
    delta_op: Optional[Callable] = None

    @classmethod
    def space_form(cls, c: float) -> "BaseCurvature":
        c = float(c)

        def r_op(X, Y, Z):
            return c * ((Y @ Z) * X - (X @ Z) * Y)

        zero4 = lambda W, X, Y, Z: np.zeros_like(X)
        zero2 = lambda X, e: np.zeros_like(X)
        return cls("space_form", c, r_op, zero4, zero2)

    @classmethod
    def custom(cls, r_op, nabla_op=None, delta_op=None) -> "BaseCurvature":
        return cls("custom", None, r_op, nabla_op, delta_op)

    def R(self, X, Y, Z) -> np.ndarray:
        return self.r_op(X, Y, Z)

    def nabla_R(self, W, X, Y, Z) -> np.ndarray:
        if self.nabla_op is None:
            return np.zeros_like(np.asarray(X, dtype=float))
        return self.nabla_op(W, X, Y, Z)

    def scalar(self, n: int) -> float:
        if self.kind == "space_form":
            return n * (n - 1) * self.c
        basis = np.eye(n)
        return float(
            sum(
                basis[i] @ self.R(basis[i], basis[j], basis[j])
                for i in range(n)
                for j in range(n)
            )
        )


def _r_shape(X, Y, Z):
    """The curvature-type tensor r(X,Y)Z = <Y,Z>X - <X,Z>Y."""
    return (Y @ Z) * X - (X @ Z) * Y


def metric_h(params: Params, e: FiberPoint, A: LiftVector, B: LiftVector) -> float:
    """Pairing of two lifted vectors under h_{p,q} at the fibre point e."""
    check_fiber_radius(params, e.t)
    w = omega(e.t)
    q = float(params.q)
    return float(
        A.h @ B.h
        + w ** float(params.p) * (A.v @ B.v + q * (A.v @ e.e) * (B.v @ e.e))
    )


def connection(
    params: Params,
    e: FiberPoint,
    case: str,
    X: np.ndarray,
    Y: np.ndarray,
    base: BaseCurvature,
    nabla_xy: Optional[np.ndarray] = None,
) -> LiftVector:
    """Covariant derivative of a lift along a lift, by (case of) lifted arguments.

    ``case`` names the lift types of the direction and of the differentiated
    field: "hh", "hv", "vh" or "vv".  ``nabla_xy`` is the base covariant
    derivative of Y along X at the foot point (zero in a normal frame).
    """
    check_fiber_radius(params, e.t)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if nabla_xy is None:
        nabla_xy = np.zeros_like(X)
    p, q = float(params.p), float(params.q)
    w = omega(e.t)
    wq = omega_q(e.t, params)
    ev = e.e
    if case == "hh":
        return LiftVector(nabla_xy, -0.5 * base.R(X, Y, ev))
    if case == "hv":
        return LiftVector(0.5 * w**p * base.R(ev, Y, X), nabla_xy)
    if case == "vh":
        return LiftVector(0.5 * w**p * base.R(ev, X, Y), np.zeros_like(X))
    if case == "vv":
        coeff = wq * ((p * w + q) * (X @ Y) + p * q * w * (X @ ev) * (Y @ ev))
        vert = coeff * ev - p * w * ((X @ ev) * Y + (Y @ ev) * X)
        return LiftVector(np.zeros_like(X), vert)
    raise ValueError(f"unknown connection case {case!r}")


def riemann(
    params: Params,
    e: FiberPoint,
    case: str,
    X: np.ndarray,
    Y: np.ndarray,
    Z: np.ndarray,
    base: BaseCurvature,
) -> LiftVector:
    """Curvature operator value R~(X^a, Y^b)Z^c for the named lift-type case.

    Cases: hhh, hhv, hvh, hvv, vvh, vvv; the first two letters give the lift
    types of X and Y, the last that of Z.
    """
    check_fiber_radius(params, e.t)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    Z = np.asarray(Z, dtype=float)
    p, q = float(params.p), float(params.q)
    w = omega(e.t)
    wq = omega_q(e.t, params)
    ev = e.e
    R = base.R
    wp = w**p

    if case == "hhh":
        hor = R(X, Y, Z) - 0.25 * wp * (
            R(ev, R(Y, Z, ev), X) - R(ev, R(X, Z, ev), Y) - 2 * R(ev, R(X, Y, ev), Z)
        )
        ver = 0.5 * base.nabla_R(Z, X, Y, ev)
        return LiftVector(hor, ver)
    if case == "hhv":
        hor = 0.5 * wp * (base.nabla_R(X, ev, Z, Y) - base.nabla_R(Y, ev, Z, X))
        rxye = R(X, Y, ev)
        ver = (
            R(X, Y, Z)
            + 0.25 * wp * (R(Y, R(ev, Z, X), ev) - R(X, R(ev, Z, Y), ev))
            - p * w * (Z @ ev) * rxye
            + (p * w + q) * wq * (rxye @ Z) * ev
        )
        return LiftVector(hor, ver)
    if case == "hvh":
        hor = 0.5 * wp * base.nabla_R(X, ev, Y, Z)
        rxze = R(X, Z, ev)
        ver = (
            -0.25 * wp * R(X, R(ev, Y, Z), ev)
            - 0.5 * p * w * (Y @ ev) * rxze
            + 0.5 * R(X, Z, Y)
            + 0.5 * (p * w + q) * wq * (rxze @ Y) * ev
        )
        return LiftVector(hor, ver)
    if case == "hvv":
        hor = (
            0.5 * p * w ** (p + 1) * ((Y @ ev) * R(ev, Z, X) - (Z @ ev) * R(ev, Y, X))
            - 0.5 * wp * R(Y, Z, X)
            - 0.25 * w ** (2 * p) * R(ev, Y, R(ev, Z, X))
        )
        return LiftVector(hor, np.zeros_like(X))
    if case == "vvh":
        hor = (
            wp * R(X, Y, Z)
            + p * w ** (p + 1) * ((Y @ ev) * R(ev, X, Z) - (X @ ev) * R(ev, Y, Z))
            + 0.25
            * w ** (2 * p)
            * (R(ev, X, R(ev, Y, Z)) - R(ev, Y, R(ev, X, Z)))
        )
        return LiftVector(hor, np.zeros_like(X))
    if case == "vvv":
        cs = coefficients(params, e.t, 2)
        ver = (
            cs.A * (Z @ ev) * _r_shape(X, Y, ev)
            + cs.B * _r_shape(X, Y, Z)
            + cs.C * (_r_shape(X, Y, Z) @ ev) * ev
        )
        return LiftVector(np.zeros_like(X), ver)
    raise ValueError(f"unknown riemann case {case!r}")


def riemann_full(
    params: Params,
    e: FiberPoint,
    A: LiftVector,
    B: LiftVector,
    C: LiftVector,
    base: BaseCurvature,
) -> LiftVector:
    """R~(A, B)C for arbitrary lifted vectors, assembled from the six cases."""
    n = e.n
    out = LiftVector(np.zeros(n), np.zeros(n))
    for cpart, ctag in ((C.h, "h"), (C.v, "v")):
        if not cpart.any():
            continue
        # (h,h), (h,v), (v,v) blocks directly; (v,h) by antisymmetry.
        out = out + riemann(params, e, "hh" + ctag, A.h, B.h, cpart, base)
        out = out + riemann(params, e, "hv" + ctag, A.h, B.v, cpart, base)
        out = out + (-1.0) * riemann(params, e, "hv" + ctag, B.h, A.v, cpart, base)
        out = out + riemann(params, e, "vv" + ctag, A.v, B.v, cpart, base)
    return out


def _check_orthonormal(X, Y):
    if abs(X @ X - 1) > ORTHO_TOL or abs(Y @ Y - 1) > ORTHO_TOL or abs(X @ Y) > ORTHO_TOL:
        raise ValueError("X, Y must be orthonormal in the base frame")


def sectional(
    params: Params,
    e: FiberPoint,
    plane: str,
    X: np.ndarray,
    Y: np.ndarray,
    base: BaseCurvature,
) -> float:
    """Sectional curvature of the plane spanned by the named lifts of X and Y.

    X and Y must be orthonormal base vectors.  For mixed planes spanned by
    non-orthogonal base vectors use :func:`sectional_plane`.
    """
    check_fiber_radius(params, e.t)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    _check_orthonormal(X, Y)
    p, q = float(params.p), float(params.q)
    w = omega(e.t)
    ev = e.e
    if plane == "hh":
        base_k = float(base.R(X, Y, Y) @ X)
        rxye = base.R(X, Y, ev)
        return base_k - 0.75 * w**p * float(rxye @ rxye)
    if plane == "hv":
        reyx = base.R(ev, Y, X)
        return w**p * float(reyx @ reyx) / (4.0 * (1.0 + q * (Y @ ev) ** 2))
    if plane == "vv":
        u = float((X @ ev) ** 2 + (Y @ ev) ** 2)
        den = 1.0 + q * u
        if den <= 0:
            raise DomainError("vertical plane leaves the positive-definite cone")
        cs = coefficients(params, e.t, 2)
        return w ** (-p) * (cs.A * u + cs.B) / den
    raise ValueError(f"unknown plane {plane!r}")


def sectional_plane(
    params: Params,
    e: FiberPoint,
    A: LiftVector,
    B: LiftVector,
    base: BaseCurvature,
) -> float:
    """Sectional curvature of an arbitrary 2-plane span(A, B) in the total space."""
    num = metric_h(params, e, riemann_full(params, e, A, B, B, base), A)
    gram = (
        metric_h(params, e, A, A) * metric_h(params, e, B, B)
        - metric_h(params, e, A, B) ** 2
    )
    if gram <= 0:
        raise ValueError("A, B do not span a non-degenerate 2-plane")
    return num / gram


def ricci(
    params: Params,
    n: int,
    e: FiberPoint,
    case: str,
    X: np.ndarray,
    Y: np.ndarray,
    base: BaseCurvature,
) -> float:
    """Ricci form on the named lifts of X and Y (frame sums over the standard basis)."""
    check_fiber_radius(params, e.t)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    p = float(params.p)
    w = omega(e.t)
    ev = e.e
    basis = np.eye(n)
    if case == "hh":
        rho = sum(float(base.R(X, basis[i], basis[i]) @ Y) for i in range(n))
        s1 = sum(
            float(base.R(X, basis[i], ev) @ base.R(Y, basis[i], ev)) for i in range(n)
        )
        s2 = sum(
            float(base.R(ev, basis[i], X) @ base.R(ev, basis[i], Y)) for i in range(n)
        )
        return rho - 0.75 * w**p * s1 + 0.25 * w**p * s2
    if case == "hv":
        if base.delta_op is None:
            raise ValueError("horizontal-vertical Ricci needs the base coderivative")
        return 0.5 * w**p * float(base.delta_op(X, ev) @ Y)
    if case == "vv":
        s = sum(
            float(base.R(X, ev, basis[i]) @ base.R(Y, ev, basis[i])) for i in range(n)
        )
        cs = coefficients(params, e.t, n)
        return (
            0.25 * w ** (2 * p) * s
            + cs.alpha * float(X @ Y)
            + cs.beta * float(X @ ev) * float(Y @ ev)
        )
    raise ValueError(f"unknown ricci case {case!r}")


def scalar(params: Params, n: int, e: FiberPoint, base: BaseCurvature) -> float:
    """Scalar curvature of h_{p,q} at the fibre point e."""
    check_fiber_radius(params, e.t)
    p = float(params.p)
    w = omega(e.t)
    basis = np.eye(n)
    frame_sum = sum(
        float(np.dot(rij := base.R(basis[i], basis[j], e.e), rij))
        for i in range(n)
        for j in range(n)
    )
    cs = coefficients(params, e.t, n)
    return (
        base.scalar(n)
        - 0.25 * w**p * frame_sum
        + (n - 1) * w ** (-p) * (2 * cs.alpha - (n - 2) * cs.B)
    )


def tangent_frame(params: Params, e: FiberPoint) -> list[LiftVector]:
    """h-orthonormal frame of the total tangent space at e (horizontal first)."""
    check_fiber_radius(params, e.t)
    n = e.n
    p = float(params.p)
    basis = np.eye(n)
    if e.t > 0:
        ehat = e.e / math.sqrt(e.t)
        # complete ehat to a base-orthonormal frame by Gram-Schmidt
        cols = [ehat]
        for i in range(n):
            v = basis[i] - sum((basis[i] @ c) * c for c in cols)
            nv = np.linalg.norm(v)
            if nv > 1e-8:
                cols.append(v / nv)
            if len(cols) == n:
                break
        scale = omega(e.t) ** (-p / 2)
        vert = [math.sqrt(omega_q(e.t, params)) * scale * cols[0]]
        vert.extend(scale * c for c in cols[1:])
    else:
        cols = [basis[i] for i in range(n)]
        vert = cols
    frame = [LiftVector.horizontal(c) for c in cols]
    frame.extend(LiftVector.vertical(v) for v in vert)
    return frame


# ---------------------------------------------------------------------------
# batched space-form sectional curvature for random-plane scans


def sectional_batch_spaceform(
    params: Params,
    c: float,
    e: FiberPoint,
    Ah: np.ndarray,
    Av: np.ndarray,
    Bh: np.ndarray,
    Bv: np.ndarray,
) -> np.ndarray:
    """Sectional curvatures of m arbitrary planes span(A_k, B_k), space-form base.

    The inputs are (m, n) arrays of horizontal and vertical components; the
    result is an (m,) array.  Mirrors :func:`sectional_plane` restricted to
    R = c*r, vectorized over the batch axis.
    """
    check_fiber_radius(params, e.t)
    p, q = float(params.p), float(params.q)
    c = float(c)
    w = omega(e.t)
    wq = omega_q(e.t, params)
    wp = w**p
    ev = e.e

    EV = np.broadcast_to(ev, Ah.shape)

    def dot(U, V):
        return np.einsum("...i,...i->...", U, V)

    def dote(U):
        return U @ ev

    def R(X, Y, Z):
        # rows: c*( <Y,Z> X - <X,Z> Y )
        return c * (dot(Y, Z)[..., None] * X - dot(X, Z)[..., None] * Y)

    def Re(X, Y):
        # R(e, X)Y = c*( <X,Y> e - <e,Y> X )
        return c * (dot(X, Y)[..., None] * ev[None, :] - dote(Y)[..., None] * X)

    cs = coefficients(params, e.t, 2)

    def rtilde(A_h, A_v, B_h, B_v, C_h, C_v):
        """R~(A,B)C componentwise over the batch; returns (H, V)."""
        H = np.zeros_like(A_h)
        V = np.zeros_like(A_h)
        for Ch, Cv, ctag in ((C_h, None, "h"), (None, C_v, "v")):
            if ctag == "h":
                Z = Ch
                # (h,h,h)
                X, Y = A_h, B_h
                H += R(X, Y, Z) - 0.25 * wp * (
                    Re(R(Y, Z, EV), X) - Re(R(X, Z, EV), Y) - 2 * Re(R(X, Y, EV), Z)
                )
                # (h,v,h) and -(h,v,h) swapped
                for sign, X, Y in ((1.0, A_h, B_v), (-1.0, B_h, A_v)):
                    rxze = R(X, Z, EV)
                    V += sign * (
                        -0.25 * wp * R(X, Re(Y, Z), EV)
                        - 0.5 * p * w * dote(Y)[:, None] * rxze
                        + 0.5 * R(X, Z, Y)
                        + 0.5 * (p * w + q) * wq * dot(rxze, Y)[:, None] * ev[None, :]
                    )
                # (v,v,h)
                X, Y = A_v, B_v
                H += (
                    wp * R(X, Y, Z)
                    + p * w ** (p + 1) * (dote(Y)[:, None] * Re(X, Z) - dote(X)[:, None] * Re(Y, Z))
                    + 0.25 * w ** (2 * p) * (Re(X, Re(Y, Z)) - Re(Y, Re(X, Z)))
                )
            else:
                Z = Cv
                # (h,h,v)
                X, Y = A_h, B_h
                rxye = R(X, Y, EV)
                V += (
                    R(X, Y, Z)
                    + 0.25 * wp * (R(Y, Re(Z, X), EV) - R(X, Re(Z, Y), EV))
                    - p * w * dote(Z)[:, None] * rxye
                    + (p * w + q) * wq * dot(rxye, Z)[:, None] * ev[None, :]
                )
                # (h,v,v) and swap
                for sign, X, Y in ((1.0, A_h, B_v), (-1.0, B_h, A_v)):
                    H += sign * (
                        0.5 * p * w ** (p + 1) * (dote(Y)[:, None] * Re(Z, X) - dote(Z)[:, None] * Re(Y, X))
                        - 0.5 * wp * R(Y, Z, X)
                        - 0.25 * w ** (2 * p) * Re(Y, Re(Z, X))
                    )
                # (v,v,v)
                X, Y = A_v, B_v
                rxyz = dot(Y, Z)[:, None] * X - dot(X, Z)[:, None] * Y
                rxye_s = dote(Y)[:, None] * X - dote(X)[:, None] * Y
                V += (
                    cs.A * dote(Z)[:, None] * rxye_s
                    + cs.B * rxyz
                    + cs.C * dote(rxyz)[:, None] * ev[None, :]
                )
        return H, V

    RH, RV = rtilde(Ah, Av, Bh, Bv, Bh, Bv)

    def pair(Uh, Uv, Vh, Vv):
        return dot(Uh, Vh) + wp * (dot(Uv, Vv) + q * dote(Uv) * dote(Vv))

    num = pair(RH, RV, Ah, Av)
    gram = pair(Ah, Av, Ah, Av) * pair(Bh, Bv, Bh, Bv) - pair(Ah, Av, Bh, Bv) ** 2
    return num / gram
