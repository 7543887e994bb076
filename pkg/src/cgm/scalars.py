"""Scalar kernels of the metric family h_{p,q} on tangent bundles.

Everything in this module is a plain function of the parameters (p, q), the
squared fibre radius t = |e|^2, the base dimension n and (where relevant) the
base curvature c: weight functions, the curvature coefficients A, B, C and the
Ricci coefficients alpha, beta, the sign-controlling polynomials P, Q, C, G,
and the auxiliary functions mu, lambda, nu and the case multipliers m1..m5.

Polynomial coefficients are expanded in exact rational arithmetic whenever the
inputs are rational (int / Fraction); float inputs propagate as floats.  Sign
decisions made downstream (coefficient-positivity searches, region boundaries)
rely on this exactness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Union

Number = Union[int, float, Fraction]

#: Evaluations require q*t > -1 + EPS_DOM; closer approaches to the singular
#: sphere-bundle boundary must go through the explicit limit formulas.
EPS_DOM = 1e-9


class DomainError(ValueError):
    """Raised when an evaluation point leaves the Riemannian ball bundle."""


def _exactable(*xs: Number) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in xs)


def _as_fraction(x: Number) -> Fraction:
    # Fraction(float) is exact (binary expansion), so this never rounds.
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Params:
    """Metric parameters (p, q); no sign restriction, q < 0 permitted."""

    p: Number
    q: Number

    def __post_init__(self):
        for v in (self.p, self.q):
            if not math.isfinite(float(v)):
                raise ValueError("parameters must be finite")

    def t_sup(self) -> float:
        """Supremum of the admissible fibre radii: +inf for q >= 0, -1/q else."""
        return math.inf if self.q >= 0 else -1.0 / float(self.q)

    def contains_t(self, t: Number) -> bool:
        return t >= 0 and float(self.q) * float(t) > -1.0 + EPS_DOM


def check_fiber_radius(params: Params, t: Number) -> None:
    if t < 0:
        raise DomainError(f"t = {t} must be non-negative")
    if not params.contains_t(t):
        raise DomainError(
            f"q*t = {float(params.q) * float(t)} <= -1 + {EPS_DOM}: outside the ball bundle"
        )


def omega(t: Number) -> float:
    """Radial weight 1/(1 + t) for t = |e|^2 >= 0."""
    if t < 0:
        raise DomainError(f"t = {t} must be non-negative")
    return 1.0 / (1.0 + float(t))


def omega_q(t: Number, params: Params) -> float:
    """Deformed weight 1/(1 + q t), positive on the ball bundle."""
    check_fiber_radius(params, t)
    return 1.0 / (1.0 + float(params.q) * float(t))


@dataclass(frozen=True)
class CoefficientSet:
    """Vertical curvature coefficients A, B, C and Ricci coefficients alpha, beta."""

    A: float
    B: float
    C: float
    alpha: float
    beta: float


def coefficients(params: Params, t: Number, n: int) -> CoefficientSet:
    """Evaluate A, B, C, alpha, beta at squared fibre radius t.

    A, B, C weight the three tensor shapes of the purely vertical curvature.
    alpha and beta are the base-curvature-independent parts of the vertical
    Ricci form; they carry the dimension n.  C is evaluated from its own
    closed form and must satisfy omega_q * (A - q*B) == C to rounding.
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    check_fiber_radius(params, t)
    p, q = float(params.p), float(params.q)
    w = omega(t)
    wq = omega_q(t, params)
    A = p * w * wq * ((p + 2 * q - 2) * w - q)
    B = wq * (p * p * w * w - p * (p - 2) * w + q)
    C = wq * wq * (p * (p - 2) * (1 - q) * w * w + p * q * (p - 3) * w - q * q)
    alpha = float(t) * wq * A + (n - 2 + wq) * B
    beta = (n - 1 - wq) * A + q * wq * B
    return CoefficientSet(A, B, C, alpha, beta)


def extended_AB(params: Params, t: Number) -> tuple[float, float]:
    """Smooth extensions of A and B across the sphere-bundle boundary.

    Only the line p + q = 1 (q < 0) admits such extensions: A extends to
    (q-1)*omega^2 and B to (1-q)*omega^2 + omega, so B -> -q on the boundary.
    """
    if params.p + params.q != 1:
        raise DomainError("smooth boundary extensions exist only for p + q = 1")
    q = float(params.q)
    w = omega(t)
    return (q - 1) * w * w, (1 - q) * w * w + w


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class PolySpec:
    """Polynomial given by ascending coefficients, tagged by family kind."""

    coefficients: tuple
    kind: str

    def __post_init__(self):
        if self.kind not in ("P", "Q", "C", "G"):
            raise ValueError(f"unknown polynomial kind {self.kind!r}")

    def evaluate(self, t):
        acc = 0.0
        for ck in reversed(self.coefficients):
            acc = acc * t + float(ck)
        return acc

    def evaluate_exact(self, t: Number):
        acc: Number = 0
        for ck in reversed(self.coefficients):
            acc = acc * t + ck
        return acc

    def as_floats(self) -> tuple:
        return tuple(float(c) for c in self.coefficients)

    def degree(self) -> int:
        for k in range(len(self.coefficients) - 1, -1, -1):
            if self.coefficients[k] != 0:
                return k
        return 0


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [0 * (a[0] * b[0])] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return out


def _poly_add(a: Sequence, b: Sequence) -> list:
    out = list(a) + [0] * (len(b) - len(a)) if len(b) > len(a) else list(a)
    for j, bj in enumerate(b):
        out[j] = out[j] + bj
    return out


def _poly_pow(a: Sequence, k: int) -> list:
    out = [1]
    for _ in range(k):
        out = _poly_mul(out, a)
    return out


def poly_P(params: Params) -> PolySpec:
    """Sign polynomial of vertical planes containing the canonical vector."""
    p, q = params.p, params.q
    return PolySpec((2 * p + q, (p + 2) * q, (1 - p) * q), "P")


def poly_Q(params: Params) -> PolySpec:
    """Sign polynomial of vertical planes orthogonal to the fibre point."""
    p, q = params.p, params.q
    return PolySpec((2 * p + q, 2 * p + 2 * q - p * p, q), "Q")


def poly_C(params: Params, n: int) -> PolySpec:
    """Cubic 2*P(t) + (n-2)*(1+q.t)*Q(t) controlling the flat-base scalar sign."""
    if n < 2:
        raise ValueError("n >= 2 required")
    q = params.q
    two_p = [2 * c for c in poly_P(params).coefficients]
    rest = _poly_mul([1, q], poly_Q(params).coefficients)
    out = _poly_add(two_p + [0 * q], [(n - 2) * c for c in rest])
    return PolySpec(tuple(out), "C")


def poly_G(params: Params, n: int, c: Number) -> PolySpec:
    """Scalar-sign polynomial over a curvature-c space form, for integer p >= 1.

    G(t) = n c (1+t)^p (1+q t)^2 - (c^2/2) t (1+q t)^2 + (1+t)^(2p-2) C(t),
    expanded by exact polynomial arithmetic; G > 0 on t >= 0 certifies
    positive scalar curvature (q >= 0).
    """
    p_num = params.p
    if float(p_num) < 1 or float(p_num) != int(p_num):
        raise ValueError("poly_G requires a positive integer p")
    p = int(p_num)
    if _exactable(params.q, c) or isinstance(params.q, float) or isinstance(c, float):
        q = _as_fraction(params.q)
        cc = _as_fraction(c)
    else:  # pragma: no cover - all Number types handled above
        q, cc = params.q, c
    one_qt2 = _poly_mul([1, q], [1, q])
    term1 = [n * cc * v for v in _poly_mul(_poly_pow([1, 1], p), one_qt2)]
    term2 = [-cc * cc * Fraction(1, 2) * v for v in _poly_mul([0, 1], one_qt2)]
    cpoly = poly_C(Params(p, q), n).coefficients
    term3 = _poly_mul(_poly_pow([1, 1], 2 * p - 2), list(cpoly))
    out = _poly_add(_poly_add(term1, term2), term3)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return PolySpec(tuple(out), "G")


# ---------------------------------------------------------------------------
# auxiliary functions of p alone


def mu(p: Number) -> Number:
    """p^p / (p-1)^(p-1) for p >= 1, with mu(1) = 1; exact for integer p."""
    if p < 1:
        raise DomainError("mu is defined for p >= 1")
    if p == 1:
        return Fraction(1) if _exactable(p) else 1.0
    if isinstance(p, float) and p.is_integer():
        p = int(p)
    if isinstance(p, int):
        return Fraction(p**p, (p - 1) ** (p - 1))
    if isinstance(p, Fraction) and p.denominator == 1:
        ip = int(p)
        return Fraction(ip**ip, (ip - 1) ** (ip - 1))
    fp = float(p)
    return fp**fp / (fp - 1) ** (fp - 1)


def hyperbola_lambda(p: Number) -> Number:
    """q-value of the hyperbola p q + 8 p + 8 q = 8 at abscissa p (p != -8)."""
    if p == -8:
        raise DomainError("lambda has a pole at p = -8")
    if _exactable(p):
        return _as_fraction(8 * (1 - p)) / _as_fraction(8 + p)
    return 8.0 * (1.0 - p) / (8.0 + p)


def hyperbola_nu(p: Number) -> Number:
    """q-value of the hyperbola p q + 2 p + 2 q = 2 at abscissa p (p != -2)."""
    if p == -2:
        raise DomainError("nu has a pole at p = -2")
    if _exactable(p):
        return _as_fraction(2 * (1 - p)) / _as_fraction(2 + p)
    return 2.0 * (1.0 - p) / (2.0 + p)


@dataclass(frozen=True)
class AnalysisScalars:
    """Discriminants and critical points of P and Q, plus the kappa cuts."""

    D: float
    E: float
    t0: Optional[float]
    s0: Optional[float]
    kappa1: float
    kappa2: float


def analysis_scalars(params: Params) -> AnalysisScalars:
    p, q = float(params.p), float(params.q)
    D = p * q * (p * q + 8 * p + 8 * q - 8)
    E = p * p * (p * p - 4 * p - 4 * q + 4)
    t0 = (p + 2) / (2 * (p - 1)) if p != 1 else None
    s0 = -(2 * p + 2 * q - p * p) / (2 * q) if q != 0 else None
    return AnalysisScalars(D, E, t0, s0, (p - 2) ** 2 / 4, p * (p - 2) / 2)


class Multipliers(NamedTuple):
    m1: Optional[float]
    m2: Optional[float]
    m3: Optional[float]
    m4: Optional[float]
    m5: Optional[float]


def multipliers(params: Params, n: int) -> Multipliers:
    """Case multipliers m1..m5 (>= 1); None outside their stated domains."""
    p, q = float(params.p), float(params.q)
    m1 = m2 = m3 = m4 = m5 = None
    if p > 0:
        m1 = math.sqrt(1 + 2 * (n - 2) / (n * n * p))
    if p >= 1:
        mp = float(mu(p))
        m2 = math.sqrt(1 + 4 * p / (n * mp))
        m3 = math.sqrt(1 + 2 * (p * p - 1) / (n * p * mp))
    if p > 1:
        mp = float(mu(p))
        if hyperbola_lambda(p) < q < 0:
            D = p * q * (p * q + 8 * p + 8 * q - 8)
            m4 = math.sqrt(1 + D / (4 * (p - 1) * (q - 1) * mp))
        if p + q >= 1:
            m5 = math.sqrt(1 + (p + q - 1) / mp)
    return Multipliers(m1, m2, m3, m4, m5)


# ---------------------------------------------------------------------------
# the horizontal-bound function f and the scalar curvature over space forms


def f_value(t, p):
    """t / (1+t)^p, the squared-radius weight bounding horizontal curvature."""
    return t / (1.0 + t) ** p


class FSup(NamedTuple):
    sup: float
    attained: bool
    argmax: Optional[float]


def f_sup(params: Params) -> FSup:
    """Supremum of f(t) = t/(1+t)^p over the admissible fibre radii.

    For p < 1 the function is unbounded on R+ and the result carries
    sup = inf.  For p >= 1 the supremum is 1/mu(p); it is attained at
    t = 1/(p-1) except when that point is the t -> infinity limit (p = 1)
    or sits on the open boundary -1/q (p + q <= 1, q < 0), in which case
    the supremum is the one-sided limit value.
    """
    p, q = float(params.p), float(params.q)
    if p < 1:
        return FSup(math.inf, False, None)
    if p == 1:
        if q >= 0:
            return FSup(1.0, False, None)
        return FSup(f_value(-1.0 / q, p), False, None)
    t_star = 1.0 / (p - 1.0)
    if q >= 0 or p + q > 1:
        return FSup(1.0 / float(mu(p)), True, t_star)
    if p + q == 1:
        return FSup(1.0 / float(mu(p)), False, None)
    # endpoint limit; clamp the radius so f stays evaluable for denormal q
    return FSup(f_value(min(-1.0 / q, 1e15), p), False, None)


def phi(params: Params, n: int, t) -> float:
    """(1+t)^(p-2) (1+qt)^(-2) C(t), the fibre contribution to the scalar curvature."""
    p, q = float(params.p), float(params.q)
    cpoly = poly_C(params, n)
    return (1.0 + t) ** (p - 2) * (1.0 + q * t) ** (-2) * cpoly.evaluate(t)


def scalar_curvature_spaceform(params: Params, n: int, c: Number, t: Number) -> float:
    """Scalar curvature of h_{p,q} over a curvature-c space form at radius t."""
    if n < 2:
        raise ValueError("n >= 2 required")
    check_fiber_radius(params, t)
    c, t = float(c), float(t)
    return (n - 1) * (n * c - 0.5 * c * c * f_value(t, float(params.p)) + phi(params, n, t))
