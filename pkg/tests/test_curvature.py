import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cgm.scalars import Params, mu, phi, scalar_curvature_spaceform
from cgm.curvature import (
    BaseCurvature,
    FiberPoint,
    LiftVector,
    connection,
    metric_h,
    ricci,
    riemann,
    riemann_full,
    scalar,
    sectional,
    sectional_batch_spaceform,
    sectional_plane,
    tangent_frame,
)

RNG = np.random.default_rng(2024)
E1, E2, E3 = np.eye(3)


def rand_point(n, q, rng=RNG):
    d = rng.standard_normal(n)
    d /= np.linalg.norm(d)
    cap = 3.0 if q >= 0 else -0.9 / q
    return FiberPoint(math.sqrt(rng.uniform(0, cap)) * d)


class TestMetric:
    def test_sasaki_is_euclidean_pairing(self):
        params = Params(0, 0)
        e = FiberPoint(np.array([0.3, -0.2, 0.9]))
        A = LiftVector(RNG.standard_normal(3), RNG.standard_normal(3))
        B = LiftVector(RNG.standard_normal(3), RNG.standard_normal(3))
        assert_allclose(metric_h(params, e, A, B), A.h @ B.h + A.v @ B.v, rtol=1e-14)

    def test_canonical_vector_null_on_boundary(self):
        params = Params(1.3, -1)
        vals = []
        for eps in (1e-2, 1e-4, 1e-6):
            e = FiberPoint.radial(1 - eps, 3)
            U = LiftVector.canonical_vertical(e)
            vals.append(metric_h(params, e, U, U))
        assert vals[0] > vals[1] > vals[2]
        assert vals[2] < 1e-5

    def test_unit_vertical_at_origin(self):
        e = FiberPoint.zero(2)
        V = LiftVector.vertical(np.array([1.0, 0.0]))
        assert metric_h(Params(1, 1), e, V, V) == 1.0


class TestConnection:
    def test_vv_sasaki_vanishes(self):
        base = BaseCurvature.space_form(1.0)
        e = rand_point(3, 0)
        out = connection(Params(0, 0), e, "vv", E1, E2 + E1, base)
        assert_allclose(out.h, 0, atol=1e-15)
        assert_allclose(out.v, 0, atol=1e-15)

    def test_vv_zero_section_vanishes(self):
        out = connection(Params(2, -1), FiberPoint.zero(3), "vv", E1, E2, BaseCurvature.space_form(2.0))
        assert_allclose(out.v, 0, atol=1e-15)

    def test_hh_space_form_vertical_part(self):
        c, params = 1.7, Params(1, 1)
        e = FiberPoint(np.array([0.4, 0.1, -0.2]))
        out = connection(params, e, "hh", E1, E2, BaseCurvature.space_form(c))
        want = -0.5 * c * ((E2 @ e.e) * E1 - (E1 @ e.e) * E2)
        assert_allclose(out.v, want, rtol=1e-14)
        assert_allclose(out.h, 0, atol=1e-15)

    def test_hh_carries_supplied_derivative(self):
        nab = np.array([0.3, 0.0, -0.1])
        out = connection(Params(1, 1), FiberPoint.zero(3), "hh", E1, E2, BaseCurvature.space_form(0), nabla_xy=nab)
        assert_allclose(out.h, nab, rtol=1e-15)


class TestRiemann:
    def test_vvv_sasaki_flat(self):
        out = riemann(Params(0, 0), rand_point(3, 0), "vvv", E1, E2, E2, BaseCurvature.space_form(1.0))
        assert_allclose(out.v, 0, atol=1e-15)

    def test_vvv_origin_is_B_times_X(self):
        out = riemann(Params(1, 1), FiberPoint.zero(3), "vvv", E1, E2, E2, BaseCurvature.space_form(1.0))
        assert_allclose(out.v, 3 * E1, rtol=1e-14)

    def test_hvv_flat_base_vanishes(self):
        out = riemann(Params(1.7, 0.4), rand_point(3, 0.4), "hvv", E1, E2, E3, BaseCurvature.space_form(0.0))
        assert_allclose(out.h, 0, atol=1e-15)
        assert_allclose(out.v, 0, atol=1e-15)


class TestSectional:
    def test_zero_section_values(self):
        base = BaseCurvature.space_form(0.3)
        e = FiberPoint.zero(3)
        assert_allclose(sectional(Params(1, 1), e, "vv", E1, E2, base), 3.0, rtol=1e-14)
        assert sectional(Params(1, 1), e, "hv", E1, E2, base) == 0.0

    def test_hh_radial_plane_on_unit_sphere(self):
        # p = 0, t = 1, X along e, Y orthogonal: 1 - 3/4 = 1/4
        e = FiberPoint.radial(1.0, 3)
        k = sectional(Params(0, 2), e, "hh", E1, E2, BaseCurvature.space_form(1.0))
        assert_allclose(k, 0.25, rtol=1e-14)

    def test_boundary_value_is_mu(self):
        e = FiberPoint.radial(1 - 1e-6, 3)
        k = sectional(Params(2, -1), e, "vv", E2, E3, BaseCurvature.space_form(0.0))
        assert_allclose(k, float(mu(2)), rtol=1e-4)

    def test_orthonormality_enforced(self):
        e = FiberPoint.zero(3)
        with pytest.raises(ValueError):
            sectional(Params(1, 1), e, "vv", E1, E1, BaseCurvature.space_form(0.0))
        with pytest.raises(ValueError):
            sectional(Params(1, 1), e, "hh", 2 * E1, E2, BaseCurvature.space_form(0.0))

    def test_flat_fibres_iff_sasaki(self):
        base = BaseCurvature.space_form(0.0)
        for _ in range(200):
            assert sectional(Params(0, 0), rand_point(3, 0), "vv", E1, E2, base) == 0.0
        for p, q in [(1, 1), (2, 0), (0.5, -0.3), (-1, 3)]:
            vals = [
                abs(sectional(Params(p, q), rand_point(3, q), "vv", E1, E2, base))
                for _ in range(100)
            ]
            assert max(vals) > 1e-12


class TestRicci:
    def test_hv_space_form_zero(self):
        e = rand_point(3, 1)
        assert ricci(Params(1, 1), 3, e, "hv", E1, E2, BaseCurvature.space_form(2.0)) == 0.0

    def test_vv_origin_alpha(self):
        got = ricci(Params(1, 1), 3, FiberPoint.zero(3), "vv", E1, E1, BaseCurvature.space_form(1.0))
        assert_allclose(got, 2 * 3, rtol=1e-14)  # (n-1)(2p+q)

    def test_hh_example(self):
        e = FiberPoint.radial(1.0, 3)
        got = ricci(Params(0, 1), 3, e, "hh", E2, E2, BaseCurvature.space_form(1.0))
        assert_allclose(got, 1.5, rtol=1e-14)

    def test_hv_needs_coderivative_for_custom_base(self):
        def r_op(X, Y, Z):
            return (Y @ Z) * X - (X @ Z) * Y

        base = BaseCurvature.custom(r_op)
        with pytest.raises(ValueError):
            ricci(Params(1, 1), 3, rand_point(3, 1), "hv", E1, E2, base)


class TestScalar:
    def test_zero_section(self):
        got = scalar(Params(1, 1), 3, FiberPoint.zero(3), BaseCurvature.space_form(1.0))
        assert_allclose(got, 6 + 18, rtol=1e-14)

    def test_flat_base_equals_phi(self):
        params = Params(1.4, 0.6)
        for t in (0.0, 0.8, 2.5):
            e = FiberPoint.radial(t, 3)
            got = scalar(params, 3, e, BaseCurvature.space_form(0.0))
            assert_allclose(got, 2 * phi(params, 3, t), rtol=1e-12)

    def test_matches_space_form_kernel(self):
        for p, q, n, c, t in [(1, 1, 2, 1.0, 0.5), (2, -1, 3, -1.0, 0.6), (0, 0, 3, 2.0, 1.2)]:
            e = FiberPoint.radial(t, n)
            got = scalar(Params(p, q), n, e, BaseCurvature.space_form(c))
            want = scalar_curvature_spaceform(Params(p, q), n, c, t)
            assert_allclose(got, want, rtol=1e-10)


class TestAssembledTensor:
    def rand_lift(self, n):
        return LiftVector(RNG.standard_normal(n), RNG.standard_normal(n))

    def test_symmetries_and_bianchi(self):
        worst = 0.0
        for _ in range(200):
            n = int(RNG.integers(2, 4))
            params = Params(RNG.uniform(-3, 4), RNG.uniform(-2, 3))
            base = BaseCurvature.space_form(RNG.uniform(-2, 2))
            e = rand_point(n, float(params.q))
            A, B, C, D = (self.rand_lift(n) for _ in range(4))
            RAB = riemann_full(params, e, A, B, C, base)
            RBA = riemann_full(params, e, B, A, C, base)
            RCD = riemann_full(params, e, C, D, A, base)
            val = metric_h(params, e, RAB, D)
            scale = max(abs(val), 1.0)
            worst = max(worst, abs(val + metric_h(params, e, RBA, D)) / scale)
            worst = max(worst, abs(val - metric_h(params, e, RCD, B)) / scale)
            bi = RAB + riemann_full(params, e, B, C, A, base) + riemann_full(params, e, C, A, B, base)
            worst = max(worst, (np.linalg.norm(bi.h) + np.linalg.norm(bi.v)) / scale)
        assert worst <= 1e-9

    def test_vv_plane_matches_quotient(self):
        for _ in range(50):
            params = Params(RNG.uniform(-2, 3), RNG.uniform(-1.5, 2))
            base = BaseCurvature.space_form(RNG.uniform(-2, 2))
            e = rand_point(3, float(params.q))
            direct = sectional(params, e, "vv", E1, E2, base)
            via = sectional_plane(params, e, LiftVector.vertical(E1), LiftVector.vertical(E2), base)
            assert_allclose(via, direct, rtol=1e-10, atol=1e-12)

    def test_batch_matches_scalar_assembly(self):
        params = Params(1.3, -0.4)
        base = BaseCurvature.space_form(0.7)
        e = FiberPoint(np.array([0.4, 0.1, -0.3]))
        raw = RNG.standard_normal((30, 4, 3))
        batch = sectional_batch_spaceform(params, 0.7, e, raw[:, 0], raw[:, 1], raw[:, 2], raw[:, 3])
        for i in range(30):
            one = sectional_plane(
                params, e, LiftVector(raw[i, 0], raw[i, 1]), LiftVector(raw[i, 2], raw[i, 3]), base
            )
            assert_allclose(batch[i], one, rtol=1e-10, atol=1e-12)

    def test_ricci_is_sectional_sum_over_completion(self):
        for n in (2, 3):
            params = Params(1.2, 0.7)
            base = BaseCurvature.space_form(1.3)
            e = rand_point(n, 0.7)
            frame = tangent_frame(params, e)
            V = frame[n]
            total = sum(sectional_plane(params, e, V, F, base) for F in frame if F is not V)
            rho = ricci(params, n, e, "vv", V.v, V.v, base) / metric_h(params, e, V, V)
            assert_allclose(total, rho, rtol=1e-8)

    def test_scalar_is_ricci_trace(self):
        for n in (2, 3):
            params = Params(0.8, -0.4)
            base = BaseCurvature.space_form(-1.1)
            e = rand_point(n, -0.4)
            trace = sum(
                ricci(params, n, e, "hh", F.h, F.h, base)
                if F.h.any()
                else ricci(params, n, e, "vv", F.v, F.v, base)
                for F in tangent_frame(params, e)
            )
            assert_allclose(trace, scalar(params, n, e, base), rtol=1e-10)


def test_space_form_frame_sum_scaling():
    # sum over the frame of |R(e_i, e_j)e|^2 grows as 2(n-1) c^2 t, which the
    # scalar curvature consumes through its quarter-weighted middle term
    for n, c, t in [(2, 1.0, 0.7), (3, -2.0, 1.3), (4, 0.5, 2.0)]:
        e = FiberPoint.radial(t, n)
        base = BaseCurvature.space_form(c)
        basis = np.eye(n)
        total = sum(
            float(np.dot(rij := base.R(basis[i], basis[j], e.e), rij))
            for i in range(n)
            for j in range(n)
        )
        assert_allclose(total, 2 * (n - 1) * c * c * t, rtol=1e-13)


def test_boundary_u_plane_ratio_for_regular_family():
    # for p + q = 1 the vertical plane through the canonical vector satisfies
    # (1+t)^(1+q) K = (2 - q + q t) / (1 + q t), unbounded at the boundary
    base = BaseCurvature.space_form(0.0)
    for p, t in [(2.0, 0.3), (2.0, 0.9), (1.5, 1.2)]:
        q = 1 - p
        e = FiberPoint.radial(t, 2)
        k = sectional(Params(p, q), e, "vv", E1[:2], E2[:2], base)
        want = (2 - q + q * t) / (1 + q * t) / (1 + t) ** (1 + q)
        assert_allclose(k, want, rtol=1e-12)


class TestFieldExtensionOperators:
    """Synthetic operators exercise the derivative-term slots of the formulas."""

    def probe_base(self):
        w_mark = np.array([1.0, 2.0, 3.0])

        def r_op(X, Y, Z):
            return (Y @ Z) * X - (X @ Z) * Y

        def nabla_op(W, X, Y, Z):
            return (W @ w_mark) * ((Y @ Z) * X - (X @ Z) * Y)

        def delta_op(X, e):
            return (X @ w_mark) * e

        return BaseCurvature.custom(r_op, nabla_op, delta_op)

    def test_nabla_terms_enter_expected_slots(self):
        base = self.probe_base()
        zero_base = BaseCurvature.custom(base.r_op)  # same curvature, no derivative data
        e = FiberPoint(np.array([0.2, 0.1, -0.3]))
        params = Params(1.0, 0.5)
        w = 1 / (1 + e.t)

        got = riemann(params, e, "hhh", E1, E2, E3, base)
        ref = riemann(params, e, "hhh", E1, E2, E3, zero_base)
        want = 0.5 * base.nabla_op(E3, E1, E2, e.e)
        assert_allclose(got.v - ref.v, want, rtol=1e-13)
        assert_allclose(got.h, ref.h, rtol=1e-13)

        got = riemann(params, e, "hhv", E1, E2, E3, base)
        ref = riemann(params, e, "hhv", E1, E2, E3, zero_base)
        want = 0.5 * w * (base.nabla_op(E1, e.e, E3, E2) - base.nabla_op(E2, e.e, E3, E1))
        assert_allclose(got.h - ref.h, want, rtol=1e-13)

        got = riemann(params, e, "hvh", E1, E2, E3, base)
        ref = riemann(params, e, "hvh", E1, E2, E3, zero_base)
        want = 0.5 * w * base.nabla_op(E1, e.e, E2, E3)
        assert_allclose(got.h - ref.h, want, rtol=1e-13)

    def test_coderivative_enters_hv_ricci(self):
        base = self.probe_base()
        e = FiberPoint(np.array([0.2, 0.1, -0.3]))
        params = Params(2.0, 0.0)
        got = ricci(params, 3, e, "hv", E1, E2, base)
        w = 1 / (1 + e.t)
        want = 0.5 * w**2 * float(base.delta_op(E1, e.e) @ E2)
        assert_allclose(got, want, rtol=1e-13)
