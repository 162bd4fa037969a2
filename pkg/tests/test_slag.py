"""Plane construction, characteristic angles, normal forms, graph forms."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slaglab.errors import (
    EigenvalueSignatureViolated,
    NotGraphical,
    NotTransverse,
)
from slaglab.generators import (
    random_angle_vector,
    random_close_graphical_pair,
    random_rotation,
    random_su3,
    random_transverse_pair,
    rng_from_seed,
)
from slaglab.slag import (
    AngleVector,
    RegionClass,
    SLagPlane,
    StabilizerClass,
    alpha_curve,
    angle_involution,
    characteristic_angles,
    classify_region,
    classify_stabilizer,
    graph_bilinear_form,
    graph_over,
    is_graphical,
    is_special_lagrangian,
    negative_eigenline,
    normal_form,
    plane_from_angles,
    planes_equal,
    special_phase_projection,
    stabilizer_dimension_numeric,
)

V0 = SLagPlane.standard()


class TestPlaneConstruction:
    def test_zero_angles_is_real_subspace(self):
        p = plane_from_angles([0.0, 0.0, 0.0])
        assert planes_equal(p, V0)
        assert p.is_special()

    def test_equal_thirds_is_special(self):
        assert plane_from_angles([np.pi / 3] * 3).is_special()

    def test_quarter_angles_not_special(self):
        p = plane_from_angles([np.pi / 4] * 3)
        assert not p.is_special()

    def test_frame_must_be_orthonormal(self):
        with pytest.raises(ValueError):
            SLagPlane(np.ones((3, 3)))

    def test_s_invariant_frame_independent(self, rng):
        for _ in range(20):
            u = random_su3(rng)
            o = random_rotation(rng)
            a = SLagPlane(u)
            b = SLagPlane(u @ o)
            assert planes_equal(a, b, tol=1e-12)
            assert a.distance(b) < 1e-13


class TestIsSpecialLagrangian:
    def test_standard_plane(self):
        assert is_special_lagrangian(np.eye(3), 1e-9)

    def test_single_quarter_phase_fails(self):
        frame = np.diag([np.exp(1j * np.pi / 4), 1.0, 1.0])
        assert not is_special_lagrangian(frame, 1e-9)

    def test_su3_orbit_stays_special(self, rng):
        for _ in range(50):
            a = random_su3(rng)
            theta = random_angle_vector(rng, 1).theta
            assert is_special_lagrangian(a @ plane_from_angles(theta).frame, 1e-9)

    def test_trace_criterion_equivalence(self, rng):
        for _ in range(500):
            theta = rng.uniform(0, np.pi, size=3)
            frame = plane_from_angles(theta).frame
            wall_dist = abs(theta.sum() / np.pi - round(theta.sum() / np.pi)) * np.pi
            assert is_special_lagrangian(frame, 1e-8) == (wall_dist < 1e-8)


class TestCharacteristicAngles:
    def test_normal_form_input(self, rng):
        av = random_angle_vector(rng, 1)
        got = characteristic_angles(V0, plane_from_angles(av.theta))
        assert np.allclose(got.theta, av.theta, atol=1e-12)
        assert got.trace_class == 1

    def test_su3_invariance(self, rng):
        for _ in range(50):
            av = random_angle_vector(rng, m=int(rng.integers(1, 3)))
            a = random_su3(rng)
            got = characteristic_angles(
                V0.transform(a), plane_from_angles(av.theta).transform(a)
            )
            assert np.allclose(got.theta, av.theta, atol=1e-10)
            assert got.trace_class == av.trace_class

    def test_swap_gives_involution(self, rng):
        for _ in range(50):
            v, vp, _ = random_transverse_pair(rng, m=int(rng.integers(1, 3)))
            direct = characteristic_angles(v, vp)
            swapped = characteristic_angles(vp, v)
            want = angle_involution(direct)
            assert np.allclose(swapped.theta, want.theta, atol=1e-10)
            assert swapped.trace_class == want.trace_class

    def test_non_transverse_rejected(self):
        with pytest.raises(NotTransverse):
            characteristic_angles(V0, V0)
        with pytest.raises(NotTransverse):
            characteristic_angles(V0, plane_from_angles([1e-12, 0.7, np.pi - 0.7 - 1e-12]))


class TestAngleInvolution:
    def test_equal_thirds(self):
        av = AngleVector(np.array([np.pi / 3] * 3), 1)
        out = angle_involution(av)
        assert np.allclose(out.theta, 2 * np.pi / 3)
        assert out.trace_class == 2

    def test_involution_squares_to_identity(self, rng):
        for _ in range(50):
            av = random_angle_vector(rng, m=int(rng.integers(1, 3)))
            back = angle_involution(angle_involution(av))
            assert np.allclose(back.theta, av.theta)
            assert back.trace_class == av.trace_class

    def test_no_fixed_points(self, rng):
        for _ in range(100):
            av = random_angle_vector(rng, m=int(rng.integers(1, 3)))
            out = angle_involution(av)
            assert out.trace_class != av.trace_class
            assert not np.allclose(out.theta, av.theta, atol=1e-6)

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2**31), m=st.integers(1, 2))
    def test_involution_property(self, seed, m):
        av = random_angle_vector(rng_from_seed(seed), m)
        out = angle_involution(av)
        assert abs(out.theta.sum() - (3 - m) * np.pi) < 1e-8
        back = angle_involution(out)
        assert np.allclose(back.theta, av.theta)


class TestAngleVectorValidation:
    def test_rejects_wrong_sum(self):
        with pytest.raises(ValueError):
            AngleVector(np.array([0.3, 0.4, 0.5]), 1)

    def test_rejects_descending(self):
        with pytest.raises(ValueError):
            AngleVector(np.array([0.9, 0.4, np.pi - 1.3]), 1)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            AngleVector(np.array([-0.1, 0.6, np.pi - 0.5]), 1)


class TestNormalForm:
    def test_standard_pair(self, rng):
        av = random_angle_vector(rng, 1)
        nf = normal_form(V0, plane_from_angles(av.theta))
        assert np.allclose(nf.theta.theta, av.theta, atol=1e-10)
        # the mover preserves the standard plane, so it is real orthogonal
        assert np.linalg.norm(nf.B.imag) < 1e-9

    def test_round_trip(self, rng):
        for _ in range(200):
            v, vp, av = random_transverse_pair(rng, m=int(rng.integers(1, 3)))
            nf = normal_form(v, vp)
            assert np.max(np.abs(nf.theta.theta - av.theta)) < 1e-8
            assert abs(np.linalg.det(nf.B) - 1.0) < 1e-10
            assert np.linalg.norm(nf.B.conj().T @ nf.B - np.eye(3)) < 1e-10
            assert v.transform(nf.B).distance(V0) < 1e-8
            assert vp.transform(nf.B).distance(plane_from_angles(nf.theta.theta)) < 1e-8

    @pytest.mark.parametrize("stratum", ["eq12", "eq23"])
    def test_degenerate_strata(self, stratum, rng):
        for _ in range(50):
            v, vp, av = random_transverse_pair(rng, stratum=stratum)
            nf = normal_form(v, vp)
            assert np.max(np.abs(nf.theta.theta - av.theta)) < 1e-7
            assert v.transform(nf.B).distance(V0) < 1e-7
            assert vp.transform(nf.B).distance(plane_from_angles(nf.theta.theta)) < 1e-7

    def test_non_transverse_rejected(self):
        with pytest.raises(NotTransverse):
            normal_form(V0, V0)


class TestStabilizers:
    def test_classification_examples(self):
        so3 = AngleVector(np.array([np.pi / 3] * 3), 1)
        o2l = AngleVector(np.array([np.pi / 4, np.pi / 4, np.pi / 2]), 1)
        k4 = AngleVector(np.array([np.pi / 6, np.pi / 3, np.pi / 2]), 1)
        assert classify_stabilizer(so3) is StabilizerClass.SO3
        assert classify_stabilizer(o2l) is StabilizerClass.O2_LOW
        assert classify_stabilizer(k4) is StabilizerClass.K4
        o2h = AngleVector(np.array([np.pi / 5, 2 * np.pi / 5, 2 * np.pi / 5]), 1)
        assert classify_stabilizer(o2h) is StabilizerClass.O2_HIGH

    def test_expected_dimensions(self):
        assert StabilizerClass.SO3.expected_dimension == 3
        assert StabilizerClass.O2_LOW.expected_dimension == 1
        assert StabilizerClass.O2_HIGH.expected_dimension == 1
        assert StabilizerClass.K4.expected_dimension == 0

    @pytest.mark.parametrize(
        "stratum,dim", [("generic", 0), ("eq12", 1), ("eq23", 1), ("all_equal", 3)]
    )
    def test_numeric_dimension_agrees(self, stratum, dim, rng):
        for _ in range(25):
            v, vp, av = random_transverse_pair(rng, stratum=stratum)
            assert classify_stabilizer(av).expected_dimension == dim
            assert stabilizer_dimension_numeric(v, vp) == dim


class TestRegions:
    def test_examples(self):
        close1 = AngleVector(np.array([np.pi / 12, np.pi / 6, 3 * np.pi / 4]), 1)
        far1 = AngleVector(np.array([np.pi / 5, 2 * np.pi / 5, 2 * np.pi / 5]), 1)
        wall = AngleVector(np.array([np.pi / 4, np.pi / 4, np.pi / 2]), 1)
        assert classify_region(close1) is RegionClass.S_PI_CLOSE
        assert classify_region(far1) is RegionClass.G_PI_FAR
        assert classify_region(wall) is RegionClass.P_WALL

    def test_involution_swaps_close_regions(self, rng):
        for _ in range(50):
            av = random_angle_vector(rng, 1, region="close")
            assert classify_region(av) is RegionClass.S_PI_CLOSE
            assert classify_region(angle_involution(av)) is RegionClass.S_2PI_CLOSE

    def test_far_class_two(self, rng):
        av = angle_involution(random_angle_vector(rng, 1, region="far"))
        assert classify_region(av) is RegionClass.G_2PI_FAR


class TestGraphical:
    def test_wall_pair_not_graphical(self):
        vp = plane_from_angles([np.pi / 4, np.pi / 4, np.pi / 2])
        assert not is_graphical(V0, vp)

    def test_close_pair_graphical(self):
        vp = plane_from_angles([np.pi / 12, np.pi / 6, 3 * np.pi / 4])
        assert is_graphical(V0, vp)

    def test_symmetric_in_the_pair(self, rng):
        for _ in range(30):
            v, vp, _ = random_transverse_pair(rng, m=int(rng.integers(1, 3)))
            assert is_graphical(v, vp) == is_graphical(vp, v)

    def test_angle_cross_check(self, rng):
        for _ in range(50):
            v, vp, av = random_transverse_pair(rng, m=int(rng.integers(1, 3)))
            away_from_wall = np.min(np.abs(av.theta - np.pi / 2)) > 1e-6
            if away_from_wall:
                assert is_graphical(v, vp)


class TestGraphBilinearForm:
    def test_normal_form_is_diag_tan(self, rng):
        for _ in range(50):
            av = random_angle_vector(rng, 1, region="any_graphical")
            b = graph_bilinear_form(V0, plane_from_angles(av.theta))
            assert np.allclose(b, np.diag(np.tan(av.theta)), atol=1e-10)

    def test_trace_equals_det(self, rng):
        for _ in range(100):
            v, vp, _ = random_transverse_pair(rng, region="any_graphical")
            b = graph_bilinear_form(v, vp)
            assert abs(np.trace(b) - np.linalg.det(b)) < 1e-9
            assert np.linalg.norm(b - b.T) < 1e-10

    def test_close_pair_signature(self, rng):
        for _ in range(100):
            v, vp, _ = random_close_graphical_pair(rng)
            w = np.linalg.eigvalsh(graph_bilinear_form(v, vp))
            assert w[0] < 0 < w[1] <= w[2]

    def test_wall_pair_rejected(self):
        with pytest.raises(NotGraphical):
            graph_bilinear_form(V0, plane_from_angles([np.pi / 4, np.pi / 4, np.pi / 2]))

    def test_non_transverse_rejected(self):
        with pytest.raises(NotTransverse):
            graph_bilinear_form(V0, V0)


class TestNegativeEigenline:
    def test_diagonal_form(self):
        line = negative_eigenline(np.diag([-4.0 / 3.0, 0.5, 0.5]))
        assert np.allclose(line, [1.0, 0.0, 0.0])

    def test_tan_form_picks_obtuse_axis(self):
        theta = np.array([np.pi / 12, np.pi / 6, 3 * np.pi / 4])
        line = negative_eigenline(np.diag(np.tan(theta)))
        assert np.allclose(line, [0.0, 0.0, 1.0])

    def test_conjugation_equivariance(self, rng):
        b = np.diag([-4.0 / 3.0, 0.5, 0.5])
        for _ in range(20):
            q = random_rotation(rng)
            line = negative_eigenline(q @ b @ q.T)
            want = q @ np.array([1.0, 0.0, 0.0])
            assert min(np.linalg.norm(line - want), np.linalg.norm(line + want)) < 1e-10

    def test_signature_violation(self):
        with pytest.raises(EigenvalueSignatureViolated):
            negative_eigenline(np.diag([-1.0, -1.0, 1.0]))
        with pytest.raises(EigenvalueSignatureViolated):
            negative_eigenline(np.eye(3))


class TestGraphOver:
    def test_zero_form_returns_base(self):
        assert planes_equal(graph_over(V0, np.zeros((3, 3))), V0, tol=1e-12)

    def test_tan_form_gives_angled_plane(self, rng):
        av = random_angle_vector(rng, 1, region="any_graphical")
        got = graph_over(V0, np.diag(np.tan(av.theta)))
        assert planes_equal(got, plane_from_angles(av.theta), tol=1e-10)

    def test_model_eigenvalue_pair_is_special(self):
        lam, lamp = -4.0 / 3.0, 0.5
        assert lam * lamp**2 == pytest.approx(lam + 2 * lamp)
        b = np.diag([lam, lamp, lamp])
        assert graph_over(V0, b).is_special(1e-12)

    def test_round_trip(self, rng):
        from slaglab.loops import _project_trace_det

        for _ in range(100):
            raw = rng.normal(size=(3, 3))
            b = _project_trace_det((raw + raw.T) / 2.0)
            if np.linalg.norm(b) > 1e3:
                continue
            v = SLagPlane(random_su3(rng))
            back = graph_bilinear_form(v, graph_over(v, b))
            assert np.max(np.abs(back - b)) < 1e-9


class TestAlphaCurve:
    def test_endpoints_are_the_two_sign_matrices(self):
        assert np.max(np.abs(alpha_curve(np.pi / 2) - np.diag([1.0, -1.0, -1.0]))) < 1e-15
        assert np.max(np.abs(alpha_curve(-np.pi / 2) - np.diag([-1.0, 1.0, -1.0]))) < 1e-15

    def test_special_unitary_on_grid(self):
        for phi in np.linspace(-np.pi / 2, np.pi / 2, 101):
            a = alpha_curve(phi)
            assert abs(np.linalg.det(a) - 1.0) < 1e-12
            assert np.linalg.norm(a.T @ a - np.eye(3)) < 1e-12

    def test_fixed_points_only_at_endpoints_for_distinct_angles(self, rng):
        for _ in range(10):
            av = random_angle_vector(rng, 1, margin=0.1)
            vt = plane_from_angles(av.theta)
            for phi in np.linspace(-np.pi / 2, np.pi / 2, 101):
                a = alpha_curve(phi)
                fixed = (
                    V0.transform(a).distance(V0) < 1e-10
                    and vt.transform(a).distance(vt) < 1e-10
                )
                assert fixed == (min(abs(phi - np.pi / 2), abs(phi + np.pi / 2)) < 1e-12)

    def test_fixes_low_degenerate_pairs_for_all_phi(self, rng):
        for _ in range(5):
            av = random_angle_vector(rng, 1, stratum="eq12")
            vt = plane_from_angles(av.theta)
            for phi in np.linspace(-np.pi / 2, np.pi / 2, 21):
                a = alpha_curve(phi)
                assert V0.transform(a).distance(V0) < 1e-12
                assert vt.transform(a).distance(vt) < 1e-10


def test_special_phase_projection(rng):
    for _ in range(50):
        u = random_su3(rng) @ np.diag([np.exp(1j * rng.uniform(-0.3, 0.3)), 1, 1])
        q, _ = np.linalg.qr(u)
        fixed = special_phase_projection(q)
        assert abs(np.linalg.det(fixed).imag) < 1e-12
        assert np.linalg.norm(fixed.conj().T @ fixed - np.eye(3)) < 1e-10
