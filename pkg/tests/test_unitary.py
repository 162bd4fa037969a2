"""Special-unitary projection, symmetric unitary diagonalization, lifting."""

import numpy as np
import pytest

from slaglab.errors import NotSymmetric, NotUnitary, SamplingTooCoarse, SingularInput
from slaglab.generators import random_rotation, random_su3, rng_from_seed
from slaglab.unitary import (
    axis_angle_rotation,
    project_special_unitary,
    quat_from_rotation,
    quaternion_lift,
    rotation_from_quat,
    symmetric_unitary_diag,
)


class TestProjectSpecialUnitary:
    def test_fixes_su3(self, rng):
        for _ in range(20):
            u = random_su3(rng)
            assert np.linalg.norm(project_special_unitary(u) - u) < 1e-12

    def test_positive_scaling_removed(self):
        assert np.allclose(project_special_unitary(2.0 * np.eye(3)), np.eye(3))

    def test_small_perturbation_stays_close(self, rng):
        for _ in range(50):
            u = random_su3(rng)
            e = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            e /= np.linalg.norm(e)
            p = project_special_unitary(u + 1e-3 * e)
            assert np.linalg.norm(p - u) < 2e-3
            assert abs(np.linalg.det(p) - 1.0) < 1e-12
            assert np.linalg.norm(p.conj().T @ p - np.eye(3)) < 1e-12

    def test_singular_input(self):
        with pytest.raises(SingularInput):
            project_special_unitary(np.diag([1.0, 1.0, 0.0]))


class TestSymmetricUnitaryDiag:
    def test_identity(self):
        q, d = symmetric_unitary_diag(np.eye(3, dtype=complex))
        assert np.allclose(q, np.eye(3))
        assert np.allclose(d, np.ones(3))

    def test_already_diagonal(self):
        angles = np.array([0.3, 1.1, 2.9])
        s = np.diag(np.exp(2j * angles))
        q, d = symmetric_unitary_diag(s)
        # q must be a signed permutation
        assert np.allclose(np.abs(q), np.abs(q).round())
        assert np.allclose(sorted(np.angle(d)), sorted(np.angle(np.diag(s))))

    def test_random_round_trip(self, rng):
        for _ in range(300):
            q0 = random_rotation(rng)
            d0 = np.exp(1j * rng.uniform(0, 2 * np.pi, size=3))
            s = q0 @ np.diag(d0) @ q0.T
            q, d = symmetric_unitary_diag(s)
            assert np.linalg.norm(s - q @ np.diag(d) @ q.T) < 1e-9
            assert np.max(np.abs(np.abs(d) - 1.0)) < 1e-9
            assert np.linalg.norm(q.T @ q - np.eye(3)) < 1e-10

    def test_repeated_eigenvalue_round_trip(self, rng):
        for _ in range(100):
            q0 = random_rotation(rng)
            t = rng.uniform(0, 2 * np.pi)
            d0 = np.exp(1j * np.array([t, t, rng.uniform(0, 2 * np.pi)]))
            s = q0 @ np.diag(d0) @ q0.T
            q, d = symmetric_unitary_diag(s)
            assert np.linalg.norm(s - q @ np.diag(d) @ q.T) < 1e-9

    def test_mirror_angles_resolved_by_imaginary_part(self, rng):
        # cos-degenerate but sin-distinct eigenvalues: the real part alone
        # cannot separate them
        for _ in range(50):
            q0 = random_rotation(rng)
            t = rng.uniform(0.2, np.pi / 2 - 0.2)
            d0 = np.exp(1j * np.array([t, np.pi - t, rng.uniform(0, 2 * np.pi)]))
            s = q0 @ np.diag(d0) @ q0.T
            q, d = symmetric_unitary_diag(s)
            assert np.linalg.norm(s - q @ np.diag(d) @ q.T) < 1e-9

    def test_triple_degenerate(self, rng):
        q0 = random_rotation(rng)
        s = np.exp(1j * 0.7) * np.eye(3)
        q, d = symmetric_unitary_diag(s)
        assert np.linalg.norm(s - q @ np.diag(d) @ q.T) < 1e-12

    def test_rejects_nonsymmetric(self):
        m = np.array([[1, 1j, 0], [0, 1, 0], [0, 0, 1]], dtype=complex)
        with pytest.raises(NotSymmetric):
            symmetric_unitary_diag(m)

    def test_rejects_nonunitary(self):
        with pytest.raises(NotUnitary):
            symmetric_unitary_diag(np.diag([2.0, 1.0, 1.0]).astype(complex))


class TestQuaternionLift:
    def test_constant_identity_loop(self):
        out = quaternion_lift([np.eye(3)] * 10)
        assert out.closed_parity == 1

    def test_full_turn_is_nontrivial(self):
        axis = np.array([0.0, 0.0, 1.0])
        rots = [axis_angle_rotation(axis, 2 * np.pi * i / 64) for i in range(64)]
        out = quaternion_lift(rots)
        assert out.closed_parity == -1

    def test_closed_form_lift_endpoint(self):
        # open path to angle pi: lift is cos(pi t / 2) + sin(pi t / 2) axis
        axis = np.array([1.0, 0.0, 0.0])
        rots = [axis_angle_rotation(axis, np.pi * i / 32) for i in range(33)]
        out = quaternion_lift(rots, closed=False)
        want = np.array([np.cos(np.pi / 2), np.sin(np.pi / 2), 0.0, 0.0])
        assert np.linalg.norm(out.end - want) < 1e-12
        assert out.closed_parity is None

    def test_two_turns_trivial(self):
        axis = np.array([0.0, 1.0, 0.0])
        rots = [axis_angle_rotation(axis, 4 * np.pi * i / 128) for i in range(128)]
        assert quaternion_lift(rots).closed_parity == 1

    def test_concatenation_multiplies_parity(self, rng):
        axis = rng.normal(size=3)
        one = [axis_angle_rotation(axis, 2 * np.pi * i / 64) for i in range(64)]
        flat = [np.eye(3)] * 64
        cat = one + one
        assert quaternion_lift(cat).closed_parity == 1
        assert quaternion_lift(one + flat).closed_parity == -1

    def test_refinement_invariance(self):
        axis = np.array([0.0, 0.0, 1.0])
        for n in (16, 32, 64, 128):
            rots = [axis_angle_rotation(axis, 2 * np.pi * i / n) for i in range(n)]
            assert quaternion_lift(rots).closed_parity == -1

    def test_conjugation_invariance(self, rng):
        axis = np.array([1.0, 0.0, 0.0])
        rots = [axis_angle_rotation(axis, 2 * np.pi * i / 64) for i in range(64)]
        for _ in range(10):
            g = random_rotation(rng)
            conj = [g @ r @ g.T for r in rots]
            assert quaternion_lift(conj).closed_parity == -1

    def test_too_coarse_sampling(self):
        axis = np.array([0.0, 0.0, 1.0])
        rots = [axis_angle_rotation(axis, 2 * np.pi * i / 3) for i in range(3)]
        with pytest.raises(SamplingTooCoarse):
            quaternion_lift(rots)

    def test_rejects_non_rotation(self):
        with pytest.raises(ValueError):
            quaternion_lift([np.diag([1.0, 1.0, -1.0])] * 4)


class TestQuaternionConversions:
    def test_round_trip(self, rng):
        for _ in range(200):
            r = random_rotation(rng)
            q = quat_from_rotation(r)
            assert abs(np.linalg.norm(q) - 1.0) < 1e-12
            assert np.linalg.norm(rotation_from_quat(q) - r) < 1e-9

    def test_half_turn_branches(self):
        # trace = -1 exercises the argmax branch
        r = np.diag([1.0, -1.0, -1.0])
        q = quat_from_rotation(r)
        assert np.linalg.norm(rotation_from_quat(q) - r) < 1e-12
