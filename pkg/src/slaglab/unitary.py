"""Small dense complex/real linear algebra kernels.

3x3 special-unitary projection, diagonalization of symmetric unitary
matrices by real orthogonal conjugation, and continuous quaternion lifting
of SO(3) paths (double cover parity).

Quaternions are plain numpy arrays ``(w, x, y, z)`` of unit norm; the type
name ``UnitQuaternion`` is an alias.  All functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotSymmetric, NotUnitary, SamplingTooCoarse, SingularInput

UnitQuaternion = np.ndarray

# consecutive rotations must differ by less than pi/2, i.e. the aligned
# quaternion inner products stay above cos(pi/4)
_MIN_STEP_DOT = np.cos(np.pi / 4.0)


def project_special_unitary(m: np.ndarray, *, min_singular: float = 1e-12) -> np.ndarray:
    """Nearest SU(n) element: polar unitary factor with a scalar phase fix."""
    m = np.asarray(m, dtype=complex)
    w, s, vh = np.linalg.svd(m)
    if s[-1] <= min_singular:
        raise SingularInput(f"smallest singular value {s[-1]:.3e} <= {min_singular:.0e}")
    u = w @ vh
    n = m.shape[0]
    u *= np.exp(-1j * np.angle(np.linalg.det(u)) / n)
    return u


def is_unitary(m: np.ndarray, tol: float = 1e-9) -> bool:
    m = np.asarray(m, dtype=complex)
    return bool(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0])) < tol)


def is_rotation(m: np.ndarray, tol: float = 1e-9) -> bool:
    m = np.asarray(m, dtype=float)
    return bool(
        np.linalg.norm(m.T @ m - np.eye(m.shape[0])) < tol
        and abs(np.linalg.det(m) - 1.0) < tol
    )


def _cluster_sorted(values: np.ndarray, gap: float) -> list[np.ndarray]:
    """Index groups of an ascending array split where the gap exceeds ``gap``."""
    groups = [[0]]
    for i in range(1, len(values)):
        if values[i] - values[i - 1] <= gap:
            groups[-1].append(i)
        else:
            groups.append([i])
    return [np.array(g) for g in groups]


def symmetric_unitary_diag(
    s: np.ndarray,
    *,
    sym_tol: float = 1e-9,
    unitary_tol: float = 1e-8,
    degeneracy_tol: float = 1e-7,
) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a symmetric unitary matrix by a real orthogonal one.

    Returns (Q, d) with ``S = Q diag(d) Q^T``, Q in O(n) and |d_j| = 1.

    Because S is symmetric and unitary, Re(S) and Im(S) are commuting real
    symmetric matrices.  We diagonalize Re(S) and resolve its degenerate
    eigenspaces (eigenvalues closer than ``degeneracy_tol``) by
    diagonalizing Im(S) inside them; a doubly degenerate block keeps
    whatever orthonormal basis eigh returned.
    """
    s = np.asarray(s, dtype=complex)
    n = s.shape[0]
    if np.linalg.norm(s - s.T) >= sym_tol:
        raise NotSymmetric(f"||S - S^T|| = {np.linalg.norm(s - s.T):.3e}")
    if np.linalg.norm(s.conj().T @ s - np.eye(n)) >= unitary_tol:
        raise NotUnitary("S is not unitary within tolerance")

    x = (s.real + s.real.T) / 2.0
    y = (s.imag + s.imag.T) / 2.0

    def attempt(gap: float) -> np.ndarray:
        w, q = np.linalg.eigh(x)
        for group in _cluster_sorted(w, gap):
            if len(group) > 1:
                block = q[:, group]
                _, r = np.linalg.eigh(block.T @ y @ block)
                q[:, group] = block @ r
        return q

    q = attempt(degeneracy_tol)
    d = np.diag(q.T @ s @ q).copy()
    off = np.linalg.norm(q.T @ s @ q - np.diag(d))
    if off > 1e-8:
        # near-degenerate Re(S) just above the clustering gap: retry coarser
        q = attempt(degeneracy_tol * 100.0)
        d = np.diag(q.T @ s @ q).copy()
    return q, d


# -- quaternions ---------------------------------------------------------------


def quat_from_rotation(r: np.ndarray) -> UnitQuaternion:
    """Unit quaternion covering an SO(3) matrix (Shepperd's method, w >= 0)."""
    r = np.asarray(r, dtype=float)
    t = np.trace(r)
    if t > 0:
        w = np.sqrt(1.0 + t) / 2.0
        q = np.array([
            w,
            (r[2, 1] - r[1, 2]) / (4 * w),
            (r[0, 2] - r[2, 0]) / (4 * w),
            (r[1, 0] - r[0, 1]) / (4 * w),
        ])
    else:
        i = int(np.argmax(np.diag(r)))
        j, k = (i + 1) % 3, (i + 2) % 3
        x = np.sqrt(max(1.0 + r[i, i] - r[j, j] - r[k, k], 0.0)) / 2.0
        q = np.zeros(4)
        q[1 + i] = x
        q[0] = (r[k, j] - r[j, k]) / (4 * x)
        q[1 + j] = (r[j, i] + r[i, j]) / (4 * x)
        q[1 + k] = (r[k, i] + r[i, k]) / (4 * x)
    q /= np.linalg.norm(q)
    if q[0] < 0:
        q = -q
    return q


def rotation_from_quat(q: UnitQuaternion) -> np.ndarray:
    w, x, y, z = np.asarray(q, dtype=float) / np.linalg.norm(q)
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])


def quat_mult(a: UnitQuaternion, b: UnitQuaternion) -> UnitQuaternion:
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return np.array([
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    ])


def axis_angle_rotation(axis, angle: float) -> np.ndarray:
    a = np.asarray(axis, dtype=float)
    a = a / np.linalg.norm(a)
    q = np.concatenate([[np.cos(angle / 2.0)], np.sin(angle / 2.0) * a])
    return rotation_from_quat(q)


@dataclass(frozen=True)
class LiftResult:
    end: UnitQuaternion
    closed_parity: int | None


def quaternion_lift(
    rotations,
    *,
    closed: bool = True,
    rotation_tol: float = 1e-8,
) -> LiftResult:
    """Continuous lift of an SO(3) path to the unit quaternions.

    The lift starts at the w >= 0 cover of the first sample.  With
    ``closed=True`` the samples are treated cyclically (one closing step
    from the last sample back to the first) and ``closed_parity`` is +1
    when the lift returns to the starting sheet, -1 when it returns to its
    antipode.  Every step, the closing one included, must rotate by less
    than pi/2 or :class:`SamplingTooCoarse` is raised.
    """
    rots = [np.asarray(r, dtype=float) for r in rotations]
    if not rots:
        raise ValueError("empty rotation path")
    for i, r in enumerate(rots):
        if not is_rotation(r, tol=rotation_tol):
            raise ValueError(f"sample {i} is not a rotation matrix")

    q_start = quat_from_rotation(rots[0])
    q_prev = q_start

    def step(q_next: UnitQuaternion, where: int) -> UnitQuaternion:
        d = float(q_prev @ q_next)
        if abs(d) <= _MIN_STEP_DOT:
            raise SamplingTooCoarse(
                f"step {where}: consecutive rotations differ by >= pi/2"
            )
        return -q_next if d < 0 else q_next

    for i in range(1, len(rots)):
        q_prev = step(quat_from_rotation(rots[i]), i)
    end = q_prev

    parity: int | None = None
    if closed:
        q_close = step(q_start.copy(), len(rots))
        parity = 1 if float(q_close @ q_start) > 0 else -1
    return LiftResult(end=end, closed_parity=parity)
