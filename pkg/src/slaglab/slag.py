"""Special Lagrangian 3-planes in C^3 and transverse pair normal forms.

A plane is stored by a frame U whose columns are a Hermitian-orthonormal
basis whose real span is the plane (so U satisfies U^dagger U = I, which
encodes both orthonormality and the vanishing of the symplectic form).
Frames are ambiguous under right multiplication by O(3); the complete
frame-independent invariant of the plane is S(U) = U U^T, and plane
equality always means S-distance below tolerance.

Characteristic angles of a transverse pair are the half-arguments of the
eigenvalues of S(V)^dagger S(V'), sorted ascending in (0, pi); their sum
is m pi with trace class m in {1, 2}.  The angle branch is fixed by taking
arguments in (0, 2 pi); the transversality margin keeps eigenvalues away
from the branch point at 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    EigenvalueSignatureViolated,
    NotGraphical,
    NotTransverse,
)
from .unitary import symmetric_unitary_diag

TRANSVERSALITY_TOL = 1e-8


class SLagPlane:
    """A Lagrangian 3-plane in C^3 given by a Hermitian-orthonormal frame.

    The constructor enforces U^dagger U = I; whether the plane is special
    (Im det U = 0) is a separate predicate so that non-special planes can
    be built and flagged when exercising the trace criterion.
    """

    __slots__ = ("frame",)

    def __init__(self, frame, *, tol: float = 1e-9):
        u = np.asarray(frame, dtype=complex)
        if u.shape != (3, 3):
            raise ValueError("frame must be 3x3 complex")
        err = np.linalg.norm(u.conj().T @ u - np.eye(3))
        if err >= tol:
            raise ValueError(f"frame not Hermitian-orthonormal: residual {err:.3e}")
        u = u.copy()
        u.setflags(write=False)
        self.frame = u

    @classmethod
    def standard(cls) -> "SLagPlane":
        """V_0, the real R^3 inside C^3."""
        return cls(np.eye(3))

    @property
    def s_invariant(self) -> np.ndarray:
        """S(U) = U U^T, the complete O(3)-frame-independent invariant."""
        return self.frame @ self.frame.T

    def is_special(self, tol: float = 1e-9) -> bool:
        return bool(abs(np.linalg.det(self.frame).imag) < tol)

    def transform(self, a: np.ndarray) -> "SLagPlane":
        return SLagPlane(np.asarray(a, dtype=complex) @ self.frame)

    def distance(self, other: "SLagPlane") -> float:
        return float(np.linalg.norm(self.s_invariant - other.s_invariant))

    def __repr__(self):
        return f"SLagPlane({self.frame.tolist()})"


def planes_equal(a: SLagPlane, b: SLagPlane, tol: float = 1e-8) -> bool:
    return a.distance(b) < tol


def plane_from_angles(theta) -> SLagPlane:
    """V_theta with frame diag(e^{i theta_j}); special iff sum(theta) in pi Z."""
    t = np.asarray(theta, dtype=float)
    if t.shape != (3,):
        raise ValueError("need 3 angles")
    return SLagPlane(np.diag(np.exp(1j * t)))


def is_special_lagrangian(frame, tol: float = 1e-9) -> bool:
    """True iff the columns are Hermitian-orthonormal and Im det = 0, at tol."""
    u = np.asarray(frame, dtype=complex)
    if u.shape != (3, 3):
        return False
    if np.linalg.norm(u.conj().T @ u - np.eye(3)) >= tol:
        return False
    return bool(abs(np.linalg.det(u).imag) < tol)


@dataclass(frozen=True)
class AngleVector:
    """Sorted characteristic angles in (0, pi) with trace class m in {1, 2}."""

    theta: np.ndarray
    trace_class: int

    def __post_init__(self):
        t = np.asarray(self.theta, dtype=float).copy()
        if t.shape != (3,):
            raise ValueError("need 3 angles")
        if not (np.all(t > 0) and np.all(t < np.pi)):
            raise ValueError("angles must lie in (0, pi)")
        if not np.all(np.diff(t) >= -1e-12):
            raise ValueError("angles must be ascending")
        if self.trace_class not in (1, 2):
            raise ValueError("trace class must be 1 or 2")
        if abs(float(t.sum()) - self.trace_class * np.pi) >= 1e-8:
            raise ValueError(
                f"angle sum {t.sum():.12f} is not {self.trace_class}*pi within 1e-8"
            )
        t.setflags(write=False)
        object.__setattr__(self, "theta", t)


def angle_involution(av: AngleVector) -> AngleVector:
    """theta'_j = pi - theta_{4-j}; swaps trace class 1 <-> 2."""
    return AngleVector(np.pi - av.theta[::-1], 3 - av.trace_class)


class StabilizerClass(Enum):
    """Stabilizer in SU(3) of a transverse pair, read off angle multiplicities."""

    SO3 = "SO3"
    O2_LOW = "O2_LOW"    # theta1 = theta2 < theta3
    O2_HIGH = "O2_HIGH"  # theta1 < theta2 = theta3
    K4 = "K4"

    @property
    def expected_dimension(self) -> int:
        return {"SO3": 3, "O2_LOW": 1, "O2_HIGH": 1, "K4": 0}[self.value]


class RegionClass(Enum):
    P_WALL = "P_WALL"
    S_PI_CLOSE = "S_PI_CLOSE"
    S_2PI_CLOSE = "S_2PI_CLOSE"
    G_PI_FAR = "G_PI_FAR"
    G_2PI_FAR = "G_2PI_FAR"


def classify_stabilizer(av: AngleVector, gap_tol: float = 1e-6) -> StabilizerClass:
    d12 = av.theta[1] - av.theta[0] < gap_tol
    d23 = av.theta[2] - av.theta[1] < gap_tol
    if d12 and d23:
        return StabilizerClass.SO3
    if d12:
        return StabilizerClass.O2_LOW
    if d23:
        return StabilizerClass.O2_HIGH
    return StabilizerClass.K4


def classify_region(av: AngleVector, tol: float = 1e-8) -> RegionClass:
    if np.min(np.abs(av.theta - np.pi / 2)) < tol:
        return RegionClass.P_WALL
    if av.trace_class == 1:
        return RegionClass.S_PI_CLOSE if av.theta[2] > np.pi / 2 else RegionClass.G_PI_FAR
    return RegionClass.S_2PI_CLOSE if av.theta[0] < np.pi / 2 else RegionClass.G_2PI_FAR


def _pair_eigenvalues(v: SLagPlane, vp: SLagPlane) -> np.ndarray:
    w = v.s_invariant.conj().T @ vp.s_invariant
    return np.linalg.eigvals(w)


def characteristic_angles(
    v: SLagPlane, vp: SLagPlane, *, transversality_tol: float = TRANSVERSALITY_TOL
) -> AngleVector:
    """Characteristic angles of a transverse pair.

    The eigenvalues of S(V)^dagger S(V') are e^{2 i theta_j}; arguments are
    taken in (0, 2 pi) so theta lands in (0, pi).
    """
    lam = _pair_eigenvalues(v, vp)
    if np.min(np.abs(lam - 1.0)) < transversality_tol:
        raise NotTransverse("an eigenvalue of S(V)^dagger S(V') is within tol of 1")
    args = np.angle(lam)
    args = np.where(args <= 0, args + 2 * np.pi, args)
    theta = np.sort(args / 2.0)
    m = int(round(float(theta.sum()) / np.pi))
    return AngleVector(theta, m)


def transversality_margin(v: SLagPlane, vp: SLagPlane) -> float:
    """min_j |lambda_j - 1| for the pair eigenvalues; 0 means not transverse."""
    return float(np.min(np.abs(_pair_eigenvalues(v, vp) - 1.0)))


@dataclass(frozen=True)
class NormalForm:
    """B in SU(3) with B.(V, V') = (V_0, V_theta)."""

    B: np.ndarray
    theta: AngleVector


def normal_form(v: SLagPlane, vp: SLagPlane) -> NormalForm:
    """SU(3) normal form of a transverse pair.

    Construction: A = (frame of V)^dagger, with a row sign flip forcing
    det A = 1, moves V to V_0; the symmetric unitary S(A . V') is then
    diagonalized by a real orthogonal Q whose columns are reordered to make
    the angles ascend (stably, so degenerate blocks keep their pairing) and
    sign-flipped into SO(3); B = Q^T A.
    """
    # transversality check, same margin as characteristic_angles
    characteristic_angles(v, vp)

    a = v.frame.conj().T
    if np.linalg.det(a).real < 0:
        a = np.diag([1.0, 1.0, -1.0]) @ a
    s_moved = a @ vp.s_invariant @ a.T
    q, d = symmetric_unitary_diag(s_moved)

    args = np.angle(d)
    args = np.where(args <= 0, args + 2 * np.pi, args)
    theta = args / 2.0
    order = np.argsort(theta, kind="stable")
    theta = theta[order]
    q = q[:, order]
    if np.linalg.det(q) < 0:
        q = q.copy()
        q[:, 2] *= -1.0
    m = int(round(float(theta.sum()) / np.pi))
    return NormalForm(B=q.T @ a, theta=AngleVector(theta, m))


def _su3_basis() -> list[np.ndarray]:
    basis = []
    for j in range(3):
        for k in range(j + 1, 3):
            m = np.zeros((3, 3), dtype=complex)
            m[j, k], m[k, j] = 1.0, -1.0
            basis.append(m)
            m = np.zeros((3, 3), dtype=complex)
            m[j, k] = m[k, j] = 1j
            basis.append(m)
    basis.append(np.diag([1j, -1j, 0]))
    basis.append(np.diag([1j, 1j, -2j]) / np.sqrt(3))
    return basis


def _realify_vec(z: np.ndarray) -> np.ndarray:
    return np.concatenate([z.real, z.imag])


def _real_span_projector(u: np.ndarray) -> np.ndarray:
    cols = np.stack([_realify_vec(u[:, j]) for j in range(3)], axis=1)
    return cols @ cols.T


def stabilizer_dimension_numeric(
    v: SLagPlane, vp: SLagPlane, *, null_tol: float = 1e-7
) -> int:
    """dim of the su(3) subalgebra preserving both real spans, by nullity.

    Assembles the linear system that a generator must map each frame vector
    of V into V and of V' into V', and counts singular values below
    ``null_tol``.  Agrees with the angle-multiplicity classification
    (dimensions 3 / 1 / 0).
    """
    characteristic_angles(v, vp)
    gens = _su3_basis()
    rows = []
    for plane in (v, vp):
        proj = np.eye(6) - _real_span_projector(plane.frame)
        for g in gens:
            block = [proj @ _realify_vec(g @ plane.frame[:, j]) for j in range(3)]
            rows.append(np.concatenate(block))
    # rows currently grouped per generator within each plane; reassemble as
    # columns indexed by generator
    per_gen = [np.concatenate([rows[g], rows[len(gens) + g]]) for g in range(len(gens))]
    system = np.stack(per_gen, axis=1)
    sv = np.linalg.svd(system, compute_uv=False)
    sv = np.concatenate([sv, np.zeros(len(gens) - len(sv))])
    return int(np.sum(sv < null_tol))


def _stacked_rank_margin(a: np.ndarray, b: np.ndarray) -> float:
    """Smallest singular value of the 6x6 real span matrix [a | b]."""
    cols = [_realify_vec(a[:, j]) for j in range(3)]
    cols += [_realify_vec(b[:, j]) for j in range(3)]
    return float(np.linalg.svd(np.stack(cols, axis=1), compute_uv=False)[-1])


def is_graphical(v: SLagPlane, vp: SLagPlane, *, tol: float = TRANSVERSALITY_TOL) -> bool:
    """True iff i.V is transverse to V' (rank test on the stacked spans).

    The singular-value margin corresponds to the angle criterion
    min_j |theta_j - pi/2| up to a factor of order one; the angle version
    is kept as a cross-check in the test suite only.
    """
    if _stacked_rank_margin(v.frame, vp.frame) < tol:
        raise NotTransverse("pair is not transverse")
    return _stacked_rank_margin(1j * v.frame, vp.frame) >= tol


def graph_bilinear_form(v: SLagPlane, vp: SLagPlane, *, tol: float = TRANSVERSALITY_TOL) -> np.ndarray:
    """The symmetric form whose graph over V is V', in V's frame.

    Decompose each frame column of V' over the real basis
    (columns of V | i columns of V); with C = U^dagger U' this reads
    a = Re C, b = Im C and B = b a^{-1}.  For a special Lagrangian V' the
    result is symmetric, nondegenerate, and has tr B = det B.
    """
    if _stacked_rank_margin(v.frame, vp.frame) < tol:
        raise NotTransverse("pair is not transverse")
    c = v.frame.conj().T @ vp.frame
    a, b = c.real, c.imag
    if np.linalg.svd(a, compute_uv=False)[-1] < tol:
        raise NotGraphical("a-part of the frame decomposition is singular")
    return b @ np.linalg.inv(a)


def negative_eigenline(b: np.ndarray, margin: float = 1e-9) -> np.ndarray:
    """Unit eigenvector of the single negative eigenvalue, canonical sign.

    Requires exactly one eigenvalue below -margin and the others above
    +margin.  The sign makes the largest-magnitude coordinate positive;
    consumers treating the output as a line must ignore that sign.
    """
    b = np.asarray(b, dtype=float)
    w, q = np.linalg.eigh((b + b.T) / 2.0)
    neg = np.where(w < -margin)[0]
    pos = np.where(w > margin)[0]
    if len(neg) != 1 or len(pos) != 2:
        raise EigenvalueSignatureViolated(
            f"eigenvalues {w.tolist()} are not (-,+,+) at margin {margin:.1e}"
        )
    vec = q[:, neg[0]]
    if vec[int(np.argmax(np.abs(vec)))] < 0:
        vec = -vec
    return vec


def graph_over(v: SLagPlane, b: np.ndarray) -> SLagPlane:
    """The plane spanned by v_j + i (B v)_j combinations, re-orthonormalized.

    The frame is U (I + iB) (I + B^2)^{-1/2}; right multiplication by the
    real SPD inverse square root keeps the real span while restoring
    Hermitian orthonormality.  The result is special Lagrangian iff
    tr B = det B, and graph_bilinear_form(V, graph_over(V, B)) = B.
    """
    b = np.asarray(b, dtype=float)
    w, r = np.linalg.eigh(np.eye(3) + b @ b.T)
    inv_sqrt = r @ np.diag(1.0 / np.sqrt(w)) @ r.T
    return SLagPlane(v.frame @ (np.eye(3) + 1j * b) @ inv_sqrt)


def special_phase_projection(frame: np.ndarray) -> np.ndarray:
    """Rotate a unitary frame by the scalar phase that makes det real.

    This is the projection of a Lagrangian plane to the nearest special
    Lagrangian one along the phase circle; the branch is chosen so the
    correction angle is at most pi/6.
    """
    u = np.asarray(frame, dtype=complex)
    psi = float(np.angle(np.linalg.det(u)))
    if psi > np.pi / 2:
        psi -= np.pi
    elif psi < -np.pi / 2:
        psi += np.pi
    return np.exp(-1j * psi / 3.0) * u


def alpha_curve(phi: float) -> np.ndarray:
    """The explicit O(2)-valued witness curve in SU(3).

    Rows [sin phi, cos phi, 0], [cos phi, -sin phi, 0], [0, 0, -1]; real
    orthogonal with det +1.  Its endpoints at phi = -pi/2 and +pi/2 are the
    two diagonal sign matrices diag(-1, 1, -1) and diag(1, -1, -1).
    """
    s, c = np.sin(phi), np.cos(phi)
    return np.array([[s, c, 0.0], [c, -s, 0.0], [0.0, 0.0, -1.0]])
