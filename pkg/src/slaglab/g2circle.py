"""SU(3) structure normal to a direction in R^7 and coassociative 4-planes.

For a unit u in Im(O), contraction of the associative 3-form induces on
u-perp a complex structure J = cross(u, .), a nondegenerate 2-form
omega = phi0 contracted with u, and a complex volume form
Omega = Omega'' - i Omega', where Omega' is the component of phi0 with no
u-factor (so phi0 = u* ^ omega + Omega' exactly) and Omega'' is the
contraction of the coassociative 4-form *phi0 with u.

Orientation conventions, frozen here:

* u-perp is oriented so that u* ^ vol(u-perp) = vol(R^7) with the ordered
  basis e2..e8.
* A stored CoassocPlane basis is ordered so that contracting phi0 with any
  normal vector restricts to a self-dual 2-form; the ``orientation`` flag
  is -1 when this required reversing the input ordering.
* The pairing isomorphism between the two normal planes of a transverse
  coassociative pair is M_{kj} = -omega(v+_j, v-_k) in the given frames.
  In those frames sign(det M) = (-1)^(m+1) det(U+) det(U-), where m is the
  trace class of the pair; this is the orientation-reversal sign law the
  tests pin down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .algebra import KForm, contract, covector, cross_operator, hodge_star, phi0, wedge
from .errors import (
    DegenerateSpan,
    DirectionNotContained,
    ExcessIntersection,
    FieldNonvanishingOnZ,
    NotNormal,
    NotSpecialLagrangian,
    NotTransverse,
    NotUnit,
)
from .slag import SLagPlane


@dataclass(frozen=True)
class NormalStructure:
    """The SU(3) structure on the orthogonal complement of a unit direction."""

    u: np.ndarray
    omega: KForm
    Jmat: np.ndarray
    OmegaPrime: KForm
    OmegaDoublePrime: KForm
    frame_real: np.ndarray  # 7x3, columns f_k
    frame_imag: np.ndarray  # 7x3, columns J f_k

    def coords(self, v) -> np.ndarray:
        """Complex coordinates of a vector in u-perp."""
        v = np.asarray(v, dtype=float)
        return self.frame_real.T @ v + 1j * (self.frame_imag.T @ v)

    def embed(self, z) -> np.ndarray:
        """Real 7-vector of a complex coordinate triple."""
        z = np.asarray(z, dtype=complex)
        return self.frame_real @ z.real + self.frame_imag @ z.imag

    def embed_frame(self, u_frame: np.ndarray) -> np.ndarray:
        """7x3 real matrix whose columns embed the frame columns."""
        u_frame = np.asarray(u_frame, dtype=complex)
        return np.stack([self.embed(u_frame[:, j]) for j in range(3)], axis=1)

    def omega_value(self, v, w) -> float:
        return self.omega.evaluate(v, w)

    def volume_value(self, v, w, x) -> complex:
        """Omega = Omega'' - i Omega' evaluated on three real vectors."""
        return complex(
            self.OmegaDoublePrime.evaluate(v, w, x),
            -self.OmegaPrime.evaluate(v, w, x),
        )


def _projected_gram_schmidt(taken: list[np.ndarray]) -> np.ndarray:
    """First standard basis vector with a healthy component off ``taken``."""
    for i in range(7):
        cand = np.zeros(7)
        cand[i] = 1.0
        for t in taken:
            cand -= (t @ cand) * t
        norm = np.linalg.norm(cand)
        if norm > 0.3:
            return cand / norm
    raise RuntimeError("could not extend orthonormal set")  # pragma: no cover


def normal_structure(u, *, frame: np.ndarray | None = None, unit_tol: float = 1e-10) -> NormalStructure:
    """Build the induced SU(3) structure for a unit direction u.

    The complex frame (f_1, f_2, f_3) is produced by complex Gram-Schmidt
    over the standard basis (or taken from ``frame``, a 7x3 matrix of
    columns in u-perp forming a unitary frame) and then phase-normalized
    so that Omega(f_1, f_2, f_3) = 1, making it an SU(3) frame: in its
    coordinates omega, Im(Omega) and the metric take their standard C^3
    forms.
    """
    u = np.array(u, dtype=float)
    if u.shape != (7,):
        raise ValueError("u must be a 7-vector")
    if abs(np.linalg.norm(u) - 1.0) >= unit_tol:
        raise NotUnit(f"|u| = {np.linalg.norm(u):.12f}")

    phi = phi0()
    omega = contract(phi, u)
    proj = np.eye(7) - np.outer(u, u)
    jmat = proj @ cross_operator(u) @ proj
    omega_prime = phi - wedge(covector(u), omega)
    omega_dprime = contract(hodge_star(phi), u)

    if frame is not None:
        fmat = np.asarray(frame, dtype=float)
        if fmat.shape != (7, 3):
            raise ValueError("frame must be 7x3, columns in u-perp")
        fs = [fmat[:, k] for k in range(3)]
        gs = [jmat @ f for f in fs]
        gram = np.stack([u] + fs + gs, axis=1)
        if np.linalg.norm(gram.T @ gram - np.eye(7)) > 1e-8:
            raise ValueError("frame columns do not form a unitary frame of u-perp")
    else:
        # complex Gram-Schmidt: each f_k orthogonal to u and to the complex
        # lines of the previous ones
        fs = []
        gs = []
        taken = [u]
        for _ in range(3):
            f = _projected_gram_schmidt(taken)
            g = jmat @ f
            fs.append(f)
            gs.append(g)
            taken += [f, g]

    def volume(a, b, c) -> complex:
        return complex(
            omega_dprime.evaluate(a, b, c), -omega_prime.evaluate(a, b, c)
        )

    c = volume(fs[0], fs[1], fs[2])
    if abs(abs(c) - 1.0) > 1e-8:  # pragma: no cover - structural guarantee
        raise RuntimeError(f"holomorphic volume on unitary frame has |c| = {abs(c):.3e}")
    cbar = np.conj(c)
    f1 = cbar.real * fs[0] + cbar.imag * gs[0]
    fs[0] = f1
    gs[0] = jmat @ f1

    fr = np.stack(fs, axis=1)
    fi = np.stack(gs, axis=1)
    for arr in (u, jmat, fr, fi):
        arr.setflags(write=False)
    return NormalStructure(
        u=u,
        omega=omega,
        Jmat=jmat,
        OmegaPrime=omega_prime,
        OmegaDoublePrime=omega_dprime,
        frame_real=fr,
        frame_imag=fi,
    )


def star4(w: np.ndarray) -> np.ndarray:
    """Hodge star on antisymmetric 4x4 matrices, basis order positively oriented."""
    out = np.zeros((4, 4))
    pairs = [((0, 1), (2, 3)), ((0, 2), (3, 1)), ((0, 3), (1, 2))]
    for (a, b), (c, d) in pairs:
        out[a, b] = w[c, d]
        out[c, d] = w[a, b]
    return out - out.T


class CoassocPlane:
    """An oriented 4-plane in R^7 on which phi0 vanishes.

    The stored orthonormal basis is reordered, if necessary, so that
    normal contractions of phi0 restrict to self-dual forms; the
    ``orientation`` flag is -1 exactly when that reversed the orientation
    of the input span.
    """

    __slots__ = ("basis", "orientation")

    def __init__(self, span, orientation: int = 1, *, tol: float = 1e-10):
        rows = np.asarray(span, dtype=float)
        if rows.shape != (4, 7):
            raise ValueError("span must be 4 vectors in R^7")
        q, r = np.linalg.qr(rows.T)
        if np.min(np.abs(np.diag(r))) < 1e-10:
            raise DegenerateSpan("spanning vectors are linearly dependent")
        basis = (q * np.sign(np.diag(r))).T  # orientation of the input ordering

        phi = phi0()
        worst = max(
            abs(phi.evaluate(basis[a], basis[b], basis[c]))
            for a, b, c in combinations(range(4), 3)
        )
        if worst >= tol:
            raise ValueError(f"phi0 does not vanish on the span: residual {worst:.3e}")

        # orient so eq24 images are self-dual
        normal = self._unit_normal(basis)
        w = _restrict_two_form(contract(phi, normal), basis)
        sd = np.linalg.norm(w + star4(w))
        asd = np.linalg.norm(w - star4(w))
        flip = 1
        if sd < asd:
            basis = basis[[0, 1, 3, 2]]
            flip = -1

        basis = basis.copy()
        basis.setflags(write=False)
        self.basis = basis
        self.orientation = int(orientation) * flip

    @staticmethod
    def _unit_normal(basis: np.ndarray) -> np.ndarray:
        _, _, vt = np.linalg.svd(basis)
        return vt[4]

    def contains_direction(self, u, tol: float = 1e-9) -> bool:
        u = np.asarray(u, dtype=float)
        return bool(np.linalg.norm(u - self.basis.T @ (self.basis @ u)) < tol)

    def __repr__(self):
        return f"CoassocPlane(orientation={self.orientation})"


def _restrict_two_form(beta: KForm, basis: np.ndarray) -> np.ndarray:
    w = np.zeros((4, 4))
    for a in range(4):
        for b in range(a + 1, 4):
            w[a, b] = beta.evaluate(basis[a], basis[b])
    return w - w.T


def is_coassociative(span, tol: float = 1e-10) -> bool:
    """True iff phi0 vanishes on the span of 4 independent vectors."""
    rows = np.asarray(span, dtype=float)
    if rows.shape != (4, 7):
        raise ValueError("span must be 4 vectors in R^7")
    q, r = np.linalg.qr(rows.T)
    if np.min(np.abs(np.diag(r))) < 1e-10:
        raise DegenerateSpan("spanning vectors are linearly dependent")
    basis = q.T
    phi = phi0()
    return all(
        abs(phi.evaluate(basis[a], basis[b], basis[c])) < tol
        for a, b, c in combinations(range(4), 3)
    )


def coassoc_from_slag(
    u, v: SLagPlane, *, ns: NormalStructure | None = None, tol: float = 1e-8
) -> CoassocPlane:
    """The coassociative 4-plane R u + V, for V special Lagrangian in u-perp."""
    ns = ns or normal_structure(u)
    if not v.is_special(tol):
        raise NotSpecialLagrangian("Im det of the frame exceeds tolerance")
    cols = ns.embed_frame(v.frame)
    span = np.vstack([ns.u[None, :], cols.T])
    return CoassocPlane(span)


def normal_slag_pair(
    u,
    pplus: CoassocPlane,
    pminus: CoassocPlane,
    *,
    ns: NormalStructure | None = None,
    contain_tol: float = 1e-9,
    intersection_tol: float = 1e-8,
) -> tuple[SLagPlane, SLagPlane]:
    """Orthocomplements of u inside each plane, as planes in the ns frame.

    The planes must both contain u and intersect exactly in R u; the
    recovered pair is then a transverse pair of special Lagrangian planes.
    """
    ns = ns or normal_structure(u)
    u = ns.u
    for name, plane in (("P+", pplus), ("P-", pminus)):
        if not plane.contains_direction(u, contain_tol):
            raise DirectionNotContained(f"{name} does not contain the direction u")
    stacked = np.vstack([pplus.basis, pminus.basis])
    sv = np.linalg.svd(stacked, compute_uv=False)
    if sv[6] < intersection_tol:
        raise ExcessIntersection("planes share more than the line R u")

    def complement(plane: CoassocPlane) -> SLagPlane:
        rows = plane.basis - np.outer(plane.basis @ u, u)
        _, _, vt = np.linalg.svd(rows)
        frame = np.stack([ns.coords(vt[j]) for j in range(3)], axis=1)
        return SLagPlane(frame)

    return complement(pplus), complement(pminus)


def pairing_iso(
    ns: NormalStructure,
    vplus: SLagPlane,
    vminus: SLagPlane,
    *,
    singular_tol: float = 1e-10,
) -> np.ndarray:
    """The -omega pairing matrix V+ -> V- in the given frames.

    M_{kj} = -omega(v+_j, v-_k) against the orthonormal frame of V-;
    invertible for transverse pairs, with the orientation-reversal sign
    documented in the module docstring.
    """
    wplus = ns.embed_frame(vplus.frame)
    wminus = ns.embed_frame(vminus.frame)
    m = np.zeros((3, 3))
    for k in range(3):
        for j in range(3):
            m[k, j] = -ns.omega.evaluate(wplus[:, j], wminus[:, k])
    if np.linalg.svd(m, compute_uv=False)[-1] < singular_tol:
        raise NotTransverse("pairing matrix is singular; pair not transverse")
    return m


def eq24_iso(p: CoassocPlane, n, *, tol: float = 1e-10) -> np.ndarray:
    """Restriction of phi0 contracted with a normal vector to the 4-plane.

    Returned as the antisymmetric 4x4 matrix in the stored (convention
    oriented) basis; self-dual by the orientation convention, linear in n,
    and zero only for n = 0.
    """
    n = np.asarray(n, dtype=float)
    tangential = np.linalg.norm(p.basis @ n)
    if tangential >= tol * max(1.0, np.linalg.norm(n)):
        raise NotNormal(f"normal vector has tangential part {tangential:.3e}")
    if np.linalg.norm(n) == 0.0:
        return np.zeros((4, 4))
    return _restrict_two_form(contract(phi0(), n), p.basis)


# -- finite-difference bilinear form ------------------------------------------


@dataclass(frozen=True)
class SelfDualFieldSample:
    """Sampled coefficients of a self-dual 2-form on a 4-dim stencil.

    ``f`` has shape (3, n, n, n, n) with n = 2 radius + 1; axis order is
    (x0, x1, x2, x3) with x0 along the circle and the center at the
    mid-index.  The three components are the coefficients in the standard
    self-dual basis, so f_j = T_{0j}.  They must vanish on the x0 axis.
    """

    h: float
    radius: int
    f: np.ndarray
    axis_tol: float = field(default=1e-9)

    def __post_init__(self):
        f = np.asarray(self.f, dtype=float)
        n = 2 * self.radius + 1
        if self.radius < 1:
            raise ValueError("radius must be >= 1")
        if f.shape != (3, n, n, n, n):
            raise ValueError(f"f must have shape (3, {n}, {n}, {n}, {n})")
        if self.h <= 0:
            raise ValueError("h must be positive")
        c = self.radius
        worst = float(np.max(np.abs(f[:, :, c, c, c])))
        if worst >= self.axis_tol:
            raise FieldNonvanishingOnZ(
                f"max |f_j| on the x0 axis is {worst:.3e} >= {self.axis_tol:.0e}"
            )
        f = f.copy()
        f.setflags(write=False)
        object.__setattr__(self, "f", f)


def sample_selfdual_field(fn, h: float, radius: int = 1) -> SelfDualFieldSample:
    """Sample ``fn(x) -> (f1, f2, f3)`` on the stencil grid."""
    n = 2 * radius + 1
    f = np.zeros((3, n, n, n, n))
    offsets = np.arange(-radius, radius + 1) * h
    for a, x0 in enumerate(offsets):
        for b, x1 in enumerate(offsets):
            for c, x2 in enumerate(offsets):
                for d, x3 in enumerate(offsets):
                    f[:, a, b, c, d] = fn(np.array([x0, x1, x2, x3]))
    return SelfDualFieldSample(h=h, radius=radius, f=f)


def linear_graph_field(b: np.ndarray):
    """f_j(x) = sum_k B[k, j] x_k, the linear model with derivative B."""
    b = np.asarray(b, dtype=float)

    def fn(x: np.ndarray) -> np.ndarray:
        return b.T @ x[1:]

    return fn


def cubic_perturbation_field(b: np.ndarray, c: np.ndarray, eps: float):
    """Linear model plus eps * sum_k C[k, j] x_k^3 (visible at order h^2)."""
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)

    def fn(x: np.ndarray) -> np.ndarray:
        return b.T @ x[1:] + eps * (c.T @ x[1:] ** 3)

    return fn


def selfdual_graph_bform(
    sample: SelfDualFieldSample, *, max_h: float = 0.1
) -> tuple[np.ndarray, dict]:
    """Central-difference bilinear form B[k, j] = D_k f_j at the center.

    Diagnostics report the symmetry residual ||B - B^T||_F and the trace
    residual |tr B - det B|; both are O(h^2) when the sampled field comes
    from a coassociative graph.
    """
    if sample.h > max_h:
        raise ValueError(f"h = {sample.h} too coarse for central differences")
    c = sample.radius
    b = np.zeros((3, 3))
    for k in range(3):
        up = [c, c, c, c]
        dn = [c, c, c, c]
        up[k + 1] += 1
        dn[k + 1] -= 1
        for j in range(3):
            b[k, j] = (sample.f[(j, *up)] - sample.f[(j, *dn)]) / (2.0 * sample.h)
    diagnostics = {
        "h": sample.h,
        "symmetry_residual": float(np.linalg.norm(b - b.T)),
        "trace_residual": float(abs(np.trace(b) - np.linalg.det(b))),
    }
    return b, diagnostics
