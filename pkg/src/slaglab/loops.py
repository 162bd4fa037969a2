"""Discretized circle data and the two Z2 invariants.

eta is the first Stiefel-Whitney class of the negative-eigenline bundle of
the graph bilinear form along the circle, computed as a sign holonomy: at
each sample the eigenline is represented by a unit vector in ambient
R^6 = C^3 coordinates, and the invariant is the product over the cyclic
edges (closure included) of sign<l_i, l_{i+1}>.  That product is
independent of the representative signs, of the sample frames, and of
refinement.

Close pairs come in two orderings; the trace-class-1 ordering is the one
whose bilinear form has the (-,+,+) signature, so eta canonicalizes
trace-class-2 samples by swapping the pair before extracting the line
(the two orderings carry isomorphic line bundles).

mu compares two framing loops through per-sample pairing matrices: the
comparison rotations R_i = F-^T r polar(iso_i) F+ (with r = diag(1,1,-1)
the frozen orientation correction in the V- frame) form a loop in SO(3)
whose spin-lift closure parity is the invariant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadLambda,
    Discontinuous,
    EigenlineAmbiguous,
    EmptyComponents,
    NotCloseGraphical,
    OrientationMismatch,
    PerturbationLeftRegion,
    SlagLabError,
)
from .slag import (
    RegionClass,
    SLagPlane,
    characteristic_angles,
    classify_region,
    graph_bilinear_form,
    graph_over,
    negative_eigenline,
    special_phase_projection,
    transversality_margin,
)
from .unitary import is_rotation, quat_from_rotation, quaternion_lift, rotation_from_quat

CLOSE_REGIONS = (RegionClass.S_PI_CLOSE, RegionClass.S_2PI_CLOSE)


@dataclass(frozen=True)
class PairLoop:
    """Cyclic samples of a transverse special Lagrangian pair over a circle."""

    samples: tuple
    delta: float
    component_id: str = "Z0"

    def __post_init__(self):
        if len(self.samples) < 3:
            raise ValueError("a loop needs at least 3 samples")
        object.__setattr__(self, "samples", tuple(self.samples))

    def __len__(self):
        return len(self.samples)


@dataclass(frozen=True)
class FramingLoop:
    """Cyclic orthonormal 3-frames of a rank-3 fibre, in fibre coordinates."""

    frames: tuple
    delta: float = 0.5
    component_id: str = "Z0"

    def __post_init__(self):
        frames = tuple(np.asarray(f, dtype=float) for f in self.frames)
        if len(frames) < 3:
            raise ValueError("a framing loop needs at least 3 samples")
        for i, f in enumerate(frames):
            if f.shape != (3, 3) or np.linalg.norm(f.T @ f - np.eye(3)) >= 1e-9:
                raise ValueError(f"frame {i} is not orthonormal")
        object.__setattr__(self, "frames", frames)

    def __len__(self):
        return len(self.frames)


def validate_pair_loop(loop: PairLoop) -> dict:
    """Continuity, transversality and region diagnostics for a pair loop.

    Raises Discontinuous when a cyclic step exceeds delta in S-distance,
    and NotCloseGraphical unless every sample sits in one and the same
    close-graphical region.
    """
    n = len(loop)
    steps = []
    margins = []
    regions = []
    for i, (v, vp) in enumerate(loop.samples):
        w, wp = loop.samples[(i + 1) % n]
        steps.append(max(v.distance(w), vp.distance(wp)))
        margins.append(transversality_margin(v, vp))
        regions.append(classify_region(characteristic_angles(v, vp)))
    diagnostics = {
        "samples": n,
        "max_step": float(max(steps)),
        "closure_step": float(steps[-1]),
        "min_transversality": float(min(margins)),
        "regions": [r.value for r in regions],
    }
    if max(steps) > loop.delta:
        raise Discontinuous(
            f"step {int(np.argmax(steps))} has S-distance {max(steps):.3e} > delta"
        )
    bad = [r for r in regions if r not in CLOSE_REGIONS]
    if bad or len(set(regions)) != 1:
        raise NotCloseGraphical(f"sample regions {sorted({r.value for r in regions})}")
    return diagnostics


def _ambient_line(v: SLagPlane, vp: SLagPlane, margin: float) -> np.ndarray:
    """Unit ambient R^6 representative of the distinguished eigenline.

    Uses the trace-class-1 ordering of the pair, where the bilinear form
    has signature (-,+,+).
    """
    if characteristic_angles(v, vp).trace_class == 2:
        v, vp = vp, v
    b = graph_bilinear_form(v, vp)
    line = negative_eigenline(b, margin)
    z = v.frame @ line
    return np.concatenate([z.real, z.imag])


def eta_invariant(loop: PairLoop, *, margin: float = 1e-9, ambiguity: float = 0.1) -> int:
    """Sign holonomy of the negative eigenline bundle over the loop."""
    validate_pair_loop(loop)
    lines = [_ambient_line(v, vp, margin) for v, vp in loop.samples]
    sign = 1
    n = len(lines)
    for i in range(n):
        dot = float(lines[i] @ lines[(i + 1) % n])
        if abs(dot) < ambiguity:
            raise EigenlineAmbiguous(
                f"eigenlines at samples {i}, {(i + 1) % n} nearly orthogonal; refine"
            )
        sign *= 1 if dot > 0 else -1
    return sign


def model_lambda(lambda_prime: float) -> float:
    """The negative eigenvalue paired with lambda' by the trace = det law.

    Solves lambda * lambda'^2 = lambda + 2 lambda' for lambda' in (0, 1),
    which gives lambda = 2 lambda' / (lambda'^2 - 1) < 0.
    """
    if not 0.0 < lambda_prime < 1.0:
        raise BadLambda(f"lambda' = {lambda_prime} outside (0, 1)")
    return 2.0 * lambda_prime / (lambda_prime**2 - 1.0)


def generate_model_loop(
    kind: str, n_samples: int, lambda_prime: float = 0.5
) -> PairLoop:
    """The two generators realizing eta = +1 and eta = -1.

    V is fixed at V_0; the bilinear form has eigenvalue lambda on a line
    L(t) and lambda' on its complement, with L either constant (trivial)
    or rotating by pi over one circuit (moebius); V'(t) is the graph.
    """
    if kind not in ("trivial", "moebius"):
        raise ValueError("kind must be 'trivial' or 'moebius'")
    if n_samples < 8:
        raise ValueError("need at least 8 samples")
    lam = model_lambda(lambda_prime)
    v0 = SLagPlane.standard()
    samples = []
    for i in range(n_samples):
        t = i / n_samples
        if kind == "trivial":
            axis = np.array([1.0, 0.0, 0.0])
        else:
            axis = np.array([np.cos(np.pi * t), np.sin(np.pi * t), 0.0])
        b = lambda_prime * np.eye(3) + (lam - lambda_prime) * np.outer(axis, axis)
        samples.append((v0, graph_over(v0, b)))
    steps = [
        max(
            samples[i][0].distance(samples[(i + 1) % n_samples][0]),
            samples[i][1].distance(samples[(i + 1) % n_samples][1]),
        )
        for i in range(n_samples)
    ]
    # floor at the sampling density so constant loops still admit small
    # perturbations within their continuity budget
    delta = max(2.0 * max(steps), 4.0 * np.pi / n_samples)
    return PairLoop(samples=tuple(samples), delta=delta)


def _project_trace_det(b: np.ndarray, *, tol: float = 1e-12, iters: int = 20) -> np.ndarray:
    """Newton projection of a symmetric matrix onto the tr = det surface."""
    b = (b + b.T) / 2.0
    for _ in range(iters):
        g = np.trace(b) - np.linalg.det(b)
        if abs(g) < tol:
            return b
        grad = np.eye(3) - _cofactor(b)
        b = b - (g / float(np.sum(grad * grad))) * grad
        b = (b + b.T) / 2.0
    raise PerturbationLeftRegion("trace = det projection did not converge")


def _cofactor(b: np.ndarray) -> np.ndarray:
    """Cofactor matrix, the gradient of det for symmetric input."""
    c = np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(b, i, axis=0), j, axis=1)
            c[i, j] = (-1) ** (i + j) * np.linalg.det(minor)
    return c


def perturb_loop(
    loop: PairLoop, seed: int, epsilon: float, *, max_tries: int = 20
) -> PairLoop:
    """Random smooth trace=det-preserving perturbation of the graphs.

    Each sample's V' is replaced by the graph of B + eps E(t) projected
    back to tr = det, for a random low-frequency symmetric loop E(t) of
    unit sup norm.  Draws are rejected until the perturbed loop validates;
    after ``max_tries`` rejections PerturbationLeftRegion is raised.
    """
    validate_pair_loop(loop)
    n = len(loop)
    bases = [graph_bilinear_form(v, vp) for v, vp in loop.samples]
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        coeffs = [
            (_random_symmetric(rng), _random_symmetric(rng)) for _ in range(3)
        ]
        fields = []
        for i in range(n):
            t = 2.0 * np.pi * i / n
            e = np.zeros((3, 3))
            for k, (a, c) in enumerate(coeffs):
                e += np.cos(k * t) * a + np.sin(k * t) * c
            fields.append(e)
        scale = max(np.linalg.norm(e) for e in fields)
        fields = [e / scale for e in fields]
        try:
            samples = []
            for (v, _), b, e in zip(loop.samples, bases, fields):
                bp = _project_trace_det(b + epsilon * e)
                samples.append((v, graph_over(v, bp)))
            out = PairLoop(samples=tuple(samples), delta=loop.delta, component_id=loop.component_id)
            validate_pair_loop(out)
            return out
        except (SlagLabError, ValueError):
            continue
    raise PerturbationLeftRegion(f"no admissible perturbation in {max_tries} draws")


def _random_symmetric(rng) -> np.ndarray:
    a = rng.normal(size=(3, 3))
    return (a + a.T) / 2.0


def refine_pair_loop(loop: PairLoop) -> PairLoop:
    """Double the sampling by graph-coordinate midpoints.

    Midpoint base planes come from a polar projection of the averaged
    (aligned) frames, re-projected to the special Lagrangian locus; the
    graphs interpolate the transported bilinear forms, re-projected to
    tr = det.
    """
    n = len(loop)
    samples = []
    for i in range(n):
        v, vp = loop.samples[i]
        w, wp = loop.samples[(i + 1) % n]
        samples.append((v, vp))
        # align w's frame to v's before averaging
        overlap = (w.frame.conj().T @ v.frame).real
        uo, _, vo = np.linalg.svd(overlap)
        wal = w.frame @ (uo @ vo)
        um, _, vm = np.linalg.svd((v.frame + wal) / 2.0)
        vmid = SLagPlane(special_phase_projection(um @ vm))
        bmid = _project_trace_det(
            (graph_bilinear_form(v, vp) + _transported_form(v, w, wp)) / 2.0
        )
        samples.append((vmid, graph_over(vmid, bmid)))
    return PairLoop(samples=tuple(samples), delta=loop.delta, component_id=loop.component_id)


def _transported_form(v: SLagPlane, w: SLagPlane, wp: SLagPlane) -> np.ndarray:
    """B of (w, wp) expressed in the O(3) alignment of w's frame to v's."""
    overlap = (w.frame.conj().T @ v.frame).real
    uo, _, vo = np.linalg.svd(overlap)
    o = uo @ vo
    return o.T @ graph_bilinear_form(w, wp) @ o


# -- mu ------------------------------------------------------------------------

ORIENTATION_REFLECTION = np.diag([1.0, 1.0, -1.0])


def _polar_orthogonal(m: np.ndarray) -> np.ndarray:
    u, _, vt = np.linalg.svd(np.asarray(m, dtype=float))
    return u @ vt


def comparison_loop(
    fplus: FramingLoop, fminus: FramingLoop, iso_matrices
) -> list[np.ndarray]:
    """The SO(3) comparison rotations F-^T r polar(iso) F+ per sample."""
    if len(fplus) != len(fminus) or len(iso_matrices) != len(fplus):
        raise ValueError("framing loops and iso matrices must have equal lengths")
    rots = []
    for i, (fp, fm, iso) in enumerate(zip(fplus.frames, fminus.frames, iso_matrices)):
        r = fm.T @ ORIENTATION_REFLECTION @ _polar_orthogonal(iso) @ fp
        if not is_rotation(r, tol=1e-8):
            raise OrientationMismatch(f"comparison matrix {i} has det != +1")
        rots.append(r)
    return rots


def mu_parity(fplus: FramingLoop, fminus: FramingLoop, iso_matrices) -> int:
    """Spin-lift closure parity of the framing comparison loop.

    +1 means the framings agree up to homotopy through the pairing
    isomorphism; -1 otherwise.
    """
    rots = comparison_loop(fplus, fminus, iso_matrices)
    return quaternion_lift(rots, closed=True).closed_parity


def refine_framing_loop(loop: FramingLoop) -> FramingLoop:
    """Insert geodesic midpoints between consecutive frames."""
    n = len(loop)
    frames = []
    for i in range(n):
        f, g = loop.frames[i], loop.frames[(i + 1) % n]
        frames.append(f)
        rel = f.T @ g
        q = quat_from_rotation(rel)
        half = np.array([np.sqrt(max((1.0 + q[0]) / 2.0, 0.0)), *(q[1:] / np.sqrt(max(2.0 * (1.0 + q[0]), 1e-300)))])
        frames.append(f @ rotation_from_quat(half / np.linalg.norm(half)))
    return FramingLoop(frames=tuple(frames), delta=loop.delta, component_id=loop.component_id)


# -- connected sum descriptor ---------------------------------------------------


@dataclass(frozen=True)
class ConnectedSumDescriptor:
    """Component count and per-component mu values for the Thm-A string."""

    k: int
    mu: tuple
    name_plus: str = "X+"
    name_minus: str = "X-"

    def __post_init__(self):
        if self.k < 1:
            raise EmptyComponents("need at least one circle component")
        mu = tuple(int(m) for m in self.mu)
        if len(mu) != self.k:
            raise ValueError(f"k = {self.k} but {len(mu)} mu values")
        if any(m not in (1, -1) for m in mu):
            raise ValueError("mu values must be +1 or -1")
        object.__setattr__(self, "mu", mu)

    @property
    def mu_plus(self) -> int:
        return sum(1 for m in self.mu if m == 1)

    @property
    def mu_minus(self) -> int:
        return sum(1 for m in self.mu if m == -1)


def _summand(count: int, name: str) -> list[str]:
    if count == 0:
        return []
    return [f"({name})" if count == 1 else f"{count}({name})"]


def connected_sum_descriptor(d: ConnectedSumDescriptor) -> tuple[str, str | None]:
    """Canonical and Wall-simplified connected-sum strings.

    The canonical string lists a = mu+ copies of S2xS2, b = mu- copies of
    CP2#CP2bar and (k-1) copies of S1xS3, omitting zero counts.  The Wall
    simplification (valid exactly when mu- >= 1) trades every S2xS2 for a
    CP2#CP2bar.
    """
    parts = [d.name_plus, d.name_minus]
    parts += _summand(d.mu_plus, "S2xS2")
    parts += _summand(d.mu_minus, "CP2#CP2bar")
    parts += _summand(d.k - 1, "S1xS3")
    canonical = " # ".join(parts)
    wall = None
    if d.mu_minus >= 1:
        wparts = [d.name_plus, d.name_minus]
        wparts += _summand(d.k, "CP2#CP2bar")
        wparts += _summand(d.k - 1, "S1xS3")
        wall = " # ".join(wparts)
    return canonical, wall
