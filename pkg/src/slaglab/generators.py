"""Seeded random generators for every input class.

Everything is deterministic per seed; stratum-targeted generation works in
normal-form coordinates (pick angles in the stratum, then conjugate by a
Haar-random SU(3) element).
"""

from __future__ import annotations

import numpy as np

from .loops import FramingLoop, PairLoop, generate_model_loop
from .slag import AngleVector, SLagPlane, plane_from_angles
from .unitary import axis_angle_rotation

STRATA = ("generic", "eq12", "eq23", "all_equal")
REGIONS = ("close", "far", "any_graphical")


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_su3(rng: np.random.Generator) -> np.ndarray:
    """Haar-ish SU(3) element from a complex Ginibre QR with phase fixes."""
    z = (rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    return q * np.exp(-1j * np.angle(np.linalg.det(q)) / 3.0)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, [0, 1]] = q[:, [1, 0]]
    return q


def random_unit7(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=7)
    return v / np.linalg.norm(v)


def random_angle_vector(
    rng: np.random.Generator,
    m: int = 1,
    *,
    stratum: str = "generic",
    region: str | None = None,
    margin: float = 0.05,
) -> AngleVector:
    """Angles in the chosen stratum of I0(3), optionally region-targeted.

    ``region``: 'close' forces theta into the close-graphical set of its
    trace class, 'far' the far one, 'any_graphical' only keeps angles away
    from the pi/2 walls.  Margins keep samples off strata boundaries.
    """
    if m not in (1, 2):
        raise ValueError("trace class must be 1 or 2")
    av = _angle_vector_class1(rng, stratum=stratum, region=region, margin=margin)
    if m == 2:
        from .slag import angle_involution

        av = angle_involution(av)
    return av


def _angle_vector_class1(
    rng: np.random.Generator, *, stratum: str, region: str | None, margin: float
) -> AngleVector:
    if stratum == "all_equal":
        return AngleVector(np.array([np.pi / 3] * 3), 1)
    if stratum == "eq12":
        # theta1 = theta2 = s < theta3 = pi - 2s, s < pi/3
        lo, hi = margin, np.pi / 3 - margin
        for _ in range(1000):
            s = rng.uniform(lo, hi)
            theta = np.array([s, s, np.pi - 2 * s])
            if _region_ok(theta, region, margin):
                return AngleVector(theta, 1)
        raise ValueError(f"could not hit region {region} in stratum eq12")
    if stratum == "eq23":
        # theta2 = theta3 = s > theta1 = pi - 2s, pi/3 < s < pi/2
        lo, hi = np.pi / 3 + margin, np.pi / 2 - margin
        for _ in range(1000):
            s = rng.uniform(lo, hi)
            theta = np.array([np.pi - 2 * s, s, s])
            if _region_ok(theta, region, margin):
                return AngleVector(theta, 1)
        raise ValueError(f"could not hit region {region} in stratum eq23")
    if stratum != "generic":
        raise ValueError(f"unknown stratum {stratum!r}")
    for _ in range(10000):
        theta = np.sort(rng.dirichlet(np.ones(3)) * np.pi)
        if theta[0] < margin or np.min(np.diff(theta)) < margin:
            continue
        if _region_ok(theta, region, margin):
            return AngleVector(theta, 1)
    raise ValueError(f"could not hit region {region} in the generic stratum")


def _region_ok(theta: np.ndarray, region: str | None, margin: float) -> bool:
    if region is None:
        return True
    off_wall = np.min(np.abs(theta - np.pi / 2)) > margin
    if region == "close":
        return off_wall and theta[2] > np.pi / 2
    if region == "far":
        return off_wall and theta[2] < np.pi / 2
    if region == "any_graphical":
        return off_wall
    raise ValueError(f"unknown region {region!r}")


def random_slag_plane(rng: np.random.Generator) -> SLagPlane:
    return SLagPlane.standard().transform(random_su3(rng))


def random_transverse_pair(
    rng: np.random.Generator,
    *,
    m: int = 1,
    stratum: str = "generic",
    region: str | None = None,
    margin: float = 0.05,
) -> tuple[SLagPlane, SLagPlane, AngleVector]:
    av = random_angle_vector(rng, m, stratum=stratum, region=region, margin=margin)
    a = random_su3(rng)
    v = SLagPlane.standard().transform(a)
    vp = plane_from_angles(av.theta).transform(a)
    return v, vp, av


def random_close_graphical_pair(
    rng: np.random.Generator, *, margin: float = 0.05
) -> tuple[SLagPlane, SLagPlane, AngleVector]:
    """A close pair in the trace-class-1 ordering (signature (-,+,+))."""
    return random_transverse_pair(rng, m=1, region="close", margin=margin)


def random_pair_loop(
    model: str, n_samples: int = 64, lambda_prime: float = 0.5
) -> PairLoop:
    return generate_model_loop(model, n_samples, lambda_prime)


def random_framing_loop(
    rng: np.random.Generator, *, twists: int = 0, n_samples: int = 64
) -> FramingLoop:
    """Frames spinning ``twists`` full turns about a seeded axis.

    The same seed with different twist counts shares the base frame and
    axis, so generated loops are directly comparable.
    """
    base = random_rotation(rng)
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    frames = [
        axis_angle_rotation(axis, 2.0 * np.pi * twists * i / n_samples) @ base
        for i in range(n_samples)
    ]
    return FramingLoop(frames=tuple(frames))


def generate(kind: str, seed: int = 0, **kwargs):
    """Dispatch by kind name; the CLI's single entry point."""
    rng = rng_from_seed(seed)
    if kind == "su3":
        return random_su3(rng)
    if kind == "angle-vector":
        return random_angle_vector(rng, **kwargs)
    if kind == "slag-plane":
        return random_slag_plane(rng)
    if kind == "transverse-pair":
        return random_transverse_pair(rng, **kwargs)
    if kind == "close-graphical-pair":
        return random_close_graphical_pair(rng, **kwargs)
    if kind == "pair-loop":
        return random_pair_loop(**kwargs)
    if kind == "framing-loop":
        return random_framing_loop(rng, **kwargs)
    raise ValueError(f"unknown generator kind {kind!r}")
