"""JSON document formats and schema-checked loading.

Wire formats (complex numbers are [re, im] pairs, matrices row-major):

* complex 3x3 frame: [[[re, im] x3] x3]
* plane:        {"frame": <frame>}
* pair:         {"V": <frame>, "Vp": <frame>}
* angle vector: {"theta": [t1, t2, t3], "m": 1|2}
* k-form:       {"degree": k, "terms": [{"idx": [...], "c": real}]}
* table:        [{"i":, "j":, "k":, "sign":} x64]
* pair loop:    {"component": id, "delta": real,
                 "samples": [{"V": frame, "Vp": frame}, ...]}
* framing loop: {"component": id, "delta": real,
                 "samples": [[[real x3] x3], ...]}
* iso list:     {"samples": [[[real x3] x3], ...]}
* coassoc:      {"span": [[real x7] x4], "orient": 1|-1}
* field sample: {"h": real, "radius": int, "f": [3][n][n][n][n] reals}

Schema failures raise SchemaViolation carrying a JSON-pointer location.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import MalformedInput, SchemaViolation, SlagLabError
from .g2circle import CoassocPlane, SelfDualFieldSample
from .loops import FramingLoop, PairLoop
from .slag import AngleVector, SLagPlane


def load_json(path) -> object:
    p = Path(path)
    if not p.exists():
        raise MalformedInput(f"no such file: {p}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{p}: {exc}") from None


def dump_json(doc, path=None) -> str:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def _want(cond: bool, msg: str, ptr: str):
    if not cond:
        raise SchemaViolation(msg, ptr)


def _number(x, ptr: str) -> float:
    _want(isinstance(x, (int, float)) and not isinstance(x, bool), "expected a number", ptr)
    return float(x)


def _complex_entry(x, ptr: str) -> complex:
    _want(isinstance(x, list) and len(x) == 2, "expected [re, im]", ptr)
    return complex(_number(x[0], ptr + "/0"), _number(x[1], ptr + "/1"))


def cmat_to_json(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def cmat_from_json(doc, ptr: str = "") -> np.ndarray:
    _want(isinstance(doc, list) and len(doc) == 3, "expected 3 rows", ptr)
    out = np.zeros((3, 3), dtype=complex)
    for i, row in enumerate(doc):
        _want(isinstance(row, list) and len(row) == 3, "expected 3 entries", f"{ptr}/{i}")
        for j, entry in enumerate(row):
            out[i, j] = _complex_entry(entry, f"{ptr}/{i}/{j}")
    return out


def rmat_from_json(doc, ptr: str = "", shape=(3, 3)) -> np.ndarray:
    _want(isinstance(doc, list) and len(doc) == shape[0], f"expected {shape[0]} rows", ptr)
    out = np.zeros(shape)
    for i, row in enumerate(doc):
        _want(
            isinstance(row, list) and len(row) == shape[1],
            f"expected {shape[1]} entries",
            f"{ptr}/{i}",
        )
        for j, entry in enumerate(row):
            out[i, j] = _number(entry, f"{ptr}/{i}/{j}")
    return out


def rmat_to_json(m: np.ndarray) -> list:
    return [[float(x) for x in row] for row in np.asarray(m, dtype=float)]


def plane_to_json(p: SLagPlane) -> dict:
    return {"frame": cmat_to_json(p.frame)}


def plane_from_json(doc, ptr: str = "") -> SLagPlane:
    _want(isinstance(doc, dict) and "frame" in doc, "expected {'frame': ...}", ptr)
    frame = cmat_from_json(doc["frame"], ptr + "/frame")
    try:
        return SLagPlane(frame)
    except ValueError as exc:
        raise SchemaViolation(str(exc), ptr + "/frame") from None


def pair_from_json(doc, ptr: str = "") -> tuple[SLagPlane, SLagPlane]:
    _want(isinstance(doc, dict), "expected an object", ptr)
    for key in ("V", "Vp"):
        _want(key in doc, f"missing key {key}", ptr)
    v = plane_from_json({"frame": doc["V"]}, ptr + "/V")
    vp = plane_from_json({"frame": doc["Vp"]}, ptr + "/Vp")
    return v, vp


def pair_to_json(v: SLagPlane, vp: SLagPlane) -> dict:
    return {"V": cmat_to_json(v.frame), "Vp": cmat_to_json(vp.frame)}


def angle_vector_to_json(av: AngleVector) -> dict:
    return {"theta": [float(t) for t in av.theta], "m": av.trace_class}


def angle_vector_from_json(doc, ptr: str = "") -> AngleVector:
    _want(isinstance(doc, dict) and "theta" in doc and "m" in doc, "expected theta and m", ptr)
    theta = doc["theta"]
    _want(isinstance(theta, list) and len(theta) == 3, "expected 3 angles", ptr + "/theta")
    vals = [_number(t, f"{ptr}/theta/{i}") for i, t in enumerate(theta)]
    _want(doc["m"] in (1, 2), "m must be 1 or 2", ptr + "/m")
    try:
        return AngleVector(np.array(vals), int(doc["m"]))
    except ValueError as exc:
        raise SchemaViolation(str(exc), ptr + "/theta") from None


def pair_loop_to_json(loop: PairLoop) -> dict:
    return {
        "component": loop.component_id,
        "delta": loop.delta,
        "samples": [pair_to_json(v, vp) for v, vp in loop.samples],
    }


def pair_loop_from_json(doc, ptr: str = "") -> PairLoop:
    _want(isinstance(doc, dict), "expected an object", ptr)
    for key in ("delta", "samples"):
        _want(key in doc, f"missing key {key}", ptr)
    delta = _number(doc["delta"], ptr + "/delta")
    samples = doc["samples"]
    _want(isinstance(samples, list) and len(samples) >= 3, "need >= 3 samples", ptr + "/samples")
    pairs = [pair_from_json(s, f"{ptr}/samples/{i}") for i, s in enumerate(samples)]
    try:
        return PairLoop(
            samples=tuple(pairs),
            delta=delta,
            component_id=str(doc.get("component", "Z0")),
        )
    except ValueError as exc:
        raise SchemaViolation(str(exc), ptr) from None


def framing_loop_to_json(loop: FramingLoop) -> dict:
    return {
        "component": loop.component_id,
        "delta": loop.delta,
        "samples": [rmat_to_json(f) for f in loop.frames],
    }


def framing_loop_from_json(doc, ptr: str = "") -> FramingLoop:
    _want(isinstance(doc, dict) and "samples" in doc, "expected samples", ptr)
    samples = doc["samples"]
    _want(isinstance(samples, list) and len(samples) >= 3, "need >= 3 samples", ptr + "/samples")
    frames = [rmat_from_json(s, f"{ptr}/samples/{i}") for i, s in enumerate(samples)]
    try:
        return FramingLoop(
            frames=tuple(frames),
            delta=_number(doc.get("delta", 0.5), ptr + "/delta"),
            component_id=str(doc.get("component", "Z0")),
        )
    except ValueError as exc:
        raise SchemaViolation(str(exc), ptr + "/samples") from None


def iso_list_from_json(doc, ptr: str = "") -> list[np.ndarray]:
    _want(isinstance(doc, dict) and "samples" in doc, "expected samples", ptr)
    samples = doc["samples"]
    _want(isinstance(samples, list), "expected a list", ptr + "/samples")
    return [rmat_from_json(s, f"{ptr}/samples/{i}") for i, s in enumerate(samples)]


def coassoc_to_json(p: CoassocPlane) -> dict:
    return {"span": rmat_to_json(p.basis), "orient": p.orientation}


def coassoc_from_json(doc, ptr: str = "") -> CoassocPlane:
    _want(isinstance(doc, dict) and "span" in doc, "expected span", ptr)
    span = rmat_from_json(doc["span"], ptr + "/span", shape=(4, 7))
    orient = doc.get("orient", 1)
    _want(orient in (1, -1), "orient must be +1 or -1", ptr + "/orient")
    try:
        return CoassocPlane(span, orientation=int(orient))
    except (ValueError, SlagLabError) as exc:
        raise SchemaViolation(str(exc), ptr + "/span") from None


def field_sample_to_json(s: SelfDualFieldSample) -> dict:
    return {"h": s.h, "radius": s.radius, "f": s.f.tolist()}


def field_sample_from_json(doc, ptr: str = "") -> SelfDualFieldSample:
    _want(isinstance(doc, dict), "expected an object", ptr)
    for key in ("h", "radius", "f"):
        _want(key in doc, f"missing key {key}", ptr)
    h = _number(doc["h"], ptr + "/h")
    radius = doc["radius"]
    _want(isinstance(radius, int) and radius >= 1, "radius must be an int >= 1", ptr + "/radius")
    try:
        f = np.asarray(doc["f"], dtype=float)
    except (TypeError, ValueError):
        raise SchemaViolation("f must be a numeric nested array", ptr + "/f") from None
    try:
        return SelfDualFieldSample(h=h, radius=radius, f=f)
    except (ValueError, SlagLabError) as exc:
        raise SchemaViolation(str(exc), ptr + "/f") from None
