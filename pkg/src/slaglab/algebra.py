"""Octonion arithmetic and exterior algebra on R^7.

Conventions, frozen here once and referenced everywhere else:

* Octonion basis ``e1..e8`` with ``e1 = 1``, ``(e2, e3, e4) = (i, j, k)``,
  ``e5 = e`` and ``(e6, e7, e8) = (ie, je, ke)``, splitting O = H + He.
* Products follow the Cayley-Dickson rule
  ``(a + b e)(c + d e) = (a c - conj(d) b) + (d a + b conj(c)) e``.
  The full 8 x 8 basis table generated from this rule is the single
  source of sign truth; it is exported by :func:`multiplication_table`
  and frozen as a golden JSON file in the test suite.
* Imaginary octonions are coordinatized over ``e2..e8``; a 7-vector index
  ``0..6`` always means the basis label ``2..8``.
* The cross product is ``x * y = Im(conj(y) x)``.
* The associative 3-form is ``phi0 = e*_{234} - e*_{278} + e*_{368}
  - e*_{467} + e*_{256} + e*_{357} + e*_{458}`` (sorted-index signs of the
  standard seven-term expression).
* k-form indices are strictly increasing tuples of labels in ``2..8``.
* The Hodge star uses the Euclidean metric and the orientation of the
  ordered basis ``e2, ..., e8``.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to use concurrently.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from types import MappingProxyType

import numpy as np

from .errors import DegreeOverflow

IM_LABELS = (2, 3, 4, 5, 6, 7, 8)

# Quaternion basis products: _QUAT[a][b] = (index, sign) for q_a q_b over (1, i, j, k).
_QUAT = {
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
    (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
    (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
}


def _quat_mul(a: int, sa: int, b: int, sb: int) -> tuple[int, int]:
    k, s = _QUAT[(a, b)]
    return k, s * sa * sb


def _quat_conj(a: int, sa: int) -> tuple[int, int]:
    return a, sa if a == 0 else -sa


@lru_cache(maxsize=1)
def _basis_table() -> tuple[np.ndarray, np.ndarray]:
    """8 x 8 arrays (index, sign) with e_i e_j = sign * e_index, 0-based."""
    idx = np.zeros((8, 8), dtype=np.int64)
    sign = np.zeros((8, 8), dtype=np.int64)
    for i in range(8):
        # e_i = (p, part): quaternion index p in the H or He summand
        pi, parti = (i, 0) if i < 4 else (i - 4, 1)
        for j in range(8):
            pj, partj = (j, 0) if j < 4 else (j - 4, 1)
            # (a + b e)(c + d e) = (ac - conj(d) b) + (da + b conj(c)) e
            a = (pi, 1) if parti == 0 else None
            b = (pi, 1) if parti == 1 else None
            c = (pj, 1) if partj == 0 else None
            d = (pj, 1) if partj == 1 else None
            if a and c:          # ac
                k, s = _quat_mul(a[0], a[1], c[0], c[1])
                part = 0
            elif a and d:        # (da) e
                k, s = _quat_mul(d[0], d[1], a[0], a[1])
                part = 1
            elif b and c:        # (b conj(c)) e
                cc = _quat_conj(c[0], c[1])
                k, s = _quat_mul(b[0], b[1], cc[0], cc[1])
                part = 1
            else:                # -conj(d) b
                dd = _quat_conj(d[0], d[1])
                k, s = _quat_mul(dd[0], dd[1], b[0], b[1])
                s = -s
                part = 0
            idx[i, j] = k + 4 * part
            sign[i, j] = s
    return idx, sign


def multiplication_table() -> list[dict[str, int]]:
    """The 64-entry basis product table, 1-based labels, as JSON-ready dicts.

    Each entry ``{"i": i, "j": j, "k": k, "sign": s}`` records
    ``e_i e_j = s e_k``.
    """
    idx, sign = _basis_table()
    return [
        {"i": i + 1, "j": j + 1, "k": int(idx[i, j]) + 1, "sign": int(sign[i, j])}
        for i in range(8)
        for j in range(8)
    ]


class Octonion:
    """An octonion over the basis e1..e8, e1 the identity."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=float)
        if c.shape != (8,):
            raise ValueError("octonion needs 8 coefficients")
        c = c.copy()
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def basis(cls, label: int) -> "Octonion":
        c = np.zeros(8)
        c[label - 1] = 1.0
        return cls(c)

    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion(self.coeffs + other.coeffs)

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion(self.coeffs - other.coeffs)

    def __rmul__(self, scalar: float) -> "Octonion":
        return Octonion(float(scalar) * self.coeffs)

    def conj(self) -> "Octonion":
        c = self.coeffs.copy()
        c[1:] = -c[1:]
        return Octonion(c)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def real(self) -> float:
        return float(self.coeffs[0])

    def im(self) -> "ImOctonion":
        return ImOctonion(self.coeffs[1:])

    def __repr__(self):
        return f"Octonion({self.coeffs.tolist()})"


class ImOctonion:
    """An imaginary octonion, coordinatized over e2..e8."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=float)
        if c.shape != (7,):
            raise ValueError("imaginary octonion needs 7 coefficients")
        c = c.copy()
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def basis(cls, label: int) -> "ImOctonion":
        if not 2 <= label <= 8:
            raise ValueError("imaginary basis labels are 2..8")
        c = np.zeros(7)
        c[label - 2] = 1.0
        return cls(c)

    def as_octonion(self) -> Octonion:
        c = np.zeros(8)
        c[1:] = self.coeffs
        return Octonion(c)

    def __add__(self, other: "ImOctonion") -> "ImOctonion":
        return ImOctonion(self.coeffs + other.coeffs)

    def __sub__(self, other: "ImOctonion") -> "ImOctonion":
        return ImOctonion(self.coeffs - other.coeffs)

    def __rmul__(self, scalar: float) -> "ImOctonion":
        return ImOctonion(float(scalar) * self.coeffs)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def dot(self, other: "ImOctonion") -> float:
        return float(self.coeffs @ other.coeffs)

    def __repr__(self):
        return f"ImOctonion({self.coeffs.tolist()})"


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    """Product xy from the frozen basis table (bilinear extension)."""
    idx, sign = _basis_table()
    out = np.zeros(8)
    prod = np.outer(x.coeffs, y.coeffs) * sign
    np.add.at(out, idx.ravel(), prod.ravel())
    return Octonion(out)


@lru_cache(maxsize=1)
def structure_tensor() -> np.ndarray:
    """Dense T[i, j, k] = <e_{i+2} x e_{j+2}, e_{k+2}> on Im(O).

    Equals the dense coefficient tensor of phi0; the identity-suite tests
    confirm the two routes agree.
    """
    idx, sign = _basis_table()
    t = np.zeros((7, 7, 7))
    for i in range(7):
        for j in range(7):
            # cross(e_i, e_j) = Im(conj(e_j) e_i) = -Im(e_j e_i) for imaginaries
            k = int(idx[j + 1, i + 1])
            s = -int(sign[j + 1, i + 1])
            if k >= 1:  # imaginary component only
                t[i, j, k - 1] = s
    t.setflags(write=False)
    return t


def _vec7(v) -> np.ndarray:
    if isinstance(v, ImOctonion):
        return v.coeffs
    a = np.asarray(v, dtype=float)
    if a.shape != (7,):
        raise ValueError("expected a 7-vector over e2..e8")
    return a


def cross(x, y) -> ImOctonion:
    """Cross product x * y = Im(conj(y) x) on Im(O)."""
    t = structure_tensor()
    return ImOctonion(np.einsum("ijk,i,j->k", t, _vec7(x), _vec7(y)))


def cross_batch(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Row-wise cross products for (n, 7) arrays."""
    return np.einsum("ijk,ni,nj->nk", structure_tensor(), x, y)


def cross_operator(u) -> np.ndarray:
    """7 x 7 matrix of v -> cross(u, v)."""
    return np.einsum("ijk,i->kj", structure_tensor(), _vec7(u))


def _det_small(m: list[list[float]]) -> float:
    k = len(m)
    if k == 0:
        return 1.0
    if k == 1:
        return m[0][0]
    if k == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if k == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    return float(np.linalg.det(np.asarray(m)))


def _merge_sign(left: tuple[int, ...], right: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Sort the concatenation of two increasing tuples, tracking the sign.

    Returns (sorted tuple, permutation sign); sign 0 if an index repeats.
    """
    merged = list(left) + list(right)
    sign = 1
    # insertion sort with inversion count; tuples are tiny
    for a in range(1, len(merged)):
        b = a
        while b > 0 and merged[b - 1] > merged[b]:
            merged[b - 1], merged[b] = merged[b], merged[b - 1]
            sign = -sign
            b -= 1
        if b > 0 and merged[b - 1] == merged[b]:
            return tuple(merged), 0
    return tuple(merged), sign


class KForm:
    """A sparse alternating k-form on Im(O), 0 <= k <= 7.

    Coefficients are stored on strictly increasing label tuples from 2..8
    only; other orderings are reduced to that with the permutation sign.
    """

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: dict | None = None):
        if not 0 <= degree <= 7:
            raise ValueError("degree must be in 0..7")
        self.degree = int(degree)
        clean: dict[tuple[int, ...], float] = {}
        for idx, c in (terms or {}).items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != degree:
                raise ValueError(f"index {idx} has wrong length for degree {degree}")
            if any(not 2 <= i <= 8 for i in idx):
                raise ValueError(f"index {idx} outside labels 2..8")
            srt, sgn = _merge_sign(idx, ())
            if sgn == 0:
                raise ValueError(f"repeated label in index {idx}")
            c = float(c) * sgn
            if c != 0.0:
                clean[srt] = clean.get(srt, 0.0) + c
        self._terms = {k: v for k, v in clean.items() if v != 0.0}

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def coefficient(self, idx) -> float:
        srt, sgn = _merge_sign(tuple(int(i) for i in idx), ())
        if sgn == 0:
            return 0.0
        return sgn * self._terms.get(srt, 0.0)

    def evaluate(self, *vectors) -> float:
        """Alternating multilinear evaluation on ``degree`` many 7-vectors."""
        if len(vectors) != self.degree:
            raise ValueError(f"need {self.degree} vectors, got {len(vectors)}")
        vs = [_vec7(v) for v in vectors]
        total = 0.0
        for idx, c in self._terms.items():
            minor = [[vs[b][i - 2] for b in range(self.degree)] for i in idx]
            total += c * _det_small(minor)
        return total

    def norm(self) -> float:
        return float(np.sqrt(sum(c * c for c in self._terms.values())))

    def dense(self) -> np.ndarray:
        """Fully antisymmetric dense coefficient tensor, shape (7,) * degree."""
        from itertools import permutations

        out = np.zeros((7,) * self.degree)
        for idx, c in self._terms.items():
            base = tuple(i - 2 for i in idx)
            for perm in permutations(range(self.degree)):
                sgn = _perm_sign(perm)
                out[tuple(base[p] for p in perm)] = sgn * c
        return out

    def __add__(self, other: "KForm") -> "KForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        terms = dict(self._terms)
        for idx, c in other._terms.items():
            terms[idx] = terms.get(idx, 0.0) + c
        return KForm(self.degree, terms)

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-1.0) * other

    def __rmul__(self, scalar: float) -> "KForm":
        s = float(scalar)
        return KForm(self.degree, {i: s * c for i, c in self._terms.items()})

    def __repr__(self):
        body = " ".join(
            f"{c:+g}*e{''.join(map(str, idx))}" for idx, c in sorted(self._terms.items())
        )
        return f"KForm(deg={self.degree}, {body or '0'})"


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def wedge(a: KForm, b: KForm) -> KForm:
    """Graded-commutative associative wedge product."""
    if a.degree + b.degree > 7:
        raise DegreeOverflow(f"degree {a.degree} + {b.degree} exceeds 7")
    terms: dict[tuple[int, ...], float] = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            srt, sgn = _merge_sign(ia, ib)
            if sgn == 0:
                continue
            terms[srt] = terms.get(srt, 0.0) + sgn * ca * cb
    return KForm(a.degree + b.degree, terms)


def contract(a: KForm, v) -> KForm:
    """Interior product of a k-form with a vector (first slot)."""
    if a.degree < 1:
        raise ValueError("cannot contract a 0-form")
    vv = _vec7(v)
    terms: dict[tuple[int, ...], float] = {}
    for idx, c in a.terms.items():
        for pos, label in enumerate(idx):
            comp = vv[label - 2]
            if comp == 0.0:
                continue
            rest = idx[:pos] + idx[pos + 1:]
            sgn = -1.0 if pos % 2 else 1.0
            terms[rest] = terms.get(rest, 0.0) + sgn * comp * c
    return KForm(a.degree - 1, terms)


def hodge_star(a: KForm) -> KForm:
    """Hodge dual for the Euclidean metric, orientation e2 ^ ... ^ e8."""
    terms: dict[tuple[int, ...], float] = {}
    for idx, c in a.terms.items():
        comp = tuple(i for i in IM_LABELS if i not in idx)
        _, sgn = _merge_sign(idx, comp)
        terms[comp] = terms.get(comp, 0.0) + sgn * c
    return KForm(7 - a.degree, terms)


def covector(v) -> KForm:
    """Metric-dual 1-form of a 7-vector."""
    vv = _vec7(v)
    return KForm(1, {(i,): vv[i - 2] for i in IM_LABELS if vv[i - 2] != 0.0})


def volume_form() -> KForm:
    return KForm(7, {IM_LABELS: 1.0})


# phi0 in sorted-index form; signs are the Eq-style seven terms rewritten on
# increasing tuples, and are cross-checked against the basis table by the
# identity suites.
PHI0_TERMS = MappingProxyType({
    (2, 3, 4): 1.0,
    (2, 7, 8): -1.0,
    (3, 6, 8): 1.0,
    (4, 6, 7): -1.0,
    (2, 5, 6): 1.0,
    (3, 5, 7): 1.0,
    (4, 5, 8): 1.0,
})


@lru_cache(maxsize=1)
def phi0() -> KForm:
    """The standard associative 3-form on Im(O)."""
    return KForm(3, dict(PHI0_TERMS))


def phi0_batch(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """phi0(x, y, z) row-wise for (n, 7) arrays, via the structure tensor."""
    return np.einsum("ijk,ni,nj,nk->n", structure_tensor(), x, y, z)


def kform_to_json(a: KForm) -> dict:
    return {
        "degree": a.degree,
        "terms": [
            {"idx": list(idx), "c": c} for idx, c in sorted(a.terms.items())
        ],
    }


def kform_from_json(doc: dict) -> KForm:
    return KForm(doc["degree"], {tuple(t["idx"]): t["c"] for t in doc["terms"]})
