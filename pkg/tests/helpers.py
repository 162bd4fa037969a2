"""Independent brute-force oracles used to freeze expected values.

Everything here deliberately avoids the library's own code paths: octonion
products come from a hand-written quaternion pair construction, Hodge
duals from a dense epsilon-tensor contraction, and wedge values from a
full shuffle sum.
"""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

# Hand-entered quaternion products over (1, i, j, k); the sign source for
# the oracle table, independent of the library's encoding.
_QMUL = {
    ("1", "1"): ("1", 1), ("1", "i"): ("i", 1), ("1", "j"): ("j", 1), ("1", "k"): ("k", 1),
    ("i", "1"): ("i", 1), ("i", "i"): ("1", -1), ("i", "j"): ("k", 1), ("i", "k"): ("j", -1),
    ("j", "1"): ("j", 1), ("j", "i"): ("k", -1), ("j", "j"): ("1", -1), ("j", "k"): ("i", 1),
    ("k", "1"): ("k", 1), ("k", "i"): ("j", 1), ("k", "j"): ("i", -1), ("k", "k"): ("1", -1),
}

_QNAMES = ("1", "i", "j", "k")


def _qmul(a, b):
    """(name, sign) x (name, sign) -> (name, sign)."""
    name, s = _QMUL[(a[0], b[0])]
    return name, s * a[1] * b[1]


def _qconj(a):
    return (a[0], a[1] if a[0] == "1" else -a[1])


def oracle_octonion_table() -> list[dict]:
    """All 64 basis products from (a + be)(c + de) = (ac - d~b) + (da + bc~)e.

    Basis order: e1..e4 = (1, i, j, k) in the first quaternion copy,
    e5..e8 = (1, i, j, k) in the second.
    """
    entries = []
    for i in range(1, 9):
        for j in range(1, 9):
            a = (_QNAMES[i - 1], 1) if i <= 4 else None
            b = (_QNAMES[i - 5], 1) if i > 4 else None
            c = (_QNAMES[j - 1], 1) if j <= 4 else None
            d = (_QNAMES[j - 5], 1) if j > 4 else None
            if a is not None and c is not None:
                name, s = _qmul(a, c)
                part = 0
            elif a is not None:
                name, s = _qmul(d, a)
                part = 1
            elif c is not None:
                name, s = _qmul(b, _qconj(c))
                part = 1
            else:
                name, s = _qmul(_qconj(d), b)
                s = -s
                part = 0
            k = _QNAMES.index(name) + 1 + 4 * part
            entries.append({"i": i, "j": j, "k": k, "sign": s})
    return entries


def perm_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (0 if repeats)."""
    seq = list(seq)
    sign = 1
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] == seq[b]:
                return 0
            if seq[a] > seq[b]:
                sign = -sign
    return sign


_EPS7 = None


def epsilon7() -> np.ndarray:
    """Dense totally antisymmetric tensor on 7 indices."""
    global _EPS7
    if _EPS7 is None:
        eps = np.zeros((7,) * 7)
        for perm in permutations(range(7)):
            eps[perm] = perm_sign(perm)
        _EPS7 = eps
    return _EPS7


def dense_form(terms: dict, degree: int) -> np.ndarray:
    """Dense antisymmetric tensor from {sorted label tuple: coefficient}."""
    out = np.zeros((7,) * degree) if degree else np.zeros(())
    for idx, c in terms.items():
        base = tuple(i - 2 for i in idx)
        for perm in permutations(range(degree)):
            out[tuple(base[p] for p in perm)] = perm_sign(perm) * c
    return out


def oracle_hodge(terms: dict, degree: int) -> dict:
    """Hodge dual via epsilon contraction: (*a)_J = (1/k!) eps_{I J} a_I."""
    import math

    a = dense_form(terms, degree)
    eps = epsilon7()
    k = degree
    letters = "abcdefg"
    src = letters[:k]
    dst = letters[k:7]
    dual = np.einsum(f"{src + dst},{src}->{dst}", eps, a) / math.factorial(k)
    out = {}
    for idx in combinations(range(7), 7 - k):
        val = dual[idx]
        if abs(val) > 1e-14:
            out[tuple(i + 2 for i in idx)] = float(val)
    return out


def oracle_wedge_value(a_terms: dict, p: int, b_terms: dict, q: int, vectors) -> float:
    """(a ^ b)(v_1..v_{p+q}) by the full shuffle sum."""
    a = dense_form(a_terms, p)
    b = dense_form(b_terms, q)

    def ev(t, vs):
        out = t
        for v in vs:
            out = np.tensordot(out, v, axes=([0], [0]))
        return float(out)

    total = 0.0
    idxs = list(range(p + q))
    for left in combinations(idxs, p):
        right = tuple(i for i in idxs if i not in left)
        sgn = perm_sign(left + right)
        total += sgn * ev(a, [vectors[i] for i in left]) * ev(b, [vectors[i] for i in right])
    return total
