"""Runnable invariant suites for every module.

Each suite returns a dict with per-check worst residuals and pass flags;
``run_suites`` aggregates them.  The suites are deterministic for a fixed
seed and are the same code paths the acceptance tests assert on.
"""

from __future__ import annotations

import numpy as np

from . import algebra, g2circle, loops, slag, unitary
from .generators import (
    random_angle_vector,
    random_close_graphical_pair,
    random_rotation,
    random_su3,
    random_transverse_pair,
    random_unit7,
    rng_from_seed,
)


def _check(name: str, worst: float, tol: float, trials: int, note: str = "") -> dict:
    return {
        "name": name,
        "trials": trials,
        "worst": float(worst),
        "tol": tol,
        "passed": bool(worst < tol),
        "note": note,
    }


def _bool_check(name: str, ok: bool, trials: int, note: str = "") -> dict:
    return {
        "name": name,
        "trials": trials,
        "worst": 0.0 if ok else 1.0,
        "tol": 1.0,
        "passed": bool(ok),
        "note": note,
    }


def _suite(name: str, checks: list[dict]) -> dict:
    return {"suite": name, "passed": all(c["passed"] for c in checks), "checks": checks}


# -- algebra-core ---------------------------------------------------------------


def suite_algebra_core(trials: int = 10000, seed: int = 0) -> dict:
    rng = rng_from_seed(seed)
    checks = []
    t_cross = algebra.structure_tensor()          # table route
    p_dense = algebra.phi0().dense()              # frozen Eq-term route

    x = rng.normal(size=(trials, 7))
    y = rng.normal(size=(trials, 7))
    z = rng.normal(size=(trials, 7))
    phi_vals = np.einsum("ijk,ni,nj,nk->n", p_dense, x, y, z)
    cross_xy = np.einsum("ijk,ni,nj->nk", t_cross, x, y)
    scale = np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1) * np.linalg.norm(z, axis=1)
    checks.append(
        _check(
            "phi0(x,y,z) = <x cross y, z>",
            np.max(np.abs(phi_vals - np.einsum("nk,nk->n", cross_xy, z)) / scale),
            1e-10,
            trials,
        )
    )

    xu = x / np.linalg.norm(x, axis=1, keepdims=True)
    yp = y - np.einsum("ni,ni->n", xu, y)[:, None] * xu
    xxy = np.einsum("ijk,ni,nj->nk", t_cross, xu, np.einsum("ijk,ni,nj->nk", t_cross, xu, yp))
    checks.append(
        _check(
            "x cross (x cross y) = -y for unit x, y perp x",
            np.max(np.linalg.norm(xxy + yp, axis=1) / np.maximum(np.linalg.norm(yp, axis=1), 1e-300)),
            1e-10,
            trials,
        )
    )
    phi_xy = np.einsum(
        "ijk,ni,nj,nk->n", p_dense, xu, np.einsum("ijk,ni,nj->nk", t_cross, xu, yp), z
    )
    checks.append(
        _check(
            "phi0(x, x cross y, z) = -<y, z>",
            np.max(np.abs(phi_xy + np.einsum("ni,ni->n", yp, z))
                   / np.maximum(np.linalg.norm(yp, axis=1) * np.linalg.norm(z, axis=1), 1e-300)),
            1e-10,
            trials,
        )
    )

    n_oct = min(trials, 2000)
    a = rng.normal(size=(n_oct, 8))
    b = rng.normal(size=(n_oct, 8))
    worst = 0.0
    for i in range(n_oct):
        prod = algebra.oct_mul(algebra.Octonion(a[i]), algebra.Octonion(b[i]))
        worst = max(
            worst,
            abs(prod.norm() - np.linalg.norm(a[i]) * np.linalg.norm(b[i]))
            / (np.linalg.norm(a[i]) * np.linalg.norm(b[i])),
        )
    checks.append(_check("|xy| = |x| |y|", worst, 1e-10, n_oct))

    n_u = min(trials, 200)
    sigma6 = 1.0
    for _ in range(n_u):
        u = random_unit7(rng)
        sv = np.linalg.svd(np.einsum("ijk,i->jk", t_cross, u), compute_uv=False)
        sigma6 = min(sigma6, sv[5])
    checks.append(
        _bool_check("phi0(u,.,.) nondegenerate on u-perp", sigma6 > 0.9, n_u,
                    note=f"min sigma_6 = {sigma6:.6f}")
    )
    return _suite("algebra-core", checks)


# -- unitary-linalg -------------------------------------------------------------


def _random_symmetric_unitary(rng, repeated: bool = False) -> np.ndarray:
    q = random_rotation(rng)
    if repeated:
        t = rng.uniform(0.1, np.pi - 0.1)
        angles = np.array([t, t, rng.uniform(0.1, np.pi - 0.1)])
    else:
        angles = rng.uniform(0.05, 2 * np.pi - 0.05, size=3)
    return q @ np.diag(np.exp(1j * angles)) @ q.T


def suite_unitary_linalg(trials: int = 1000, seed: int = 0) -> dict:
    rng = rng_from_seed(seed)
    checks = []
    worst = 0.0
    for i in range(trials):
        s = _random_symmetric_unitary(rng, repeated=(i % 4 == 0))
        q, d = unitary.symmetric_unitary_diag(s)
        worst = max(worst, np.linalg.norm(s - q @ np.diag(d) @ q.T))
        worst = max(worst, np.max(np.abs(np.abs(d) - 1.0)))
    checks.append(_check("symmetric unitary diagonalization round trip", worst, 1e-9, trials))

    n_loops = min(trials, 50)
    ok = True
    for i in range(n_loops):
        rots = _random_rotation_loop(rng, twists=i % 2, n=32)
        parity = unitary.quaternion_lift(rots).closed_parity
        refined = _insert_midpoints(rots)
        ok &= unitary.quaternion_lift(refined).closed_parity == parity
        g = random_rotation(rng)
        conj = [g @ r @ g.T for r in rots]
        ok &= unitary.quaternion_lift(conj).closed_parity == parity
        ok &= parity == (1 if i % 2 == 0 else -1)
    checks.append(_bool_check("lift parity: refinement and conjugation invariant", ok, n_loops))
    return _suite("unitary-linalg", checks)


def _random_rotation_loop(rng, twists: int, n: int = 32) -> list[np.ndarray]:
    axis1 = rng.normal(size=3)
    axis1 /= np.linalg.norm(axis1)
    axis2 = rng.normal(size=3)
    axis2 /= np.linalg.norm(axis2)
    amp = rng.uniform(0.2, 0.8)
    rots = []
    for i in range(n):
        t = i / n
        r = unitary.axis_angle_rotation(axis1, amp * np.sin(2 * np.pi * t))
        r = r @ unitary.axis_angle_rotation(axis2, 2 * np.pi * twists * t)
        rots.append(r)
    return rots


def _insert_midpoints(rots: list[np.ndarray]) -> list[np.ndarray]:
    out = []
    n = len(rots)
    for i in range(n):
        r, s = rots[i], rots[(i + 1) % n]
        out.append(r)
        q = unitary.quat_from_rotation(r.T @ s)
        half = np.concatenate([
            [np.sqrt((1.0 + q[0]) / 2.0)],
            q[1:] / np.sqrt(2.0 * (1.0 + q[0])),
        ])
        out.append(r @ unitary.rotation_from_quat(half / np.linalg.norm(half)))
    return out


# -- slag-planes ----------------------------------------------------------------


def suite_slag_planes(trials: int = 1000, seed: int = 0) -> dict:
    rng = rng_from_seed(seed)
    checks = []
    v0 = slag.SLagPlane.standard()

    worst_theta = worst_rec = worst_swap = 0.0
    for _ in range(trials):
        v, vp, av = random_transverse_pair(rng, m=int(rng.integers(1, 3)))
        nf = slag.normal_form(v, vp)
        worst_theta = max(worst_theta, np.max(np.abs(nf.theta.theta - av.theta)))
        worst_rec = max(worst_rec, v.transform(nf.B).distance(v0))
        worst_rec = max(
            worst_rec, vp.transform(nf.B).distance(slag.plane_from_angles(nf.theta.theta))
        )
        swapped = slag.characteristic_angles(vp, v)
        expect = slag.angle_involution(slag.characteristic_angles(v, vp))
        worst_swap = max(worst_swap, np.max(np.abs(swapped.theta - expect.theta)))
        worst_swap = max(worst_swap, abs(swapped.trace_class - expect.trace_class))
    checks.append(_check("normal form recovers theta", worst_theta, 1e-8, trials))
    checks.append(_check("normal form reconstructs the pair", worst_rec, 1e-8, trials))
    checks.append(_check("swap law theta -> theta'", worst_swap, 1e-8, trials))

    n_deg = max(trials // 10, 20)
    worst_deg = 0.0
    for stratum in ("eq12", "eq23"):
        for _ in range(n_deg):
            v, vp, av = random_transverse_pair(rng, stratum=stratum)
            nf = slag.normal_form(v, vp)
            worst_deg = max(worst_deg, np.max(np.abs(nf.theta.theta - av.theta)))
            worst_deg = max(worst_deg, v.transform(nf.B).distance(v0))
            worst_deg = max(
                worst_deg, vp.transform(nf.B).distance(slag.plane_from_angles(nf.theta.theta))
            )
    checks.append(_check("degenerate strata round trip", worst_deg, 1e-7, 2 * n_deg))

    n_stab = min(max(trials // 5, 50), 200)
    expected = {"generic": 0, "eq12": 1, "eq23": 1, "all_equal": 3}
    agree = True
    for stratum, dim in expected.items():
        for _ in range(n_stab):
            v, vp, av = random_transverse_pair(rng, stratum=stratum)
            tag = slag.classify_stabilizer(av, gap_tol=1e-6)
            agree &= tag.expected_dimension == dim
            agree &= slag.stabilizer_dimension_numeric(v, vp) == dim
    checks.append(
        _bool_check("stabilizer classification matches numeric dimension", agree, 4 * n_stab)
    )

    worst_graph = 0.0
    n_graph = min(trials, 300)
    for _ in range(n_graph):
        b = _random_trace_det_form(rng)
        vpn = slag.graph_over(v0, b)
        worst_graph = max(worst_graph, np.max(np.abs(slag.graph_bilinear_form(v0, vpn) - b)))
    checks.append(_check("graph form round trip", worst_graph, 1e-9, n_graph))

    worst_trdet = 0.0
    sig_ok = True
    for _ in range(trials):
        v, vp, _ = random_transverse_pair(rng, region="any_graphical")
        b = slag.graph_bilinear_form(v, vp)
        worst_trdet = max(worst_trdet, abs(np.trace(b) - np.linalg.det(b)))
        worst_trdet = max(worst_trdet, np.linalg.norm(b - b.T))
    for _ in range(trials):
        v, vp, _ = random_close_graphical_pair(rng)
        w = np.linalg.eigvalsh(slag.graph_bilinear_form(v, vp))
        sig_ok &= (w[0] < 0) and (w[1] > 0) and (w[2] > 0)
    checks.append(_check("tr B = det B and symmetry on graphical pairs", worst_trdet, 1e-9, trials))
    checks.append(_bool_check("close pairs have signature (-,+,+)", sig_ok, trials))

    checks.append(_alpha_witness_check(rng, n_theta=20, n_phi=101))
    return _suite("slag-planes", checks)


def _random_trace_det_form(rng) -> np.ndarray:
    from .loops import _project_trace_det

    a = rng.normal(size=(3, 3))
    return _project_trace_det((a + a.T) / 2.0)


def _alpha_witness_check(rng, n_theta: int, n_phi: int) -> dict:
    v0 = slag.SLagPlane.standard()
    phis = np.linspace(-np.pi / 2, np.pi / 2, n_phi)
    det_worst = 0.0
    ok = True
    first_two = (np.diag([1.0, -1.0, -1.0]), np.diag([-1.0, 1.0, -1.0]))
    got = (slag.alpha_curve(np.pi / 2), slag.alpha_curve(-np.pi / 2))
    ok &= bool(
        np.max(np.abs(got[0] - first_two[0])) < 1e-15
        and np.max(np.abs(got[1] - first_two[1])) < 1e-15
    )
    for _ in range(n_theta):
        av = random_angle_vector(rng, 1, margin=0.1)
        vt = slag.plane_from_angles(av.theta)
        for phi in phis:
            a = slag.alpha_curve(phi)
            det_worst = max(det_worst, abs(np.linalg.det(a) - 1.0))
            fixed = (
                v0.transform(a).distance(v0) < 1e-10
                and vt.transform(a).distance(vt) < 1e-10
            )
            at_end = min(abs(phi - np.pi / 2), abs(phi + np.pi / 2)) < 1e-12
            ok &= fixed == at_end
        av_deg = random_angle_vector(rng, 1, stratum="eq12", margin=0.1)
        vdeg = slag.plane_from_angles(av_deg.theta)
        for phi in phis[:: max(n_phi // 10, 1)]:
            a = slag.alpha_curve(phi)
            ok &= vdeg.transform(a).distance(vdeg) < 1e-10
    return _bool_check(
        "alpha curve endpoints, det = 1, fixed-point criterion",
        ok and det_worst < 1e-12,
        n_theta * n_phi,
        note=f"max |det - 1| = {det_worst:.2e}",
    )


# -- g2-circle ------------------------------------------------------------------


def suite_g2_circle(trials: int = 100, seed: int = 0) -> dict:
    rng = rng_from_seed(seed)
    checks = []
    phi = algebra.phi0()

    worst_j = worst_h = worst_omega = worst_frame = 0.0
    worst_split = worst_dual = 0.0
    min_volcoef = np.inf
    for _ in range(trials):
        u = random_unit7(rng)
        ns = g2circle.normal_structure(u)
        proj = np.eye(7) - np.outer(u, u)
        worst_j = max(worst_j, np.linalg.norm(ns.Jmat @ ns.Jmat + proj))

        v = proj @ rng.normal(size=7)
        w = proj @ rng.normal(size=7)
        worst_omega = max(worst_omega, abs(ns.omega.evaluate(v, w) - (ns.Jmat @ v) @ w))
        hvw = complex(v @ w, -(ns.Jmat @ v) @ w)
        hwv = complex(w @ v, -(ns.Jmat @ w) @ v)
        worst_h = max(worst_h, abs(hvw - np.conj(hwv)))

        cv, cw = ns.coords(v), ns.coords(w)
        worst_frame = max(worst_frame, abs(ns.omega.evaluate(v, w) - np.imag(np.vdot(cv, cw))))
        x = proj @ rng.normal(size=7)
        worst_frame = max(
            worst_frame,
            abs(
                ns.volume_value(v, w, x)
                - np.linalg.det(np.stack([cv, cw, ns.coords(x)], axis=1))
            ),
        )

        split = phi - algebra.wedge(algebra.covector(u), ns.omega) - ns.OmegaPrime
        worst_split = max(worst_split, split.norm())
        dual = algebra.hodge_star(ns.OmegaPrime) - algebra.wedge(
            algebra.covector(u), ns.OmegaDoublePrime
        )
        worst_dual = max(worst_dual, dual.norm())

        vol6 = algebra.contract(algebra.volume_form(), u)
        prod = algebra.wedge(ns.OmegaPrime, ns.OmegaDoublePrime)
        coef = sum(
            prod.coefficient(idx) * c for idx, c in vol6.terms.items()
        ) / max(vol6.norm() ** 2, 1e-300)
        min_volcoef = min(min_volcoef, abs(coef))

    checks.append(_check("J^2 = -Id on u-perp", worst_j, 1e-10, trials))
    checks.append(_check("h(v,w) = <v,w> - i<Jv,w> is Hermitian", worst_h, 1e-10, trials))
    checks.append(_check("omega(v,w) = <Jv,w>", worst_omega, 1e-9, trials))
    checks.append(_check("SU(3) frame: omega and Omega standard in coords", worst_frame, 1e-9, trials))
    checks.append(_check("splitting phi0 = u* ^ omega + Omega'", worst_split, 1e-12, trials))
    checks.append(_check("duality *Omega' = u* ^ Omega''", worst_dual, 1e-10, trials))
    checks.append(
        _bool_check(
            "Omega' ^ Omega'' nonvanishing",
            min_volcoef > 0.1,
            trials,
            note=f"min |coef| = {min_volcoef:.3f}",
        )
    )

    checks.append(_remark_frame_check())
    checks.append(_coassoc_roundtrip_check(rng, min(trials, 100)))
    checks.append(_pairing_check(rng, min(trials, 100)))
    checks.append(_fd_check(rng))
    return _suite("g2-circle", checks)


def _remark_frame_check() -> dict:
    """Pullback consistency for u = e5 and the frame z_k = e_{k+5} + i e_{k+1}."""
    u = np.zeros(7)
    u[3] = 1.0  # e5
    ns = g2circle.normal_structure(u)
    fr = np.zeros((7, 3))
    fi = np.zeros((7, 3))
    for k in range(3):
        fr[k + 4, k] = 1.0  # e6, e7, e8
        fi[k, k] = 1.0      # e2, e3, e4

    def coords(v):
        return fr.T @ v + 1j * (fi.T @ v)

    rng = rng_from_seed(12345)
    proj = np.eye(7) - np.outer(u, u)
    worst = 0.0
    for _ in range(200):
        v, w, x = (proj @ rng.normal(size=7) for _ in range(3))
        cv, cw, cx = coords(v), coords(w), coords(x)
        omega0 = np.imag(np.vdot(cv, cw))
        worst = max(worst, abs(ns.omega.evaluate(v, w) - omega0))
        det = np.linalg.det(np.stack([cv, cw, cx], axis=1))
        worst = max(worst, abs(np.imag(det) - (-ns.OmegaPrime.evaluate(v, w, x))))
        worst = max(worst, abs(np.real(det) - ns.OmegaDoublePrime.evaluate(v, w, x)))
    return _check(
        "Remark frame: omega = omega0, Omega' = -Im Omega0, Omega'' = Re Omega0",
        worst,
        1e-10,
        200,
    )


def _coassoc_roundtrip_check(rng, trials: int) -> dict:
    ok = True
    worst = 0.0
    for _ in range(trials):
        u = random_unit7(rng)
        ns = g2circle.normal_structure(u)
        a = random_su3(rng)
        vplus, vminus, av = random_transverse_pair(rng)
        pplus = g2circle.coassoc_from_slag(u, vplus, ns=ns)
        pminus = g2circle.coassoc_from_slag(u, vminus, ns=ns)
        ok &= g2circle.is_coassociative(pplus.basis, tol=1e-10)
        ok &= g2circle.is_coassociative(pminus.basis, tol=1e-10)
        rplus, rminus = g2circle.normal_slag_pair(u, pplus, pminus, ns=ns)
        worst = max(worst, rplus.distance(vplus), rminus.distance(vminus))
        ok &= slag.is_special_lagrangian(rplus.frame, 1e-10)
        ok &= slag.is_special_lagrangian(rminus.frame, 1e-10)
        # a common SU(3) frame change of u-perp preserves the angles
        av2 = slag.characteristic_angles(rplus.transform(a), rminus.transform(a))
        worst = max(worst, np.max(np.abs(av2.theta - av.theta)))
    return _bool_check(
        "coassociative round trips and angle invariance",
        ok and worst < 1e-8,
        trials,
        note=f"worst residual = {worst:.2e}",
    )


def _pairing_check(rng, trials: int) -> dict:
    ok = True
    worst = 0.0
    for i in range(trials):
        u = random_unit7(rng)
        ns = g2circle.normal_structure(u)
        v, vp, av = random_transverse_pair(rng, m=1 + i % 2)
        m = g2circle.pairing_iso(ns, v, vp)
        ok &= np.linalg.svd(m, compute_uv=False)[-1] > 1e-6
        # documented orientation-reversal sign law
        sign_law = (-1) ** (av.trace_class + 1) * np.sign(
            np.linalg.det(v.frame).real * np.linalg.det(vp.frame).real
        )
        ok &= np.sign(np.linalg.det(m)) == sign_law
        # normal form value: diag(-sin theta) in the standard frames
        if i % 5 == 0:
            m0 = g2circle.pairing_iso(
                ns,
                _plane_in_ns(ns, np.zeros(3)),
                _plane_in_ns(ns, av.theta),
            )
            worst = max(worst, np.max(np.abs(m0 - np.diag(-np.sin(av.theta)))))
        # naturality under a common rotation combined with O(3) reframings
        a = random_su3(rng)
        o1, o2 = random_rotation(rng), random_rotation(rng)
        v2 = slag.SLagPlane(a @ v.frame @ o1)
        vp2 = slag.SLagPlane(a @ vp.frame @ o2)
        m2 = g2circle.pairing_iso(ns, v2, vp2)
        worst = max(worst, np.max(np.abs(m2 - o2.T @ m @ o1)))
    return _bool_check(
        "pairing iso: invertible, sign law, normal form, naturality",
        ok and worst < 1e-8,
        trials,
        note=f"worst residual = {worst:.2e}",
    )


def _plane_in_ns(ns: g2circle.NormalStructure, theta: np.ndarray) -> slag.SLagPlane:
    return slag.plane_from_angles(np.asarray(theta, dtype=float))


def _fd_check(rng) -> dict:
    theta = np.array([np.pi / 12, np.pi / 6, 3 * np.pi / 4])
    b_lin = np.diag(np.tan(theta))
    sample = g2circle.sample_selfdual_field(g2circle.linear_graph_field(b_lin), h=0.05)
    b, diag = g2circle.selfdual_graph_bform(sample)
    ok = np.max(np.abs(b - b_lin)) < 1e-9
    ok &= diag["symmetry_residual"] < 1e-9 and diag["trace_residual"] < 1e-9

    bad = g2circle.sample_selfdual_field(lambda x: np.array([x[2], 0.0, 0.0]), h=0.05)
    _, diag_bad = g2circle.selfdual_graph_bform(bad)
    ok &= diag_bad["symmetry_residual"] > 0.5

    c = rng.normal(size=(3, 3))
    orders = []
    for _ in range(3):
        h1, h2 = 0.08, 0.04
        res = []
        for h in (h1, h2):
            s = g2circle.sample_selfdual_field(
                g2circle.cubic_perturbation_field(b_lin, c, eps=0.1), h=h
            )
            _, d = g2circle.selfdual_graph_bform(s)
            res.append(d["symmetry_residual"] + d["trace_residual"])
        orders.append(np.log2(res[0] / res[1]))
        c = rng.normal(size=(3, 3))
    ok &= min(orders) >= 1.9
    return _bool_check(
        "finite differences: linear exact, non-closed flagged, order >= 1.9",
        bool(ok),
        5,
        note=f"orders = {[f'{o:.2f}' for o in orders]}",
    )


# -- loops-invariants ------------------------------------------------------------


def suite_loops_invariants(trials: int = 100, seed: int = 0) -> dict:
    rng = rng_from_seed(seed)
    checks = []

    lam = loops.model_lambda(0.5)
    ok = abs(lam + 4.0 / 3.0) < 1e-12
    trivial = loops.generate_model_loop("trivial", 64, 0.5)
    moebius = loops.generate_model_loop("moebius", 64, 0.5)
    b0 = slag.graph_bilinear_form(*trivial.samples[0])
    ok &= abs(np.trace(b0) + 1.0 / 3.0) < 1e-12
    ok &= abs(np.linalg.det(b0) + 1.0 / 3.0) < 1e-12
    ok &= loops.eta_invariant(trivial) == 1
    ok &= loops.eta_invariant(moebius) == -1
    checks.append(_bool_check("eta realizes both classes on the models", ok, 2))

    ok = True
    for model, expect in (("trivial", 1), ("moebius", -1)):
        loop = loops.generate_model_loop(model, 64, 0.5)
        ok &= loops.eta_invariant(loops.refine_pair_loop(loop)) == expect
        swapped = loops.PairLoop(
            samples=tuple((vp, v) for v, vp in loop.samples), delta=loop.delta
        )
        ok &= loops.eta_invariant(swapped) == expect
        a = random_su3(rng)
        rotated = loops.PairLoop(
            samples=tuple((v.transform(a), vp.transform(a)) for v, vp in loop.samples),
            delta=loop.delta,
        )
        ok &= loops.eta_invariant(rotated) == expect
    checks.append(_bool_check("eta: refinement, reorder, frame invariance", ok, 6))

    n_pert = trials
    ok = True
    for model, expect in (("trivial", 1), ("moebius", -1)):
        loop = loops.generate_model_loop(model, 64, 0.5)
        for s in range(n_pert):
            ok &= loops.eta_invariant(loops.perturb_loop(loop, seed=s, epsilon=0.05)) == expect
    checks.append(_bool_check("eta: homotopy invariance under perturbation", ok, 2 * n_pert))

    from .generators import random_framing_loop

    n_mu = min(trials, 50)
    ok = True
    for s in range(n_mu):
        rng_s = rng_from_seed(1000 + s)
        base = random_framing_loop(rng_s, twists=0, n_samples=48)
        rng_s = rng_from_seed(1000 + s)
        twisted = random_framing_loop(rng_s, twists=1, n_samples=48)
        rng_s = rng_from_seed(1000 + s)
        double = random_framing_loop(rng_s, twists=2, n_samples=48)
        iso = [loops.ORIENTATION_REFLECTION] * 48
        p0 = loops.mu_parity(base, base, iso)
        p1 = loops.mu_parity(twisted, base, iso)
        p2 = loops.mu_parity(double, base, iso)
        ok &= (p0, p1, p2) == (1, -1, 1)
        ok &= loops.mu_parity(
            loops.refine_framing_loop(twisted), loops.refine_framing_loop(base), iso * 2
        ) == -1
        roll = int(rng.integers(1, 48))
        rolled_plus = loops.FramingLoop(frames=twisted.frames[roll:] + twisted.frames[:roll])
        rolled_minus = loops.FramingLoop(frames=base.frames[roll:] + base.frames[:roll])
        ok &= loops.mu_parity(rolled_plus, rolled_minus, iso) == -1
    checks.append(_bool_check("mu: twist parity, refinement, basepoint invariance", ok, n_mu))

    ok = True
    cases = [
        ((1, (1,)), "X+ # X- # (S2xS2)", None),
        (
            (2, (1, -1)),
            "X+ # X- # (S2xS2) # (CP2#CP2bar) # (S1xS3)",
            "X+ # X- # 2(CP2#CP2bar) # (S1xS3)",
        ),
        (
            (3, (-1, -1, -1)),
            "X+ # X- # 3(CP2#CP2bar) # 2(S1xS3)",
            "X+ # X- # 3(CP2#CP2bar) # 2(S1xS3)",
        ),
    ]
    for (k, mu), canon, wall in cases:
        got = loops.connected_sum_descriptor(loops.ConnectedSumDescriptor(k, mu))
        ok &= got == (canon, wall)
    for _ in range(200):
        k = int(rng.integers(1, 7))
        mu = tuple(int(m) for m in rng.choice([1, -1], size=k))
        canon, wall = loops.connected_sum_descriptor(loops.ConnectedSumDescriptor(k, mu))
        ok &= (wall is not None) == (-1 in mu)
        perm = tuple(mu[i] for i in rng.permutation(k))
        ok &= loops.connected_sum_descriptor(loops.ConnectedSumDescriptor(k, perm)) == (canon, wall)
    checks.append(_bool_check("connected sum descriptor strings and wall law", ok, 203))
    return _suite("loops-invariants", checks)


SUITES = {
    "algebra-core": suite_algebra_core,
    "unitary-linalg": suite_unitary_linalg,
    "slag-planes": suite_slag_planes,
    "g2-circle": suite_g2_circle,
    "loops-invariants": suite_loops_invariants,
}

DEFAULT_TRIALS = {
    "algebra-core": 10000,
    "unitary-linalg": 1000,
    "slag-planes": 1000,
    "g2-circle": 100,
    "loops-invariants": 100,
}


def run_suites(which: str = "all", trials: int | None = None, seed: int = 0) -> dict:
    names = list(SUITES) if which == "all" else [which]
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    results = [
        SUITES[name](trials=trials or DEFAULT_TRIALS[name], seed=seed) for name in names
    ]
    return {
        "suites": results,
        "passed": all(r["passed"] for r in results),
        "seed": seed,
        "trials": trials,
    }
