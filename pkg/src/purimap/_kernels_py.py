"""Pure-Python (numpy) classification kernels.

This is the fallback used when the compiled extension is unavailable,
and the reference the extension is tested against.  The arithmetic is
deliberately written as explicit real-valued elementary operations in a
fixed order (split real/imaginary parts, no complex division, no fused
multiply-adds), so that the compiled kernel - built with contraction
disabled - produces bit-identical trajectories.

Labels: 0 = maximally entangled fixed point, 1 = separable two-state
cycle, 2 = mixed two-state cycle, 3 = unresolved.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

LABEL_BELL = 0
LABEL_SEPARABLE = 1
LABEL_MIXED = 2
LABEL_UNRESOLVED = 3


def hermitian_eigvals4(matrix) -> np.ndarray:
    """Eigenvalues (ascending) of a 4x4 Hermitian matrix."""
    return np.linalg.eigvalsh(np.asarray(matrix, dtype=np.complex128))


# pure-state kernel --------------------------------------------------------

def _pure_init(zr, zi):
    m = zr * zr + zi * zi
    nrm = np.sqrt(1.0 + m)
    c1r = 1.0 / nrm
    z = np.zeros_like(c1r)
    return [c1r, z.copy(), z.copy(), z.copy(), z.copy(), z.copy(),
            zr / nrm, zi / nrm]


def _pure_step(s):
    c1r, c1i, c2r, c2i, c3r, c3i, c4r, c4i = s
    s1r = c1r * c1r - c1i * c1i
    s1i = 2.0 * c1r * c1i
    s2r = c2r * c2r - c2i * c2i
    s2i = 2.0 * c2r * c2i
    s3r = c3r * c3r - c3i * c3i
    s3i = 2.0 * c3r * c3i
    s4r = c4r * c4r - c4i * c4i
    s4i = 2.0 * c4r * c4i
    p = (s1r * s1r + s1i * s1i) + (s2r * s2r + s2i * s2i) \
        + (s3r * s3r + s3i * s3i) + (s4r * s4r + s4i * s4i)
    q = np.sqrt(p)
    s1r = s1r / q
    s1i = s1i / q
    s2r = s2r / q
    s2i = s2i / q
    s3r = s3r / q
    s3i = s3i / q
    s4r = s4r / q
    s4i = s4i / q
    # Hadamard on both qubits, as a butterfly
    ar = s1r + s2r
    ai = s1i + s2i
    br = s3r + s4r
    bi = s3i + s4i
    cr = s1r - s2r
    ci = s1i - s2i
    dr = s3r - s4r
    di = s3i - s4i
    return [0.5 * (ar + br), 0.5 * (ai + bi),
            0.5 * (cr + dr), 0.5 * (ci + di),
            0.5 * (ar - br), 0.5 * (ai - bi),
            0.5 * (cr - dr), 0.5 * (ci - di)]


def _pure_fidelities(s):
    c1r, c1i, c2r, c2i, c3r, c3i, c4r, c4i = s
    br = c1r + c4r
    bi = c1i + c4i
    f_bell = 0.5 * (br * br + bi * bi)
    f_00 = c1r * c1r + c1i * c1i
    qr = (c1r + c2r) + (c3r + c4r)
    qi = (c1i + c2i) + (c3i + c4i)
    f_pp = 0.25 * (qr * qr + qi * qi)
    return f_bell, f_00, f_pp


def classify_pure(zr, zi, max_iters: int, tol: float):
    """Classify family parameters for pure initial states.

    Detection: pure-state trace distance sqrt(1 - fidelity) below tol
    against the entangled fixed point or either separable cycle member,
    confirmed one full period later against the same member.
    """
    zr = np.ascontiguousarray(zr, dtype=np.float64)
    zi = np.ascontiguousarray(zi, dtype=np.float64)
    n = zr.size
    labels = np.full(n, LABEL_UNRESOLVED, dtype=np.uint8)
    steps = np.full(n, max_iters, dtype=np.int32)
    state = _pure_init(zr, zi)
    active = np.arange(n)
    thr = 1.0 - tol * tol
    for t in range(max_iters + 1):
        f_bell, f_00, f_pp = _pure_fidelities(state)
        cand_b = f_bell > thr
        cand_0 = (f_00 > thr) & ~cand_b
        cand_p = (f_pp > thr) & ~cand_b & ~cand_0
        hit = cand_b | cand_0 | cand_p
        if hit.any():
            idx = np.nonzero(hit)[0]
            sub = [comp[idx] for comp in state]
            one = _pure_step([c.copy() for c in sub])
            two = _pure_step([c.copy() for c in one])
            fb1, _, _ = _pure_fidelities(one)
            _, f02, fp2 = _pure_fidelities(two)
            ok_b = cand_b[idx] & (fb1 > thr)
            ok_0 = cand_0[idx] & (f02 > thr)
            ok_p = cand_p[idx] & (fp2 > thr)
            done = ok_b | ok_0 | ok_p
            glob = active[idx[done]]
            labels[glob] = np.where(ok_b[done], LABEL_BELL,
                                    LABEL_SEPARABLE).astype(np.uint8)
            steps[glob] = t
            keep = np.ones(active.size, dtype=bool)
            keep[idx[done]] = False
            active = active[keep]
            state = [comp[keep] for comp in state]
        if t == max_iters or active.size == 0:
            break
        state = _pure_step(state)
    return labels, steps


# mixed-state kernel -------------------------------------------------------

def _mixed_init(zr, zi, lam):
    n = zr.size
    m = zr * zr + zi * zi
    nrm = np.sqrt(1.0 + m)
    c1 = 1.0 / nrm
    c4r = zr / nrm
    c4i = zi / nrm
    rr = np.zeros((n, 4, 4))
    ri = np.zeros((n, 4, 4))
    base = (1.0 - lam) * 0.25
    rr[:, 0, 0] = lam * (c1 * c1) + base
    rr[:, 1, 1] = base
    rr[:, 2, 2] = base
    rr[:, 3, 3] = lam * (c4r * c4r + c4i * c4i) + base
    rr[:, 0, 3] = lam * (c1 * c4r)
    ri[:, 0, 3] = lam * (-(c1 * c4i))
    rr[:, 3, 0] = rr[:, 0, 3]
    ri[:, 3, 0] = -ri[:, 0, 3]
    return rr, ri


def _mixed_step(rr, ri):
    sr = rr * rr - ri * ri
    si = 2.0 * rr * ri
    t = ((sr[:, 0, 0] + sr[:, 1, 1]) + (sr[:, 2, 2] + sr[:, 3, 3]))
    t = t[:, None, None]
    sr = sr / t
    si = si / t
    out_r = _conj_hadamard(sr)
    out_i = _conj_hadamard(si)
    # exact map preserves Hermiticity; remove rounding drift
    rr = 0.5 * (out_r + np.swapaxes(out_r, 1, 2))
    ri = 0.5 * (out_i - np.swapaxes(out_i, 1, 2))
    return rr, ri


def _conj_hadamard(m):
    """(S m S)/4 with the 4x4 sign matrix of the two-qubit Hadamard."""
    a = m[:, 0, :] + m[:, 1, :]
    b = m[:, 2, :] + m[:, 3, :]
    c = m[:, 0, :] - m[:, 1, :]
    d = m[:, 2, :] - m[:, 3, :]
    t = np.stack([a + b, c + d, a - b, c - d], axis=1)
    a = t[:, :, 0] + t[:, :, 1]
    b = t[:, :, 2] + t[:, :, 3]
    c = t[:, :, 0] - t[:, :, 1]
    d = t[:, :, 2] - t[:, :, 3]
    return 0.25 * np.stack([a + b, c + d, a - b, c - d], axis=2)


def _target_bank(mixed_members):
    sq2 = np.sqrt(2.0)
    bell = np.zeros((4, 4), dtype=np.complex128)
    for (i, j) in ((0, 0), (0, 3), (3, 0), (3, 3)):
        bell[i, j] = 0.5
    s00 = np.zeros((4, 4), dtype=np.complex128)
    s00[0, 0] = 1.0
    spp = np.full((4, 4), 0.25, dtype=np.complex128)
    targets = [(LABEL_BELL, 1, bell), (LABEL_SEPARABLE, 2, s00),
               (LABEL_SEPARABLE, 2, spp)]
    if mixed_members is not None:
        for member in np.asarray(mixed_members, dtype=np.complex128):
            targets.append((LABEL_MIXED, 2, member))
    return [(lab, per, t, float(np.linalg.norm(t))) for lab, per, t in targets]


def _trace_dist_many(rr, ri, target):
    d = (rr - target.real) + 1j * (ri - target.imag)
    return 0.5 * np.sum(np.abs(np.linalg.eigvalsh(d)), axis=-1)


def classify_mixed(zr, zi, lam: float, max_iters: int, tol: float,
                   mixed_members=None):
    """Classify family parameters for isotropic-noise initial states.

    Trace-distance detection (threshold tol) against the entangled fixed
    point, the separable pure cycle, and - when supplied - the mixed
    cycle members, confirmed one full period later.  A Frobenius-norm
    pre-gate keeps the eigenvalue computation off the hot path.
    """
    zr = np.ascontiguousarray(zr, dtype=np.float64)
    zi = np.ascontiguousarray(zi, dtype=np.float64)
    n = zr.size
    labels = np.full(n, LABEL_UNRESOLVED, dtype=np.uint8)
    steps = np.full(n, max_iters, dtype=np.int32)
    rr, ri = _mixed_init(zr, zi, lam)
    active = np.arange(n)
    targets = _target_bank(mixed_members)
    gate = 2.0 * tol
    for t in range(max_iters + 1):
        fro = np.sqrt(np.sum(rr * rr + ri * ri, axis=(1, 2)))
        done_mask = np.zeros(active.size, dtype=bool)
        done_label = np.zeros(active.size, dtype=np.uint8)
        for lab, period, tgt, tgt_norm in targets:
            pre = ~done_mask & (np.abs(fro - tgt_norm) < gate)
            if not pre.any():
                continue
            pidx = np.nonzero(pre)[0]
            diff = np.sqrt(np.sum((rr[pidx] - tgt.real) ** 2
                                  + (ri[pidx] - tgt.imag) ** 2, axis=(1, 2)))
            pidx = pidx[diff < gate]
            if pidx.size == 0:
                continue
            td = _trace_dist_many(rr[pidx], ri[pidx], tgt)
            pidx = pidx[td < tol]
            if pidx.size == 0:
                continue
            crr, cri = rr[pidx].copy(), ri[pidx].copy()
            for _ in range(period):
                crr, cri = _mixed_step(crr, cri)
            td2 = _trace_dist_many(crr, cri, tgt)
            confirmed = pidx[td2 < tol]
            done_mask[confirmed] = True
            done_label[confirmed] = lab
        if done_mask.any():
            idx = np.nonzero(done_mask)[0]
            glob = active[idx]
            labels[glob] = done_label[idx]
            steps[glob] = t
            keep = ~done_mask
            active = active[keep]
            rr = rr[keep]
            ri = ri[keep]
        if t == max_iters or active.size == 0:
            break
        rr, ri = _mixed_step(rr, ri)
    return labels, steps
