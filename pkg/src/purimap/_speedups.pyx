# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled classification kernels.

Per-pixel scalar loops over the same arithmetic as ``_kernels_py`` (same
operations in the same order; the build disables floating-point
contraction), so both backends produce identical label/step grids.  The
loops run without the GIL, so row bands can be classified on worker
threads in parallel.
"""

from libc.math cimport fabs, sqrt

import numpy as np

BACKEND_NAME = "compiled"

LABEL_BELL = 0
LABEL_SEPARABLE = 1
LABEL_MIXED = 2
LABEL_UNRESOLVED = 3

cdef int _BELL = 0
cdef int _SEP = 1
cdef int _MIX = 2
cdef int _UNRES = 3


# ---------------------------------------------------------------- pure ----

cdef inline void _pure_step_c(double* c) nogil:
    cdef double s[8]
    cdef double p, q
    cdef double ar, ai, br, bi, cr, ci, dr, di
    s[0] = c[0] * c[0] - c[1] * c[1]
    s[1] = 2.0 * c[0] * c[1]
    s[2] = c[2] * c[2] - c[3] * c[3]
    s[3] = 2.0 * c[2] * c[3]
    s[4] = c[4] * c[4] - c[5] * c[5]
    s[5] = 2.0 * c[4] * c[5]
    s[6] = c[6] * c[6] - c[7] * c[7]
    s[7] = 2.0 * c[6] * c[7]
    p = (s[0] * s[0] + s[1] * s[1]) + (s[2] * s[2] + s[3] * s[3]) \
        + (s[4] * s[4] + s[5] * s[5]) + (s[6] * s[6] + s[7] * s[7])
    q = sqrt(p)
    s[0] = s[0] / q
    s[1] = s[1] / q
    s[2] = s[2] / q
    s[3] = s[3] / q
    s[4] = s[4] / q
    s[5] = s[5] / q
    s[6] = s[6] / q
    s[7] = s[7] / q
    ar = s[0] + s[2]
    ai = s[1] + s[3]
    br = s[4] + s[6]
    bi = s[5] + s[7]
    cr = s[0] - s[2]
    ci = s[1] - s[3]
    dr = s[4] - s[6]
    di = s[5] - s[7]
    c[0] = 0.5 * (ar + br)
    c[1] = 0.5 * (ai + bi)
    c[2] = 0.5 * (cr + dr)
    c[3] = 0.5 * (ci + di)
    c[4] = 0.5 * (ar - br)
    c[5] = 0.5 * (ai - bi)
    c[6] = 0.5 * (cr - dr)
    c[7] = 0.5 * (ci - di)


cdef inline double _fid_bell(double* c) nogil:
    cdef double br = c[0] + c[6]
    cdef double bi = c[1] + c[7]
    return 0.5 * (br * br + bi * bi)


cdef inline double _fid_00(double* c) nogil:
    return c[0] * c[0] + c[1] * c[1]


cdef inline double _fid_pp(double* c) nogil:
    cdef double qr = (c[0] + c[2]) + (c[4] + c[6])
    cdef double qi = (c[1] + c[3]) + (c[5] + c[7])
    return 0.25 * (qr * qr + qi * qi)


cdef inline int _classify_pure_one(double zr, double zi, int max_iters,
                                   double thr, int* steps_out) nogil:
    cdef double c[8]
    cdef double l[8]
    cdef double m, nrm
    cdef int t, k
    m = zr * zr + zi * zi
    nrm = sqrt(1.0 + m)
    c[0] = 1.0 / nrm
    c[1] = 0.0
    c[2] = 0.0
    c[3] = 0.0
    c[4] = 0.0
    c[5] = 0.0
    c[6] = zr / nrm
    c[7] = zi / nrm
    for t in range(max_iters + 1):
        if _fid_bell(c) > thr:
            for k in range(8):
                l[k] = c[k]
            _pure_step_c(l)
            if _fid_bell(l) > thr:
                steps_out[0] = t
                return _BELL
        elif _fid_00(c) > thr:
            for k in range(8):
                l[k] = c[k]
            _pure_step_c(l)
            _pure_step_c(l)
            if _fid_00(l) > thr:
                steps_out[0] = t
                return _SEP
        elif _fid_pp(c) > thr:
            for k in range(8):
                l[k] = c[k]
            _pure_step_c(l)
            _pure_step_c(l)
            if _fid_pp(l) > thr:
                steps_out[0] = t
                return _SEP
        if t == max_iters:
            break
        _pure_step_c(c)
    steps_out[0] = max_iters
    return _UNRES


def classify_pure(zr, zi, int max_iters, double tol):
    """Classify family parameters for pure initial states."""
    cdef double[::1] xr = np.ascontiguousarray(zr, dtype=np.float64).ravel()
    cdef double[::1] xi = np.ascontiguousarray(zi, dtype=np.float64).ravel()
    cdef Py_ssize_t n = xr.shape[0]
    labels_arr = np.empty(n, dtype=np.uint8)
    steps_arr = np.empty(n, dtype=np.int32)
    cdef unsigned char[::1] labels = labels_arr
    cdef int[::1] steps = steps_arr
    cdef double thr = 1.0 - tol * tol
    cdef Py_ssize_t k
    cdef int st
    with nogil:
        for k in range(n):
            labels[k] = <unsigned char> _classify_pure_one(
                xr[k], xi[k], max_iters, thr, &st)
            steps[k] = st
    return labels_arr, steps_arr


# --------------------------------------------------------------- mixed ----

cdef inline void _mixed_step_c(double* rr, double* ri) nogil:
    # entry-wise square, renormalize, conjugate by the two-qubit Hadamard
    cdef double sr[16]
    cdef double si[16]
    cdef double tr[16]
    cdef double ti[16]
    cdef double t, a, b, cc, d, v
    cdef int i, j
    for i in range(16):
        sr[i] = rr[i] * rr[i] - ri[i] * ri[i]
        si[i] = 2.0 * rr[i] * ri[i]
    t = ((sr[0] + sr[5]) + (sr[10] + sr[15]))
    for i in range(16):
        sr[i] = sr[i] / t
        si[i] = si[i] / t
    # rows: t = S s
    for j in range(4):
        a = sr[j] + sr[4 + j]
        b = sr[8 + j] + sr[12 + j]
        cc = sr[j] - sr[4 + j]
        d = sr[8 + j] - sr[12 + j]
        tr[j] = a + b
        tr[4 + j] = cc + d
        tr[8 + j] = a - b
        tr[12 + j] = cc - d
        a = si[j] + si[4 + j]
        b = si[8 + j] + si[12 + j]
        cc = si[j] - si[4 + j]
        d = si[8 + j] - si[12 + j]
        ti[j] = a + b
        ti[4 + j] = cc + d
        ti[8 + j] = a - b
        ti[12 + j] = cc - d
    # columns: out = (t S) / 4
    for i in range(4):
        a = tr[4 * i] + tr[4 * i + 1]
        b = tr[4 * i + 2] + tr[4 * i + 3]
        cc = tr[4 * i] - tr[4 * i + 1]
        d = tr[4 * i + 2] - tr[4 * i + 3]
        sr[4 * i] = 0.25 * (a + b)
        sr[4 * i + 1] = 0.25 * (cc + d)
        sr[4 * i + 2] = 0.25 * (a - b)
        sr[4 * i + 3] = 0.25 * (cc - d)
        a = ti[4 * i] + ti[4 * i + 1]
        b = ti[4 * i + 2] + ti[4 * i + 3]
        cc = ti[4 * i] - ti[4 * i + 1]
        d = ti[4 * i + 2] - ti[4 * i + 3]
        si[4 * i] = 0.25 * (a + b)
        si[4 * i + 1] = 0.25 * (cc + d)
        si[4 * i + 2] = 0.25 * (a - b)
        si[4 * i + 3] = 0.25 * (cc - d)
    # Hermitize (the exact map preserves Hermiticity; drop rounding drift)
    for i in range(4):
        for j in range(4):
            rr[4 * i + j] = 0.5 * (sr[4 * i + j] + sr[4 * j + i])
            ri[4 * i + j] = 0.5 * (si[4 * i + j] - si[4 * j + i])


cdef inline void _herm4_eigvals(double* ar, double* ai, double* out) nogil:
    # cyclic complex Jacobi; values in out[0..3], unordered
    cdef double wr[16]
    cdef double wi[16]
    cdef double off, apqr, apqi, mag2, mag, pr, pi
    cdef double app, aqq, tau, tt, cth, sth, vr, vi, xr, xi, yr, yi
    cdef int i, p, q, k, sweep
    for i in range(16):
        wr[i] = ar[i]
        wi[i] = ai[i]
    for sweep in range(40):
        off = 0.0
        for p in range(4):
            for q in range(p + 1, 4):
                off += wr[4 * p + q] * wr[4 * p + q] + wi[4 * p + q] * wi[4 * p + q]
        if off <= 1e-28:
            break
        for p in range(4):
            for q in range(p + 1, 4):
                apqr = wr[4 * p + q]
                apqi = wi[4 * p + q]
                mag2 = apqr * apqr + apqi * apqi
                if mag2 <= 1e-32:
                    continue
                mag = sqrt(mag2)
                pr = apqr / mag          # e^{i beta}
                pi = apqi / mag
                app = wr[4 * p + p]
                aqq = wr[4 * q + q]
                # small-magnitude root of t^2 - 2*tau*t - 1 = 0
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0.0:
                    tt = -1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    tt = 1.0 / (-tau + sqrt(1.0 + tau * tau))
                cth = 1.0 / sqrt(1.0 + tt * tt)
                sth = tt * cth
                # column rotation: col_p <- c*col_p + s*conj(phase)*col_q
                #                  col_q <- -s*phase*col_p + c*col_q
                for k in range(4):
                    xr = wr[4 * k + p]
                    xi = wi[4 * k + p]
                    yr = wr[4 * k + q]
                    yi = wi[4 * k + q]
                    vr = yr * pr + yi * pi     # conj(phase) * y
                    vi = yi * pr - yr * pi
                    wr[4 * k + p] = cth * xr + sth * vr
                    wi[4 * k + p] = cth * xi + sth * vi
                    vr = xr * pr - xi * pi     # phase * x
                    vi = xi * pr + xr * pi
                    wr[4 * k + q] = cth * yr - sth * vr
                    wi[4 * k + q] = cth * yi - sth * vi
                # row rotation: row_p <- c*row_p + s*phase*row_q
                #               row_q <- -s*conj(phase)*row_p + c*row_q
                for k in range(4):
                    xr = wr[4 * p + k]
                    xi = wi[4 * p + k]
                    yr = wr[4 * q + k]
                    yi = wi[4 * q + k]
                    vr = yr * pr - yi * pi     # phase * y
                    vi = yi * pr + yr * pi
                    wr[4 * p + k] = cth * xr + sth * vr
                    wi[4 * p + k] = cth * xi + sth * vi
                    vr = xr * pr + xi * pi     # conj(phase) * x
                    vi = xi * pr - xr * pi
                    wr[4 * q + k] = cth * yr - sth * vr
                    wi[4 * q + k] = cth * yi - sth * vi
    for i in range(4):
        out[i] = wr[4 * i + i]


def hermitian_eigvals4(matrix):
    """Eigenvalues (ascending) of a 4x4 Hermitian matrix (Jacobi)."""
    m = np.asarray(matrix, dtype=np.complex128).reshape(4, 4)
    cdef double ar[16]
    cdef double ai[16]
    cdef double out[4]
    cdef int i, j
    mr = np.ascontiguousarray(m.real)
    mi = np.ascontiguousarray(m.imag)
    cdef double[:, ::1] vr = mr
    cdef double[:, ::1] vi = mi
    for i in range(4):
        for j in range(4):
            ar[4 * i + j] = vr[i, j]
            ai[4 * i + j] = vi[i, j]
    _herm4_eigvals(ar, ai, out)
    return np.sort(np.array([out[0], out[1], out[2], out[3]]))


cdef inline double _trace_dist(double* rr, double* ri,
                               double* tr_, double* ti_) nogil:
    cdef double dr[16]
    cdef double di[16]
    cdef double ev[4]
    cdef int i
    for i in range(16):
        dr[i] = rr[i] - tr_[i]
        di[i] = ri[i] - ti_[i]
    _herm4_eigvals(dr, di, ev)
    return 0.5 * (fabs(ev[0]) + fabs(ev[1]) + fabs(ev[2]) + fabs(ev[3]))


cdef inline double _fro_dist2(double* rr, double* ri,
                              double* tr_, double* ti_) nogil:
    cdef double s = 0.0
    cdef double dr, di
    cdef int i
    for i in range(16):
        dr = rr[i] - tr_[i]
        di = ri[i] - ti_[i]
        s += dr * dr + di * di
    return s


cdef inline int _classify_mixed_one(double zr, double zi, double lam,
                                    int max_iters, double tol,
                                    double* tgt_r, double* tgt_i,
                                    int* tgt_lab, int* tgt_per,
                                    double* tgt_norm, int n_tgt,
                                    int* steps_out) nogil:
    cdef double rr[16]
    cdef double ri[16]
    cdef double lr[16]
    cdef double li[16]
    cdef double m, nrm, c1, c4r, c4i, base, fro, gate, td
    cdef int t, i, w, j
    m = zr * zr + zi * zi
    nrm = sqrt(1.0 + m)
    c1 = 1.0 / nrm
    c4r = zr / nrm
    c4i = zi / nrm
    base = (1.0 - lam) * 0.25
    for i in range(16):
        rr[i] = 0.0
        ri[i] = 0.0
    rr[0] = lam * (c1 * c1) + base
    rr[5] = base
    rr[10] = base
    rr[15] = lam * (c4r * c4r + c4i * c4i) + base
    rr[3] = lam * (c1 * c4r)
    ri[3] = lam * (-(c1 * c4i))
    rr[12] = rr[3]
    ri[12] = -ri[3]
    gate = 2.0 * tol
    for t in range(max_iters + 1):
        fro = 0.0
        for i in range(16):
            fro += rr[i] * rr[i] + ri[i] * ri[i]
        fro = sqrt(fro)
        for w in range(n_tgt):
            if fabs(fro - tgt_norm[w]) >= gate:
                continue
            if _fro_dist2(rr, ri, &tgt_r[16 * w], &tgt_i[16 * w]) >= gate * gate:
                continue
            td = _trace_dist(rr, ri, &tgt_r[16 * w], &tgt_i[16 * w])
            if td >= tol:
                continue
            for i in range(16):
                lr[i] = rr[i]
                li[i] = ri[i]
            for j in range(tgt_per[w]):
                _mixed_step_c(lr, li)
            td = _trace_dist(lr, li, &tgt_r[16 * w], &tgt_i[16 * w])
            if td < tol:
                steps_out[0] = t
                return tgt_lab[w]
        if t == max_iters:
            break
        _mixed_step_c(rr, ri)
    steps_out[0] = max_iters
    return _UNRES


def classify_mixed(zr, zi, double lam, int max_iters, double tol,
                   mixed_members=None):
    """Classify family parameters for isotropic-noise initial states."""
    cdef double[::1] xr = np.ascontiguousarray(zr, dtype=np.float64).ravel()
    cdef double[::1] xi = np.ascontiguousarray(zi, dtype=np.float64).ravel()
    cdef Py_ssize_t n = xr.shape[0]
    labels_arr = np.empty(n, dtype=np.uint8)
    steps_arr = np.empty(n, dtype=np.int32)
    cdef unsigned char[::1] labels = labels_arr
    cdef int[::1] steps = steps_arr

    # target bank: entangled fixed point, separable cycle, mixed cycle
    bank = [(_BELL, 1, _bell_matrix()), (_SEP, 2, _s00_matrix()),
            (_SEP, 2, _spp_matrix())]
    if mixed_members is not None:
        mm = np.asarray(mixed_members, dtype=np.complex128)
        for k in range(mm.shape[0]):
            bank.append((_MIX, 2, mm[k]))
    cdef int n_tgt = len(bank)
    tr_arr = np.empty((n_tgt, 16))
    ti_arr = np.empty((n_tgt, 16))
    lab_arr = np.empty(n_tgt, dtype=np.int32)
    per_arr = np.empty(n_tgt, dtype=np.int32)
    norm_arr = np.empty(n_tgt)
    for k, (lab, per, tgt) in enumerate(bank):
        tr_arr[k] = np.ascontiguousarray(tgt.real).ravel()
        ti_arr[k] = np.ascontiguousarray(tgt.imag).ravel()
        lab_arr[k] = lab
        per_arr[k] = per
        norm_arr[k] = float(np.linalg.norm(tgt))
    cdef double[:, ::1] tr_v = tr_arr
    cdef double[:, ::1] ti_v = ti_arr
    cdef int[::1] lab_v = lab_arr
    cdef int[::1] per_v = per_arr
    cdef double[::1] norm_v = norm_arr

    cdef Py_ssize_t k2
    cdef int st
    with nogil:
        for k2 in range(n):
            labels[k2] = <unsigned char> _classify_mixed_one(
                xr[k2], xi[k2], lam, max_iters, tol,
                &tr_v[0, 0], &ti_v[0, 0], &lab_v[0], &per_v[0],
                &norm_v[0], n_tgt, &st)
            steps[k2] = st
    return labels_arr, steps_arr


def _bell_matrix():
    m = np.zeros((4, 4), dtype=np.complex128)
    for (i, j) in ((0, 0), (0, 3), (3, 0), (3, 3)):
        m[i, j] = 0.5
    return m


def _s00_matrix():
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 0] = 1.0
    return m


def _spp_matrix():
    return np.full((4, 4), 0.25, dtype=np.complex128)
