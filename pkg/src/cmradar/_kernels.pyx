# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: arc-hull projection, the AGP iteration loop, power iteration.

Complex arithmetic is written out on real and imaginary parts so the
compiler never calls the C99 complex-multiply helpers.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, M_PI
from scipy.linalg.cython_blas cimport zgemv

cnp.import_array()

DEF ARC = 0
DEF POINT = 1
DEF DISK = 2
DEF FULL_CIRCLE_TOL = 1e-9


cdef inline int _mode(double delta) noexcept nogil:
    if delta <= 0.0:
        return POINT
    if delta >= 2.0 * M_PI - FULL_CIRCLE_TOL:
        return DISK
    return ARC


cdef inline void _project_one(double qr, double qi, double mr, double mi,
                              double h, double s, int mode,
                              double* outr, double* outi) noexcept nogil:
    # unit-radius projection of q onto the hull of the arc centred on m
    cdef double along, across, r, wr, wi
    if mode == POINT:
        outr[0] = mr
        outi[0] = mi
        return
    if mode == DISK:
        r = sqrt(qr * qr + qi * qi)
        if r > 1.0:
            outr[0] = qr / r
            outi[0] = qi / r
        else:
            outr[0] = qr
            outi[0] = qi
        return
    along = mr * qr + mi * qi
    across = mr * qi - mi * qr
    if along >= h and qr * qr + qi * qi <= 1.0:
        outr[0] = qr
        outi[0] = qi
        return
    if along <= h and -s <= across <= s:
        wr = h
        wi = across
    elif across >= s and h * across - s * along >= 0.0:
        wr = h
        wi = s
    elif across <= -s and h * across + s * along <= 0.0:
        wr = h
        wi = -s
    else:
        r = sqrt(qr * qr + qi * qi)
        outr[0] = qr / r
        outi[0] = qi / r
        return
    outr[0] = wr * mr - wi * mi
    outi[0] = wr * mi + wi * mr


cdef void _project_vec(const double complex[::1] t, double complex[::1] out,
                       const double[::1] mr, const double[::1] mi,
                       double h, double s, int mode, double scale) noexcept nogil:
    cdef Py_ssize_t k, n = t.shape[0]
    cdef double pr, pi
    for k in range(n):
        _project_one(t[k].real * scale, t[k].imag * scale, mr[k], mi[k], h, s, mode, &pr, &pi)
        out[k] = (pr / scale) + 1j * (pi / scale)


cdef void _shifted_matvec(const double complex[:, ::1] a, double lam,
                          const double complex[::1] x, double complex[::1] y) noexcept nogil:
    # y = (a - lam I) x. A row-major a is the column-major a^T, hence trans 'T'.
    cdef int n = <int>x.shape[0], inc = 1
    cdef char trans = b'T'
    cdef double complex one = 1.0, beta = -lam
    cdef Py_ssize_t k
    for k in range(n):
        y[k] = x[k]
    zgemv(&trans, &n, &n, &one, <double complex*>&a[0, 0], &n,
          <double complex*>&x[0], &inc, &beta, &y[0], &inc)


cdef inline double _re_vdot(const double complex[::1] a, const double complex[::1] b) noexcept nogil:
    cdef Py_ssize_t k
    cdef double acc = 0.0
    for k in range(a.shape[0]):
        acc = acc + a[k].real * b[k].real + a[k].imag * b[k].imag
    return acc


def project(t, omega, double delta, double scale):
    cdef double complex[::1] tv = np.ascontiguousarray(t, dtype=np.complex128)
    cdef cnp.ndarray[double, ndim=1] om = np.ascontiguousarray(omega, dtype=np.float64)
    cdef double[::1] mr = np.cos(om + 0.5 * delta)
    cdef double[::1] mi = np.sin(om + 0.5 * delta)
    out = np.empty(tv.shape[0], dtype=np.complex128)
    cdef double complex[::1] ov = out
    with nogil:
        _project_vec(tv, ov, mr, mi, cos(0.5 * delta), sin(0.5 * delta), _mode(delta), scale)
    return out


def power_iteration(a, double tol, int max_iter):
    cdef double complex[:, ::1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef Py_ssize_t n = av.shape[0], k
    v_arr = np.full(n, 1.0 / sqrt(<double>n), dtype=np.complex128)
    w_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] v = v_arr
    cdef double complex[::1] w = w_arr
    cdef double lam = 0.0, res, nrm, dr, di
    cdef int it
    with nogil:
        for it in range(1, max_iter + 1):
            _shifted_matvec(av, 0.0, v, w)
            lam = _re_vdot(v, w)
            nrm = sqrt(_re_vdot(w, w))
            if lam <= 0.0:
                with gil:
                    return 0.0, it, nrm == 0.0
            res = 0.0
            for k in range(n):
                dr = w[k].real - lam * v[k].real
                di = w[k].imag - lam * v[k].imag
                res = res + dr * dr + di * di
            if sqrt(res) <= tol * lam:
                with gil:
                    return lam, it, True
            for k in range(n):
                v[k] = (w[k].real / nrm) + 1j * (w[k].imag / nrm)
    return lam, max_iter, False


def agp_loop(psi, double lam, double tau, omega, double delta, start,
             double zeta, int max_iter, bint accelerate):
    """Compiled twin of ``cmradar._pykernels.agp_loop``."""
    cdef double complex[:, ::1] a = np.ascontiguousarray(psi, dtype=np.complex128)
    cdef Py_ssize_t n = a.shape[0], k
    cdef double scale = sqrt(<double>n)
    cdef cnp.ndarray[double, ndim=1] om = np.ascontiguousarray(omega, dtype=np.float64)
    cdef double[::1] mr = np.cos(om + 0.5 * delta)
    cdef double[::1] mi = np.sin(om + 0.5 * delta)
    cdef double h = cos(0.5 * delta), s = sin(0.5 * delta)
    cdef int mode = _mode(delta)

    bufs = np.zeros((7, n), dtype=np.complex128)
    cdef double complex[::1] t_prev = bufs[0]
    cdef double complex[::1] t_cur = bufs[1]
    cdef double complex[::1] pt_prev = bufs[2]
    cdef double complex[::1] pt_cur = bufs[3]
    cdef double complex[::1] u = bufs[4]
    cdef double complex[::1] t_new = bufs[5]
    cdef double complex[::1] best = bufs[6]
    pt_new_arr = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] pt_new = pt_new_arr
    trace_arr = np.empty(max(max_iter, 0), dtype=np.float64)
    cdef double[::1] trace = trace_arr
    cdef double complex[::1] sv = np.ascontiguousarray(start, dtype=np.complex128)

    cdef double c, obj, best_obj, step, extrap, dr, di, vr, vi, pvr, pvi
    cdef int it = 0
    cdef bint converged = False
    cdef double complex[::1] tmp

    with nogil:
        _project_vec(sv, t_cur, mr, mi, h, s, mode, scale)
        _shifted_matvec(a, lam, t_cur, pt_cur)
        for k in range(n):
            t_prev[k] = t_cur[k]
            pt_prev[k] = pt_cur[k]
            best[k] = t_cur[k]
        best_obj = _re_vdot(t_cur, pt_cur)
        while it < max_iter:
            if accelerate:
                c = it / (it + 3.0)  # (k - 1) / (k + 2) with k = it + 1
            else:
                c = 0.0
            extrap = 0.0
            for k in range(n):
                dr = t_cur[k].real - t_prev[k].real
                di = t_cur[k].imag - t_prev[k].imag
                extrap = extrap + dr * dr + di * di
                vr = t_cur[k].real + c * (t_cur[k].real - t_prev[k].real)
                vi = t_cur[k].imag + c * (t_cur[k].imag - t_prev[k].imag)
                pvr = pt_cur[k].real + c * (pt_cur[k].real - pt_prev[k].real)
                pvi = pt_cur[k].imag + c * (pt_cur[k].imag - pt_prev[k].imag)
                u[k] = (vr + 2.0 * tau * pvr) + 1j * (vi + 2.0 * tau * pvi)
            _project_vec(u, t_new, mr, mi, h, s, mode, scale)
            _shifted_matvec(a, lam, t_new, pt_new)
            obj = _re_vdot(t_new, pt_new)
            trace[it] = obj
            it += 1
            step = 0.0
            for k in range(n):
                dr = t_new[k].real - t_cur[k].real
                di = t_new[k].imag - t_cur[k].imag
                step = step + dr * dr + di * di
            step = sqrt(step)
            extrap = c * sqrt(extrap)
            # rotate buffers: prev <- cur <- new
            tmp = t_prev
            t_prev = t_cur
            t_cur = t_new
            t_new = tmp
            tmp = pt_prev
            pt_prev = pt_cur
            pt_cur = pt_new
            pt_new = tmp
            if obj > best_obj:
                best_obj = obj
                for k in range(n):
                    best[k] = t_cur[k]
            if step <= zeta and extrap <= zeta:
                converged = True
                break

    return (np.asarray(t_cur).copy(), np.asarray(best).copy(), it,
            trace_arr[:it].copy(), bool(converged))

