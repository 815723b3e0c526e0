"""Pure numpy implementations of the hot kernels."""

from __future__ import annotations

import numpy as np

_ARC, _POINT, _DISK = 0, 1, 2
_FULL_CIRCLE_TOL = 1e-9


def _mode(delta):
    if delta <= 0.0:
        return _POINT
    if delta >= 2 * np.pi - _FULL_CIRCLE_TOL:
        return _DISK
    return _ARC


def _project_unit(q, mid, delta, mode):
    if mode == _POINT:
        return mid.copy()
    if mode == _DISK:
        r = np.abs(q)
        return np.where(r > 1.0, q / np.where(r > 1.0, r, 1.0), q)
    h, s = np.cos(0.5 * delta), np.sin(0.5 * delta)
    w = q * mid.conj()
    along, across = w.real, w.imag
    inside = (along >= h) & (along * along + across * across <= 1.0)
    behind = (along <= h) & (np.abs(across) <= s)
    at_a = (across >= s) & (h * across - s * along >= 0.0)
    at_b = (across <= -s) & (h * across + s * along <= 0.0)
    r = np.abs(w)
    out = np.where(
        inside,
        w,
        np.where(
            behind,
            h + 1j * across,
            np.where(at_a, h + 1j * s, np.where(at_b, h - 1j * s, w / np.where(r > 0, r, 1.0))),
        ),
    )
    out = np.where(inside, q, out * mid)
    return out


def project(t, omega, delta, scale):
    mid = np.exp(1j * (np.asarray(omega) + 0.5 * delta))
    return _project_unit(np.asarray(t) * scale, mid, delta, _mode(delta)) / scale


def power_iteration(a, tol, max_iter):
    """Largest eigenvalue of a Hermitian PSD matrix from an all-ones start.

    Returns ``(estimate, iterations, converged)``.
    """
    n = a.shape[0]
    v = np.ones(n, dtype=complex) / np.sqrt(n)
    lam = 0.0
    for it in range(1, max_iter + 1):
        w = a @ v
        lam = np.vdot(v, w).real
        if lam <= 0.0:
            return 0.0, it, bool(np.linalg.norm(w) == 0.0)
        if np.linalg.norm(w - lam * v) <= tol * lam:
            return lam, it, True
        v = w / np.linalg.norm(w)
    return lam, max_iter, False


def agp_loop(psi, lam, tau, omega, delta, start, zeta, max_iter, accelerate):
    """FISTA iterations with per-entry projection on the relaxed problem.

    Maximizes ``t^H (psi - lam I) t`` over the arc hulls scaled to radius
    ``1/sqrt(n)``. ``P t`` is carried along so each iteration needs one
    matrix-vector product: the extrapolated gradient is the same linear
    combination of the two last ``P t``.

    Stops once a projected step of at most ``zeta`` was taken from a point
    that the extrapolation moved by at most ``zeta``.

    Returns ``(last, best, iterations, trace, converged)``.
    """
    n = start.shape[0]
    scale = np.sqrt(n)
    mid = np.exp(1j * (np.asarray(omega) + 0.5 * delta))
    mode = _mode(delta)

    t_cur = _project_unit(start * scale, mid, delta, mode) / scale
    pt_cur = psi @ t_cur - lam * t_cur
    t_prev, pt_prev = t_cur, pt_cur
    best = t_cur
    best_obj = np.vdot(t_cur, pt_cur).real
    trace = np.empty(max_iter)
    converged = False
    it = 0
    while it < max_iter:
        k = it + 1
        c = (k - 1.0) / (k + 2.0) if accelerate else 0.0
        v = t_cur + c * (t_cur - t_prev)
        extrapolation = c * np.linalg.norm(t_cur - t_prev)
        pv = pt_cur + c * (pt_cur - pt_prev)
        t_new = _project_unit((v + 2.0 * tau * pv) * scale, mid, delta, mode) / scale
        pt_new = psi @ t_new - lam * t_new
        obj = np.vdot(t_new, pt_new).real
        trace[it] = obj
        it += 1
        step = np.linalg.norm(t_new - t_cur)
        t_prev, pt_prev, t_cur, pt_cur = t_cur, pt_cur, t_new, pt_new
        if obj > best_obj:
            best, best_obj = t_new, obj
        # a small step taken from an extrapolated point can be an artefact of
        # the momentum landing on an arc endpoint; only an unaccelerated one counts
        if step <= zeta and extrapolation <= zeta:
            converged = True
            break
    return t_cur, best, it, trace[:it].copy(), converged
