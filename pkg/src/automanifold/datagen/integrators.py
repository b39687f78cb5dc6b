"""Time integrators for semilinear problems ``u' = L u + N(u)`` in Fourier space.

Two schemes live here:

* :func:`lawson_dp54` -- integrating-factor (Lawson) form of the
  Dormand-Prince 5(4) pair with adaptive steps and continuous output.  The
  exact linear propagator removes the stiffness of ``L``; the step size is
  set by the nonlinear dynamics alone.
* :class:`EtdRk4` -- Cox-Matthews ETDRK4 with the Kassam-Trefethen contour
  evaluation of the phi-function coefficients, fixed step.
"""

import numpy as np

from ..errors import DivergenceError, IntegrationError

# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84])
# b5 - b4 over the seven stages (last one is the FSAL evaluation)
_E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40])
# Shampine's continuous extension, y(t + th) = y + h * sum_l k_l * sum_p P[l, p] th^(p+1)
_P = np.array([
    [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
    [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
    [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
    [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
    [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
])

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


def lawson_dp54(state0, propagate, nonlinear, to_physical, t_out, tol,
                atol=None, t0=0.0, h0=1e-2, max_steps=10_000_000):
    """Integrate from ``t0`` and return the state at every time in ``t_out``.

    Parameters
    ----------
    state0 : complex ndarray
        Initial Fourier-space state.
    propagate : callable ``(state, s) -> state``
        Applies the exact linear flow ``exp(s L)``; must accept negative ``s``.
    nonlinear : callable ``state -> state``
        Nonlinear part ``N`` evaluated on a Fourier-space state.
    to_physical : callable
        Maps a Fourier-space state (or error estimate) to grid values, where
        the per-component error test is applied.
    t_out : increasing 1-D array
        Output times, all ``>= t0``.
    tol, atol : float
        Relative and absolute tolerance (``atol`` defaults to ``tol``).

    Steps are never shortened to hit output times, so the accepted step
    sequence depends only on ``(state0, t0, tol)``; outputs come from the
    continuous extension.
    """
    atol = tol if atol is None else atol
    t_out = np.asarray(t_out, dtype=np.float64)
    out = np.empty((len(t_out),) + state0.shape, dtype=state0.dtype)
    t = float(t0)
    u = state0.copy()
    h = float(h0)
    n_done = 0
    while n_done < len(t_out) and t_out[n_done] <= t:
        out[n_done] = u
        n_done += 1
    k1 = nonlinear(u)
    steps = 0
    while n_done < len(t_out):
        steps += 1
        if steps > max_steps:
            raise IntegrationError("maximum number of steps exceeded", t)
        if h < 1e-12 * max(1.0, abs(t)):
            raise IntegrationError("step size underflow", t)
        ks = [k1]
        for j in range(1, 6):
            w = u + h * sum(a * kl for a, kl in zip(_A[j], ks) if a != 0.0)
            c = _C[j]
            ks.append(propagate(nonlinear(propagate(w, c * h)), -c * h))
        w5 = u + h * sum(b * kl for b, kl in zip(_B, ks) if b != 0.0)
        u_new = propagate(w5, h)
        n_new = nonlinear(u_new)
        ks.append(propagate(n_new, -h))
        err = propagate(h * sum(e * kl for e, kl in zip(_E, ks) if e != 0.0), h)

        phys_err = to_physical(err)
        scale = atol + tol * np.maximum(np.abs(to_physical(u)), np.abs(to_physical(u_new)))
        err_norm = float(np.max(np.abs(phys_err) / scale))
        if not np.isfinite(err_norm):
            if not np.all(np.isfinite(u_new)):
                raise DivergenceError("non-finite state", t + h)
            err_norm = np.inf

        if err_norm <= 1.0:
            t_new = t + h
            while n_done < len(t_out) and t_out[n_done] <= t_new:
                theta = (t_out[n_done] - t) / h
                powers = theta ** np.arange(1, 5)
                coef = _P @ powers
                w = u + h * sum(c * kl for c, kl in zip(coef, ks) if c != 0.0)
                out[n_done] = propagate(w, theta * h)
                n_done += 1
            t, u, k1 = t_new, u_new, n_new
            factor = _MAX_FACTOR if err_norm == 0 else min(
                _MAX_FACTOR, _SAFETY * err_norm ** -0.2)
            h *= max(_MIN_FACTOR, factor)
        else:
            h *= max(_MIN_FACTOR, _SAFETY * err_norm ** -0.2)
    if not np.all(np.isfinite(out)):
        raise DivergenceError("non-finite state", t)
    return out


class EtdRk4:
    """Fixed-step ETDRK4 for a diagonal linear operator ``L``.

    Parameters
    ----------
    lin : ndarray
        Diagonal of ``L`` (real or complex).
    h : float
        Step size.
    nonlinear : callable
        ``N(state)`` in Fourier space.
    n_contour : int
        Quadrature points on the circle used for the phi-functions; stable
        where ``h L`` is close to zero.
    """

    def __init__(self, lin, h, nonlinear, n_contour=32):
        self.h = h
        self.nonlinear = nonlinear
        hl = h * np.asarray(lin)
        self.e = np.exp(hl)
        self.e2 = np.exp(hl / 2)
        roots = np.exp(1j * np.pi * (np.arange(1, n_contour + 1) - 0.5) / n_contour)
        lr = hl[..., None] + roots
        elr = np.exp(lr)
        real = np.isrealobj(lin)

        def avg(z):
            m = z.mean(axis=-1)
            return m.real if real else m

        self.q = h * avg((np.exp(lr / 2) - 1) / lr)
        self.f1 = h * avg((-4 - lr + elr * (4 - 3 * lr + lr ** 2)) / lr ** 3)
        self.f2 = h * avg((2 + lr + elr * (lr - 2)) / lr ** 3)
        self.f3 = h * avg((-4 - 3 * lr - lr ** 2 + elr * (4 - lr)) / lr ** 3)

    def step(self, v):
        N = self.nonlinear
        nv = N(v)
        a = self.e2 * v + self.q * nv
        na = N(a)
        b = self.e2 * v + self.q * na
        nb = N(b)
        c = self.e2 * a + self.q * (2 * nb - nv)
        nc = N(c)
        return self.e * v + self.f1 * nv + 2 * self.f2 * (na + nb) + self.f3 * nc
