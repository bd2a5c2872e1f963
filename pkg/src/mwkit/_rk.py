"""Vectorized Dormand-Prince 5(4) stepper.

Every array carries a leading lane axis so that many independent initial
value problems advance together, each with its own signed step ``h``.
"""

from __future__ import annotations

import numpy as np

ORDER = 5
N_STAGES = 7

C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
B = np.array([35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0])
# difference between the 5th and the embedded 4th order weights
E = np.array([71 / 57600, 0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40])

# continuous extension: y(t0 + s h) = y0 + h * (K^T P) @ [s, s^2, s^3, s^4]
P = np.array(
    [
        [1, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
        [0, 0, 0, 0],
        [0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
        [0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
        [0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
        [0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
        [0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
    ]
)

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 10.0
# PI controller exponents (Gustafsson / Hairer DOPRI5 defaults)
BETA = 0.04
ALPHA = 1.0 / ORDER - 0.75 * BETA


def rms_norm(v: np.ndarray) -> np.ndarray:
    # explicit column sum for the same reason as in _combine
    sq = v * v
    acc = np.zeros(sq.shape[:-1])
    for j in range(sq.shape[-1]):
        acc += sq[..., j]
    return np.sqrt(acc / sq.shape[-1])


def _combine(w: np.ndarray, K: np.ndarray) -> np.ndarray:
    """``sum_s w[s] * K[s]`` in a fixed order.

    Elementwise accumulation keeps every lane bit-identical whatever the
    batch size; BLAS-backed contractions change their summation order.
    """
    acc = np.zeros(K.shape[1:])
    for ws, Ks in zip(w, K):
        if ws != 0.0:
            acc += ws * Ks
    return acc


def step(rhs, y: np.ndarray, f0: np.ndarray, h: np.ndarray):
    """One trial step for every lane.

    Returns ``(y_new, f_new, err, K)`` where ``err`` is the signed local
    error estimate per component and ``K`` holds all stage derivatives.
    """
    m, k = y.shape
    K = np.empty((N_STAGES, m, k))
    K[0] = f0
    hc = h[:, None]
    for i in range(1, 6):
        dy = _combine(A[i], K[:i])
        K[i] = rhs(y + hc * dy)
    y_new = y + hc * _combine(B[:6], K[:6])
    K[6] = rhs(y_new)
    err = hc * _combine(E, K)
    return y_new, K[6], err, K


def error_norm(err: np.ndarray, y: np.ndarray, y_new: np.ndarray, rtol: float, atol: float) -> np.ndarray:
    scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
    return rms_norm(err / scale)


def dense_coefficients(K: np.ndarray) -> np.ndarray:
    """Per-lane interpolation matrix Q with shape (m, k, 4)."""
    return np.stack([_combine(P[:, p], K) for p in range(P.shape[1])], axis=-1)


def dense_eval(y0: np.ndarray, h, Q: np.ndarray, s):
    """Evaluate the continuous extension of one lane at fraction(s) ``s`` of the step.

    ``y0`` has shape (k,), ``Q`` shape (k, 4); ``s`` may be a scalar or 1-D array.
    """
    s = np.asarray(s, dtype=float)
    powers = np.stack([s, s**2, s**3, s**4], axis=-1)
    return y0 + h * (powers @ Q.T)


def initial_step(rhs, y0: np.ndarray, f0: np.ndarray, rtol: float, atol: float, direction: float) -> np.ndarray:
    """Hairer's starting step heuristic, per lane (unsigned)."""
    scale = atol + rtol * np.abs(y0)
    d0 = rms_norm(y0 / scale)
    d1 = rms_norm(f0 / scale)
    with np.errstate(divide="ignore", invalid="ignore"):
        h0 = np.where((d0 < 1e-5) | (d1 < 1e-5), 1e-6, 0.01 * d0 / d1)
        y1 = y0 + direction * h0[:, None] * f0
        f1 = rhs(y1)
        d2 = rms_norm((f1 - f0) / scale) / h0
        dmax = np.maximum(d1, d2)
        h1 = np.where(dmax <= 1e-15, np.maximum(1e-6, h0 * 1e-3), (0.01 / dmax) ** (1.0 / ORDER))
    h = np.minimum(100 * h0, h1)
    return np.where(np.isfinite(h) & (h > 0), h, 1e-6)


def next_factor(err: np.ndarray, err_prev: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        fac = SAFETY * err ** (-ALPHA) * err_prev**BETA
    return np.clip(np.where(err == 0, MAX_FACTOR, fac), MIN_FACTOR, MAX_FACTOR)


def reject_factor(err: np.ndarray) -> np.ndarray:
    with np.errstate(invalid="ignore"):
        fac = SAFETY * err ** (-1.0 / ORDER)
    return np.where(np.isfinite(fac), np.maximum(MIN_FACTOR, fac), MIN_FACTOR)
