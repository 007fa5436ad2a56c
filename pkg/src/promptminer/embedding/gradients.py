"""Per-pair negative-sampling loss and analytic gradients.

For a center word with input vector ``v`` and a context word with output
vector ``u_pos``, with ``k`` sampled negative output vectors ``u_neg``::

    loss = -log sigmoid(u_pos . v) - sum_i log sigmoid(-(u_neg_i . v))

These reference routines are dtype-generic numpy; the trainer kernel applies
the same math in float32 and is tested against this module.
"""

from __future__ import annotations

import numpy as np

__all__ = ["log_sigmoid", "pair_loss", "pair_gradients"]


def log_sigmoid(x):
    """log(sigmoid(x)), stable for large |x|."""
    return -np.logaddexp(0.0, -x)


def pair_loss(v: np.ndarray, u_pos: np.ndarray, u_neg: np.ndarray) -> float:
    """Loss of one (center, context) pair with its negatives."""
    loss = -log_sigmoid(u_pos @ v)
    if len(u_neg):
        loss -= log_sigmoid(-(u_neg @ v)).sum()
    return float(loss)


def pair_gradients(
    v: np.ndarray, u_pos: np.ndarray, u_neg: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gradients of :func:`pair_loss` w.r.t. (v, u_pos, u_neg)."""
    s_pos = 1.0 / (1.0 + np.exp(-(u_pos @ v)))
    d_u_pos = (s_pos - 1.0) * v
    d_v = (s_pos - 1.0) * u_pos
    if len(u_neg):
        s_neg = 1.0 / (1.0 + np.exp(-(u_neg @ v)))
        d_u_neg = s_neg[:, None] * v[None, :]
        d_v = d_v + s_neg @ u_neg
    else:
        d_u_neg = np.zeros_like(u_neg)
    return d_v, d_u_pos, d_u_neg
