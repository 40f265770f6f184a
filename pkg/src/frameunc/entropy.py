"""Rényi and Shannon entropies of coefficient sequences (in nats).

All functions accept a :class:`~frameunc.frames.CoefficientSeq` or any array
whose last axis holds the coefficients; leading axes are treated as a batch.
"""

from __future__ import annotations

import math

import numpy as np

from .frames import SUPPORT_TOL, CoefficientSeq, support_mask

__all__ = ["renyi", "shannon", "beta_conjugate"]


def _unpack(a, support_tol):
    """Values with entries off the numerical support set to zero.

    Every order then sees the same support as ``R_0``, which keeps
    ``R_alpha`` non-increasing in ``alpha`` near the threshold.
    """
    if isinstance(a, CoefficientSeq):
        values, support_tol = a.values, a.support_tol
    else:
        values = np.asarray(a)
    return np.where(support_mask(values, support_tol), values, 0), support_tol


def _squared_weights(values: np.ndarray) -> np.ndarray:
    power = np.abs(values) ** 2
    total = power.sum(axis=-1, keepdims=True)
    if np.any(total == 0):
        raise ValueError("entropy of the zero sequence is undefined")
    return power / total


def _result(x: np.ndarray):
    return float(x) if x.ndim == 0 else x


def shannon(a, support_tol: float = SUPPORT_TOL):
    """``S(a) = -sum |a~_n|^2 ln |a~_n|^2`` with ``a~ = a / ||a||_2``."""
    values, _ = _unpack(a, support_tol)
    p = _squared_weights(values)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, -p * np.log(p), 0.0)
    return _result(terms.sum(axis=-1))


def renyi(a, alpha: float, support_tol: float = SUPPORT_TOL):
    """Rényi entropy ``R_alpha(a) = ln(sum |a~_n|^{2 alpha}) / (1 - alpha)``.

    ``alpha = 0`` counts the numerical support (``ln ||a||_0``), ``alpha = 1``
    is the Shannon entropy and ``alpha = inf`` is ``-2 ln ||a~||_inf``.
    """
    alpha = float(alpha)
    if math.isnan(alpha) or alpha < 0:
        raise ValueError("Rényi order must be non-negative")
    values, tol = _unpack(a, support_tol)
    p = _squared_weights(values)
    if alpha == 0:
        return _result(np.log(support_mask(values, tol).sum(axis=-1)))
    if alpha == 1:
        return shannon(values, tol)
    if math.isinf(alpha):
        return _result(-np.log(p.max(axis=-1)))
    # sum p^alpha, factored through max(p) for large orders
    peak = p.max(axis=-1)
    ratio = p / peak[..., None]
    log_sum = alpha * np.log(peak) + np.log(np.sum(ratio**alpha, axis=-1))
    return _result(log_sum / (1.0 - alpha))


def beta_conjugate(alpha: float, r: float) -> float:
    """``beta = alpha (r - 2) / (r - 2 alpha)`` for ``r in [1, 2)``, ``alpha in [r/2, 1]``.

    Returns ``inf`` at ``alpha = r / 2`` and 1 at ``alpha = 1``.
    """
    if not 1.0 <= r < 2.0:
        raise ValueError("r must lie in [1, 2)")
    if not r / 2.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [{r / 2}, 1] for r = {r}")
    if alpha == r / 2.0:
        return math.inf
    if alpha == 1.0:
        return 1.0
    return alpha * (r - 2.0) / (r - 2.0 * alpha)
