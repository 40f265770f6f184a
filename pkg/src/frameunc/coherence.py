"""Mutual coherence of order r and the optimized constant mu_*."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .frames import Frame, canonical_dual

__all__ = [
    "cross_gram",
    "coherence_r",
    "coherence_from_moduli",
    "CoherenceCurve",
    "coherence_curve",
    "mu_star",
    "golden_section",
    "PropMurReport",
    "prop_mur_condition",
    "column_entropies",
    "max_column_entropy",
    "slope_at_two",
]

GRID_POINTS = 201
R_TOL = 1e-6


def cross_gram(U: Frame, V: Frame) -> np.ndarray:
    """``G[k, l] = <u_k, v_l>``; rows indexed by ``U``, columns by ``V``."""
    if U.dim != V.dim:
        raise ValueError(f"frames live in different dimensions ({U.dim} vs {V.dim})")
    return U.vectors @ V.vectors.conj().T


def _check_r(r: np.ndarray) -> None:
    if np.any(~np.isfinite(r)) or np.any(r < 1) or np.any(r > 2):
        raise ValueError("coherence order r must lie in [1, 2]")


def coherence_from_moduli(moduli: np.ndarray, r) -> np.ndarray | float:
    """Evaluate ``max_l (sum_k |G_kl|^{r'})^{r/r'}`` from ``|G|``.

    Vectorized over ``r``.  Each column is rescaled by its largest entry
    before exponentiation so that large ``r'`` (``r`` near 1) does not
    underflow; ``r = 1`` is the sup-modulus limit.
    """
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    _check_r(r_arr)
    peak = moduli.max(axis=0)
    if np.any(peak <= 0):
        raise ValueError("a column of the cross-Gram matrix vanishes")
    ratio = moduli / peak
    log_peak = np.log(peak)
    out = np.empty_like(r_arr)
    for i, r_i in enumerate(r_arr):
        if r_i == 1.0:
            out[i] = peak.max()
            continue
        r_conj = r_i / (r_i - 1.0)
        mass = np.sum(ratio**r_conj, axis=0)
        # (peak^{r'} * mass)^{r/r'} = peak^r * mass^{r - 1}
        logs = r_i * log_peak + (r_i - 1.0) * np.log(mass)
        out[i] = math.exp(logs.max())
    return float(out[0]) if np.ndim(r) == 0 else out


def coherence_r(U: Frame, V: Frame, r: float) -> float:
    """Mutual coherence of order ``r`` of ``U`` against ``V``."""
    return coherence_from_moduli(np.abs(cross_gram(U, V)), float(r))


@dataclass(frozen=True)
class CoherenceCurve:
    r_grid: np.ndarray
    mu_uv: np.ndarray
    mu_vu: np.ndarray

    @property
    def geomean(self) -> np.ndarray:
        return np.sqrt(self.mu_uv * self.mu_vu)

    @property
    def argmin_r(self) -> float:
        return float(self.r_grid[np.argmin(self.geomean)])

    @property
    def min_value(self) -> float:
        return float(self.geomean.min())


def _dual_moduli(U, V, U_dual, V_dual):
    U_dual = canonical_dual(U) if U_dual is None else U_dual
    V_dual = canonical_dual(V) if V_dual is None else V_dual
    return np.abs(cross_gram(U_dual, V)), np.abs(cross_gram(V_dual, U))


def coherence_curve(
    U: Frame,
    V: Frame,
    r_grid=None,
    *,
    U_dual: Frame | None = None,
    V_dual: Frame | None = None,
    use_duals: bool = True,
) -> CoherenceCurve:
    """Both directed r-coherences over a grid of ``r``.

    With ``use_duals`` the pair is ``(mu_r(U~, V), mu_r(V~, U))``, the
    combination entering the support bound; otherwise ``(mu_r(U, V),
    mu_r(V, U))``.
    """
    r_grid = np.linspace(1.0, 2.0, GRID_POINTS) if r_grid is None else np.asarray(r_grid, float)
    if use_duals:
        g_uv, g_vu = _dual_moduli(U, V, U_dual, V_dual)
    else:
        g_uv, g_vu = np.abs(cross_gram(U, V)), np.abs(cross_gram(V, U))
    return CoherenceCurve(
        r_grid, coherence_from_moduli(g_uv, r_grid), coherence_from_moduli(g_vu, r_grid)
    )


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = R_TOL):
    """Minimize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _minimize_geomean(g_uv: np.ndarray, g_vu: np.ndarray) -> tuple[float, float]:
    def geo(r):
        return math.sqrt(coherence_from_moduli(g_uv, r) * coherence_from_moduli(g_vu, r))

    grid = np.linspace(1.0, 2.0, GRID_POINTS)
    values = np.sqrt(coherence_from_moduli(g_uv, grid) * coherence_from_moduli(g_vu, grid))
    i = int(np.argmin(values))  # first occurrence: ties go to the smaller r
    best_r, best = float(grid[i]), float(values[i])
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    r_ref, v_ref = golden_section(geo, float(lo), float(hi))
    if v_ref < best:
        best_r, best = r_ref, v_ref
    return best, best_r


def mu_star(
    U: Frame,
    V: Frame,
    U_dual: Frame | None = None,
    V_dual: Frame | None = None,
) -> tuple[float, float]:
    """``inf_r sqrt(mu_r(U~, V) mu_r(V~, U))`` over ``r`` in ``[1, 2]``.

    Duals default to the canonical ones.  Returns ``(value, r_opt)``; the
    infimum is located on a 201-point grid and refined by golden-section
    search in the neighbouring grid cells.
    """
    g_uv, g_vu = _dual_moduli(U, V, U_dual, V_dual)
    return _minimize_geomean(g_uv, g_vu)


@dataclass(frozen=True)
class PropMurReport:
    s: np.ndarray  # largest modulus per column
    n: np.ndarray  # multiplicity of that maximum
    tie_tol: float

    @property
    def max_ns(self) -> float:
        return float(np.max(self.n * self.s))

    @property
    def predicted_improvement(self) -> bool:
        return self.max_ns < 1.0


def prop_mur_condition(U: Frame, V: Frame, tie_tol: float = 1e-9) -> PropMurReport:
    """Column maxima ``s_l`` of ``|<u_k, v_l>|`` and their multiplicities.

    When ``max_l n_l s_l < 1`` some ``r > 1`` has ``mu_r(U, V) < mu_1(U, V)``.
    """
    if tie_tol <= 0:
        raise ValueError("tie tolerance must be positive")
    moduli = np.abs(cross_gram(U, V))
    s = moduli.max(axis=0)
    n = np.sum(moduli >= s * (1.0 - tie_tol), axis=0)
    return PropMurReport(s=s, n=n, tie_tol=tie_tol)


def column_entropies(U: Frame, V: Frame) -> np.ndarray:
    """``-sum_k |G_kl|^2 ln |G_kl|^2`` for each column ``l``, with 0 ln 0 = 0."""
    p = np.abs(cross_gram(U, V)) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, -p * np.log(p), 0.0)
    return terms.sum(axis=0)


def max_column_entropy(U: Frame, V: Frame) -> float:
    """Largest column entropy of the squared cross-Gram moduli."""
    return float(column_entropies(U, V).max())


def slope_at_two(U: Frame, V: Frame) -> float:
    """Left derivative of ``r -> mu_r(U, V)`` at ``r = 2`` for orthonormal bases.

    Column ``l`` behaves like ``1 - (2 - r) H_l / 2`` near ``r = 2`` with
    ``H_l`` its column entropy, so the supremum over columns is governed by
    the smallest entropy: the slope is ``min_l H_l / 2``.
    """
    return float(column_entropies(U, V).min() / 2.0)
