"""Right-hand-side constants of the support, entropic and l^p inequalities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .coherence import _minimize_geomean, coherence_from_moduli, cross_gram
from .entropy import beta_conjugate
from .frames import (
    TIGHT_TOL,
    Frame,
    FrameBounds,
    FrameError,
    canonical_dual,
    frame_bounds,
    validate_dual,
)

__all__ = [
    "FramePair",
    "BoundConstants",
    "bound_constants",
    "support_bound",
    "k_frame_bound",
    "entropic_rhs",
    "tight_shannon_bound",
    "lp_bound",
    "weak_support_bound",
]


class FramePair:
    """Two frames of the same space together with chosen dual frames.

    Duals default to the canonical ones.  User-supplied duals are checked
    with the mixed reconstruction identity.  Derived quantities are cached.
    """

    def __init__(
        self,
        U: Frame,
        V: Frame,
        U_dual: Frame | None = None,
        V_dual: Frame | None = None,
    ):
        if U.dim != V.dim:
            raise ValueError(f"frames live in different dimensions ({U.dim} vs {V.dim})")
        if U_dual is not None:
            validate_dual(U, U_dual)
        if V_dual is not None:
            validate_dual(V, V_dual)
        self.U, self.V = U, V
        self.U_dual = canonical_dual(U) if U_dual is None else U_dual
        self.V_dual = canonical_dual(V) if V_dual is None else V_dual

    @property
    def dim(self) -> int:
        return self.U.dim

    @cached_property
    def bounds_u(self) -> FrameBounds:
        return frame_bounds(self.U)

    @cached_property
    def bounds_v(self) -> FrameBounds:
        return frame_bounds(self.V)

    @cached_property
    def tight(self) -> bool:
        return all((b - a) / b < TIGHT_TOL for a, b in (self.bounds_u, self.bounds_v))

    @cached_property
    def rho(self) -> float:
        return math.sqrt(self.bounds_v.upper / self.bounds_u.lower)

    @cached_property
    def sigma(self) -> float:
        au, bu = self.bounds_u
        av, bv = self.bounds_v
        return math.sqrt(bu * bv / (au * av))

    @cached_property
    def log_sigma(self) -> float:
        # tight pairs are snapped to sigma = 1 so that 0 * inf terms vanish
        return 0.0 if self.tight else math.log(self.sigma)

    @cached_property
    def moduli_uv(self) -> np.ndarray:
        return np.abs(cross_gram(self.U_dual, self.V))

    @cached_property
    def moduli_vu(self) -> np.ndarray:
        return np.abs(cross_gram(self.V_dual, self.U))

    def mu_r_uv(self, r: float) -> float:
        """``mu_r(U~, V)``."""
        return coherence_from_moduli(self.moduli_uv, r)

    def mu_r_vu(self, r: float) -> float:
        """``mu_r(V~, U)``."""
        return coherence_from_moduli(self.moduli_vu, r)

    def nu_r(self, r: float) -> float:
        return self.mu_r_uv(r) / self.rho**r

    @cached_property
    def mu_star(self) -> tuple[float, float]:
        return _minimize_geomean(self.moduli_uv, self.moduli_vu)


def _pair(U, V, U_dual=None, V_dual=None) -> FramePair:
    if isinstance(U, FramePair):
        return U
    return FramePair(U, V, U_dual, V_dual)


def _check_open_r(r: float) -> None:
    if not 1.0 <= r < 2.0:
        raise ValueError("r must lie in [1, 2)")


@dataclass(frozen=True)
class BoundConstants:
    r: float
    rho: float
    sigma: float
    nu_r: float
    mu_r_uv: float
    mu_r_vu: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def bound_constants(U, V=None, r: float = 1.0, *, U_dual=None, V_dual=None) -> BoundConstants:
    """``rho = sqrt(B_V / A_U)``, ``sigma = sqrt(B_U B_V / (A_U A_V))`` and
    ``nu_r = mu_r(U~, V) / rho^r`` for the pair at order ``r``."""
    pair = _pair(U, V, U_dual, V_dual)
    return BoundConstants(
        r=float(r),
        rho=pair.rho,
        sigma=pair.sigma,
        nu_r=pair.nu_r(r),
        mu_r_uv=pair.mu_r_uv(r),
        mu_r_vu=pair.mu_r_vu(r),
    )


def support_bound(U, V=None, *, U_dual=None, V_dual=None) -> tuple[float, float, float]:
    """Lower bounds on ``||a||_0 ||b||_0`` and ``||a||_0 + ||b||_0``.

    Returns ``(1 / mu_*^2, 2 / mu_*, r_opt)``.
    """
    value, r_opt = _pair(U, V, U_dual, V_dual).mu_star
    return 1.0 / value**2, 2.0 / value, r_opt


def k_frame_bound(frames: Sequence[Frame]) -> tuple[float, float]:
    """Product and sum bounds on the supports of ``K >= 2`` analyses of one signal.

    ``mu_*`` is taken over cyclically adjacent pairs ``(k, k+1 mod K)``.
    """
    frames = list(frames)
    k = len(frames)
    if k < 2:
        raise ValueError("need at least two frames")
    duals = [canonical_dual(f) for f in frames]
    prod = 1.0
    for i in range(k):
        j = (i + 1) % k
        value, _ = FramePair(frames[i], frames[j], duals[i], duals[j]).mu_star
        prod *= value
    return 1.0 / prod, k * prod ** (-1.0 / k)


def entropic_rhs(U, V=None, r: float = 1.0, alpha: float = 1.0, *, U_dual=None, V_dual=None):
    """Lower bound on ``(2 - r) R_alpha(a) + r R_beta(b)``.

    Returns ``(beta, rhs)``.  ``rhs`` is ``-inf`` (non-informative) when
    ``beta = 1`` for a non-tight pair.
    """
    _check_open_r(r)
    pair = _pair(U, V, U_dual, V_dual)
    beta = beta_conjugate(alpha, r)
    base = -2.0 * math.log(pair.nu_r(r))
    log_sigma = pair.log_sigma
    if log_sigma == 0.0:
        return beta, base
    if math.isinf(beta):
        factor = 2.0 * r
    elif beta == 1.0:
        return beta, -math.inf
    else:
        factor = 2.0 * r * beta / (beta - 1.0)
    return beta, base - factor * log_sigma


def tight_shannon_bound(U, V=None, *, U_dual=None, V_dual=None) -> float:
    """``-2 ln mu_*``, a lower bound on ``S(a) + S(b)`` for tight frames."""
    pair = _pair(U, V, U_dual, V_dual)
    if not pair.tight:
        raise FrameError("the Shannon bound requires both frames to be tight")
    return -2.0 * math.log(pair.mu_star[0])


def lp_bound(U, V=None, p: float = 1.0, r: float = 1.0, *, U_dual=None, V_dual=None) -> float:
    """Constant ``C`` in ``||a||_p ||b||_p >= C ||a||_2 ||b||_2`` for ``p in [r, 2]``.

    ``C = (mu_r(U~,V) mu_r(V~,U))^{1/2 - 1/p}
    * sigma^{-(1 - r/2)(1 + (r - p)/p (1 - r/2))}``.
    """
    _check_open_r(r)
    if not r <= p <= 2.0:
        raise ValueError(f"p must lie in [{r}, 2]")
    pair = _pair(U, V, U_dual, V_dual)
    mu_prod = pair.mu_r_uv(r) * pair.mu_r_vu(r)
    half = 1.0 - r / 2.0
    sigma_exp = -half * (1.0 + (r - p) / p * half)
    return mu_prod ** (0.5 - 1.0 / p) * math.exp(sigma_exp * pair.log_sigma)


def weak_support_bound(U, V=None, r: float = 1.0, *, U_dual=None, V_dual=None) -> float:
    """``sigma^{-r} / (mu_r(U~,V) mu_r(V~,U))``: support bound via Rényi entropies."""
    _check_open_r(r)
    pair = _pair(U, V, U_dual, V_dual)
    return math.exp(-r * pair.log_sigma) / (pair.mu_r_uv(r) * pair.mu_r_vu(r))
