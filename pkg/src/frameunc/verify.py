"""Randomized and structured verification of the uncertainty inequalities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .bounds import FramePair, entropic_rhs, lp_bound, weak_support_bound
from .coherence import cross_gram
from .entropy import renyi, shannon
from .frames import SUPPORT_TOL, Frame, FrameError, support_mask

__all__ = [
    "SLACK_TOL",
    "EQUALITY_TOL",
    "VerificationReport",
    "EqualityDiagnostics",
    "check_support",
    "check_support_sum",
    "check_weak_support",
    "check_entropic",
    "check_shannon",
    "check_lp",
    "equality_conditions",
    "variational_residual",
    "TrialConfig",
    "BatchReport",
    "trial_signals",
    "random_trials",
]

SLACK_TOL = 1e-9
EQUALITY_TOL = 1e-6
INEQUALITIES = ("support", "support_sum", "weak_support", "entropic", "shannon", "lp")


def _finite_or_none(v):
    v = float(v)
    return v if math.isfinite(v) else None


@dataclass
class VerificationReport:
    """Outcome of one inequality over one signal or a batch of signals.

    For a batch, ``lhs``/``rhs``/``slack`` describe the worst signal, stored
    in ``witness``.
    """

    inequality_id: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    tol: float = SLACK_TOL
    informative: bool = True
    witness: np.ndarray | None = None
    trial_count: int = 1
    details: dict = field(default_factory=dict)

    @property
    def min_slack(self) -> float:
        return self.slack

    def to_dict(self) -> dict:
        out = {
            "inequality": self.inequality_id,
            "lhs": _finite_or_none(self.lhs),
            "rhs": _finite_or_none(self.rhs),
            "min_slack": _finite_or_none(self.slack),
            "passed": bool(self.passed),
            "tol": self.tol,
            "informative": bool(self.informative),
            "trial_count": int(self.trial_count),
        }
        if self.witness is not None:
            w = np.asarray(self.witness)
            out["witness"] = np.stack([w.real, w.imag], axis=-1).tolist()
        if self.details:
            out["details"] = self.details
        return out


def _unit_rows(X) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=np.complex128))
    norms = np.linalg.norm(X, axis=1, keepdims=True)
    if np.any(norms == 0):
        raise ValueError("the zero signal carries no information")
    return X / norms


def _coefficients(pair: FramePair, X: np.ndarray):
    return X @ pair.U.vectors.conj().T, X @ pair.V.vectors.conj().T


def _reduce(name, lhs, rhs, X, tol, informative=True, details=None) -> VerificationReport:
    lhs = np.broadcast_to(np.asarray(lhs, float), (X.shape[0],))
    rhs = np.broadcast_to(np.asarray(rhs, float), (X.shape[0],))
    if informative:
        slack = lhs - rhs
        i = int(np.argmin(slack))  # first minimum: index-ordered tie-breaking
        s = float(slack[i])
    else:
        i, s = 0, math.inf
    return VerificationReport(
        inequality_id=name,
        lhs=float(lhs[i]),
        rhs=float(rhs[i]),
        slack=s,
        passed=s >= -tol,
        tol=tol,
        informative=informative,
        witness=X[i].copy(),
        trial_count=X.shape[0],
        details=details or {},
    )


# ----------------------------------------------------- batch inequality kernels


def _l0(coeffs, support_tol=SUPPORT_TOL):
    return support_mask(coeffs, support_tol).sum(axis=-1).astype(float)


def _support(pair, X, tol):
    a, b = _coefficients(pair, X)
    value, r_opt = pair.mu_star
    return _reduce("support", _l0(a) * _l0(b), 1.0 / value**2, X, tol, details={"r_opt": r_opt})


def _support_sum(pair, X, tol):
    a, b = _coefficients(pair, X)
    value, r_opt = pair.mu_star
    return _reduce("support_sum", _l0(a) + _l0(b), 2.0 / value, X, tol, details={"r_opt": r_opt})


def _weak_support(pair, X, r, tol):
    a, b = _coefficients(pair, X)
    return _reduce(f"weak_support[r={r:g}]", _l0(a) * _l0(b), weak_support_bound(pair, r=r), X, tol)


def _entropic(pair, X, r, alpha, tol):
    beta, rhs = entropic_rhs(pair, r=r, alpha=alpha)
    name = f"entropic[r={r:g},alpha={alpha:g}]"
    details = {"beta": _finite_or_none(beta)}
    a, b = _coefficients(pair, X)
    lhs = (2.0 - r) * renyi(a, alpha) + r * renyi(b, beta)
    if rhs == -math.inf:
        details["note"] = "non-informative: right-hand side is -inf"
        return _reduce(name, lhs, rhs, X, tol, informative=False, details=details)
    return _reduce(name, lhs, rhs, X, tol, details=details)


def _shannon(pair, X, tol):
    if not pair.tight:
        raise FrameError("the Shannon bound requires both frames to be tight")
    a, b = _coefficients(pair, X)
    rhs = -2.0 * math.log(pair.mu_star[0])
    return _reduce("shannon", shannon(a) + shannon(b), rhs, X, tol)


def _lp(pair, X, p, r, tol):
    a, b = _coefficients(pair, X)
    c = lp_bound(pair, p=p, r=r)
    lhs = np.linalg.norm(a, ord=p, axis=1) * np.linalg.norm(b, ord=p, axis=1)
    rhs = c * np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1)
    return _reduce(f"lp[r={r:g},p={p:g}]", lhs, rhs, X, tol, details={"constant": c})


# --------------------------------------------------------- single-signal checks


def check_support(U, V, x, *, pair: FramePair | None = None, tol=SLACK_TOL):
    """``||Ux||_0 ||Vx||_0 >= 1 / mu_*^2``."""
    return _support(pair or FramePair(U, V), _unit_rows(x), tol)


def check_support_sum(U, V, x, *, pair: FramePair | None = None, tol=SLACK_TOL):
    """``||Ux||_0 + ||Vx||_0 >= 2 / mu_*``."""
    return _support_sum(pair or FramePair(U, V), _unit_rows(x), tol)


def check_weak_support(U, V, x, r, *, pair: FramePair | None = None, tol=SLACK_TOL):
    return _weak_support(pair or FramePair(U, V), _unit_rows(x), r, tol)


def check_entropic(U, V, x, r, alpha, *, pair: FramePair | None = None, tol=SLACK_TOL):
    """``(2 - r) R_alpha(Ux) + r R_beta(Vx) >= rhs``; passes trivially if ``rhs = -inf``."""
    return _entropic(pair or FramePair(U, V), _unit_rows(x), r, alpha, tol)


def check_shannon(U, V, x, *, pair: FramePair | None = None, tol=SLACK_TOL):
    """``S(Ux) + S(Vx) >= -2 ln mu_*`` for tight frames."""
    return _shannon(pair or FramePair(U, V), _unit_rows(x), tol)


def check_lp(U, V, x, p, r, *, pair: FramePair | None = None, tol=SLACK_TOL):
    """``||Ux||_p ||Vx||_p >= C ||Ux||_2 ||Vx||_2`` with ``x`` scaled to unit norm."""
    return _lp(pair or FramePair(U, V), _unit_rows(x), p, r, tol)


# ------------------------------------------------------------ equality analysis


@dataclass(frozen=True)
class EqualityDiagnostics:
    modulus_flatness_a: float
    modulus_flatness_b: float
    crossgram_flatness: float
    phase_residual: float
    tol: float
    support_a: tuple[int, ...]
    support_b: tuple[int, ...]

    @property
    def all_satisfied(self) -> bool:
        return max(
            self.modulus_flatness_a,
            self.modulus_flatness_b,
            self.crossgram_flatness,
            self.phase_residual,
        ) <= self.tol

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["all_satisfied"] = self.all_satisfied
        return d


def _spread(mod: np.ndarray, axis=None) -> float:
    """Largest relative deviation ``(max - min) / max`` (0 for empty or zero rows)."""
    if mod.size == 0:
        return 0.0
    hi = mod.max(axis=axis)
    lo = mod.min(axis=axis)
    with np.errstate(divide="ignore", invalid="ignore"):
        dev = np.where(hi > 0, (hi - lo) / hi, 0.0)
    return float(np.max(dev))


def _circular(d: np.ndarray) -> np.ndarray:
    return np.abs(np.angle(np.exp(1j * d)))


def equality_conditions(
    U: Frame,
    V: Frame,
    x,
    tol: float = EQUALITY_TOL,
    *,
    U_dual: Frame | None = None,
    V_dual: Frame | None = None,
    support_tol: float = SUPPORT_TOL,
) -> EqualityDiagnostics:
    """Residuals of the three necessary conditions for a sharp support bound.

    (i) ``|a|`` and ``|b|`` constant on their supports; (ii) the blocks
    ``|<u~_k, v_l>|`` and ``|<v~_l, u_k>|`` restricted to ``supp(a) x supp(b)``
    constant along rows (resp. columns); (iii) ``arg <u~_k, v_l> = arg b_l -
    arg a_k = -arg <v~_l, u_k>`` on the same block, compared on the circle.
    """
    pair = FramePair(U, V, U_dual, V_dual)
    x = _unit_rows(x)[0]
    a, b = _coefficients(pair, x[None])
    a, b = a[0], b[0]
    sa = np.flatnonzero(support_mask(a, support_tol))
    sb = np.flatnonzero(support_mask(b, support_tol))

    g_uv = cross_gram(pair.U_dual, pair.V)[np.ix_(sa, sb)]  # <u~_k, v_l>
    g_vu = cross_gram(pair.V_dual, pair.U)[np.ix_(sb, sa)]  # <v~_l, u_k>
    flat = max(_spread(np.abs(g_uv), axis=1), _spread(np.abs(g_vu), axis=1))

    target = np.angle(b[sb])[None, :] - np.angle(a[sa])[:, None]
    phase = 0.0
    for block, sign in ((g_uv, 1.0), (g_vu.T, -1.0)):
        mod = np.abs(block)
        if mod.size == 0:
            continue
        keep = mod > support_tol * mod.max()
        if np.any(keep):
            dev = _circular(np.angle(block) - sign * target)
            phase = max(phase, float(dev[keep].max()))
    return EqualityDiagnostics(
        modulus_flatness_a=_spread(np.abs(a[sa])),
        modulus_flatness_b=_spread(np.abs(b[sb])),
        crossgram_flatness=flat,
        phase_residual=phase,
        tol=tol,
        support_a=tuple(int(k) for k in sa),
        support_b=tuple(int(k) for k in sb),
    )


def _power_weights(c: np.ndarray, order: float, tie_tol: float = 1e-9) -> np.ndarray:
    """``|c_k|^{2(order-1)} c_k / ||c||_{2 order}^{2 order}`` (zero off support)."""
    mod = np.abs(c)
    peak = mod.max()
    t = mod / peak
    if math.isinf(order):
        top = t >= 1.0 - tie_tol
        return np.where(top, c / (peak**2 * top.sum()), 0.0)
    mass = np.sum(t ** (2.0 * order))
    with np.errstate(divide="ignore", invalid="ignore"):
        w = np.where(mod > 0, t ** (2.0 * order - 2.0) * c / (peak**2 * mass), 0.0)
    return w


def variational_residual(
    U: Frame,
    V: Frame,
    x,
    alpha: float,
    r: float,
    support_tol: float = SUPPORT_TOL,
) -> float:
    """Sup-norm residual of the stationarity equation for tight frames.

    On ``supp(a)`` the equation
    ``|a_l|^{2(alpha-1)} a_l / ||a||_{2alpha}^{2alpha}
    = A_U^{-1} sum_k conj(g_kl) |b_k|^{2(beta-1)} b_k / ||b||_{2beta}^{2beta}``
    with ``g_kl = <u_l, v_k>`` is compared entrywise; off the support the
    right-hand side alone must vanish.  ``x`` is scaled to unit norm.
    """
    from .entropy import beta_conjugate

    if alpha == 1:
        raise ValueError("the stationarity equation is stated for alpha != 1")
    pair = FramePair(U, V)
    if not pair.tight:
        raise FrameError("the stationarity equation is stated for tight frames")
    beta = beta_conjugate(alpha, r)
    x = _unit_rows(x)[0]
    a = pair.U.vectors.conj() @ x
    b = pair.V.vectors.conj() @ x
    on = support_mask(a, support_tol)
    lhs = np.zeros_like(a)
    lhs[on] = _power_weights(a[on], alpha)
    # cross_gram(V, U)[k, l] = <v_k, u_l> = conj(g_kl)
    rhs = cross_gram(pair.V, pair.U).T @ _power_weights(b, beta) / pair.bounds_u.lower
    res_on = np.abs(lhs[on] - rhs[on]).max(initial=0.0)
    res_off = np.abs(rhs[~on]).max(initial=0.0)
    return float(max(res_on, res_off))


# ------------------------------------------------------------- random trials


@dataclass
class TrialConfig:
    """Batch verification settings for one frame pair."""

    n_trials: int = 1000
    seed: int = 0
    inequalities: tuple[str, ...] = INEQUALITIES
    r_values: tuple[float, ...] = (1.0, 1.5)
    n_alpha: int = 5
    p_values: tuple[float, ...] = (1.0, 1.5, 2.0)
    n_sparse: int = 30
    structured: bool = True
    tol: float = SLACK_TOL

    def alphas(self, r: float) -> np.ndarray:
        return np.linspace(r / 2.0, 1.0, self.n_alpha)


def trial_signals(pair: FramePair, config: TrialConfig) -> np.ndarray:
    """Unit-norm test signals: complex Gaussian draws, then structured ones.

    Structured signals are every frame vector of ``U`` and ``V`` and random
    combinations of ``k = 1, 2, 3`` vectors of either frame.
    """
    rng = np.random.default_rng(config.seed)
    n = pair.dim
    rows = [rng.standard_normal((config.n_trials, n)) + 1j * rng.standard_normal((config.n_trials, n))]
    if config.structured:
        for F in (pair.U, pair.V):
            vecs = F.vectors
            rows.append(vecs)
            for k in (1, 2, 3):
                if k > vecs.shape[0]:
                    continue
                for _ in range(config.n_sparse):
                    idx = rng.choice(vecs.shape[0], size=k, replace=False)
                    coef = rng.standard_normal(k) + 1j * rng.standard_normal(k)
                    rows.append((coef @ vecs[idx])[None])
    X = np.vstack(rows)
    X = X[np.linalg.norm(X, axis=1) > 1e-12]
    return _unit_rows(X)


@dataclass
class BatchReport:
    label: str
    seed: int
    n_signals: int
    reports: list[VerificationReport]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def __getitem__(self, inequality_id: str) -> VerificationReport:
        for r in self.reports:
            if r.inequality_id == inequality_id:
                return r
        raise KeyError(inequality_id)

    def ids(self) -> list[str]:
        return [r.inequality_id for r in self.reports]

    def to_dict(self) -> dict:
        return {
            "pair": self.label,
            "seed": self.seed,
            "n_signals": self.n_signals,
            "all_passed": self.all_passed,
            "reports": [r.to_dict() for r in self.reports],
        }


def _instances(pair: FramePair, config: TrialConfig) -> Iterable:
    for name in config.inequalities:
        if name == "support":
            yield lambda X: _support(pair, X, config.tol)
        elif name == "support_sum":
            yield lambda X: _support_sum(pair, X, config.tol)
        elif name == "weak_support":
            for r in config.r_values:
                yield lambda X, r=r: _weak_support(pair, X, r, config.tol)
        elif name == "entropic":
            for r in config.r_values:
                for alpha in config.alphas(r):
                    yield lambda X, r=r, al=float(alpha): _entropic(pair, X, r, al, config.tol)
        elif name == "shannon":
            if pair.tight:
                yield lambda X: _shannon(pair, X, config.tol)
        elif name == "lp":
            for r in config.r_values:
                for p in config.p_values:
                    if r <= p <= 2.0:
                        yield lambda X, r=r, p=p: _lp(pair, X, p, r, config.tol)
        else:
            raise ValueError(f"unknown inequality {name!r}; choose from {INEQUALITIES}")


def random_trials(U, V=None, config: TrialConfig | None = None) -> BatchReport:
    """Check every configured inequality on a deterministic batch of signals.

    ``U`` may be a :class:`FramePair` (then ``V`` is ignored).  Shannon
    checks are skipped for non-tight pairs.
    """
    config = config or TrialConfig()
    pair = U if isinstance(U, FramePair) else FramePair(U, V)
    X = trial_signals(pair, config)
    reports = [check(X) for check in _instances(pair, config)]
    label = f"{pair.U.label} / {pair.V.label}"
    return BatchReport(label=label, seed=config.seed, n_signals=X.shape[0], reports=reports)
