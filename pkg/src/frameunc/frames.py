"""Finite frames: analysis, synthesis, frame bounds and canonical duals.

Frame vectors are stored as the rows of an ``(M, N)`` complex array.  The
inner product is linear in its first argument,
``<x, u> = sum_i x_i * conj(u_i)``, so the analysis coefficients of ``x`` are
``conj(F) @ x`` and synthesis of ``c`` is ``F.T @ c``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

__all__ = [
    "Frame",
    "FrameBounds",
    "CoefficientSeq",
    "FrameError",
    "analyze",
    "synthesize",
    "frame_operator",
    "frame_bounds",
    "is_tight",
    "canonical_dual",
    "validate_dual",
    "change_of_frame",
    "frame_to_dict",
    "frame_from_dict",
    "load_frames",
    "save_frames",
]

SUPPORT_TOL = 1e-8
FRAME_TOL = 1e-12  # "is a frame" requires A > FRAME_TOL * B
TIGHT_TOL = 1e-9  # tight iff (B - A) / B < TIGHT_TOL
MAX_CONDITION = 1e12


class FrameError(ValueError):
    """Raised when a vector family is not a usable frame."""


@dataclass(frozen=True, eq=False)
class Frame:
    """An ordered family of ``M`` vectors spanning ``C^N``.

    Parameters
    ----------
    vectors : array_like, shape (M, N)
        Frame vectors as rows.  Copied to a read-only complex128 array.
    label : str
        Free-form description, carried into reports and JSON files.
    """

    vectors: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        vecs = np.array(self.vectors, dtype=np.complex128, copy=True)
        if vecs.ndim != 2 or vecs.shape[0] == 0 or vecs.shape[1] == 0:
            raise FrameError(f"frame vectors must be a non-empty 2-D array, got shape {vecs.shape}")
        m, n = vecs.shape
        if m < n:
            raise FrameError(f"{m} vectors cannot span a space of dimension {n}")
        norms = np.linalg.norm(vecs, axis=1)
        if np.any(norms <= 0):
            raise FrameError("frame vectors must have strictly positive norm")
        sv = np.linalg.svd(vecs, compute_uv=False)
        if sv[-1] <= np.sqrt(FRAME_TOL) * sv[0]:
            raise FrameError("vectors do not span the ambient space (not a frame)")
        vecs.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"Frame(label={self.label!r}, size={self.size}, dim={self.dim})"


class FrameBounds(NamedTuple):
    lower: float
    upper: float


@dataclass(frozen=True)
class CoefficientSeq:
    """Analysis coefficients with a relative threshold for numerical support."""

    values: np.ndarray
    support_tol: float = SUPPORT_TOL

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=np.complex128, copy=True).reshape(-1)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    @property
    def support(self) -> np.ndarray:
        """Indices ``k`` with ``|a_k| > tol * max_j |a_j|``."""
        return np.flatnonzero(support_mask(self.values, self.support_tol))

    @property
    def l0(self) -> int:
        return int(self.support.size)

    def norm(self, p: float = 2) -> float:
        if p == 0:
            return float(self.l0)
        return float(np.linalg.norm(self.values, ord=p))

    def normalized(self) -> np.ndarray:
        nrm = np.linalg.norm(self.values)
        if nrm == 0:
            raise ValueError("the zero sequence has no normalized view")
        return self.values / nrm


def support_mask(values: np.ndarray, tol: float = SUPPORT_TOL) -> np.ndarray:
    """Boolean numerical-support mask along the last axis."""
    mod = np.abs(values)
    peak = mod.max(axis=-1, keepdims=True)
    return (mod > tol * peak) & (peak > 0)


def _as_matrix(frame: Frame | np.ndarray) -> np.ndarray:
    return frame.vectors if isinstance(frame, Frame) else np.asarray(frame, dtype=np.complex128)


def analyze(frame: Frame, x, support_tol: float = SUPPORT_TOL) -> CoefficientSeq:
    """Return the analysis coefficients ``a_k = <x, u_k>``."""
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    if x.size != frame.dim:
        raise ValueError(f"signal has length {x.size}, frame dimension is {frame.dim}")
    return CoefficientSeq(frame.vectors.conj() @ x, support_tol)


def synthesize(frame: Frame, c) -> np.ndarray:
    """Return ``sum_k c_k u_k``."""
    c = np.asarray(c, dtype=np.complex128).reshape(-1)
    if c.size != frame.size:
        raise ValueError(f"got {c.size} coefficients for a frame of {frame.size} vectors")
    return frame.vectors.T @ c


def frame_operator(frame: Frame) -> np.ndarray:
    """``S = sum_k u_k u_k^H`` as an ``(N, N)`` Hermitian matrix."""
    f = frame.vectors
    s = f.T @ f.conj()
    return (s + s.conj().T) / 2


def frame_bounds(frame: Frame) -> FrameBounds:
    """Optimal frame bounds: extreme eigenvalues of the frame operator."""
    eig = np.linalg.eigvalsh(frame_operator(frame))
    lower, upper = float(eig[0]), float(eig[-1])
    if lower <= FRAME_TOL * upper:
        raise FrameError("frame operator is not positive definite (not a frame)")
    return FrameBounds(lower, upper)


def is_tight(frame: Frame, tol: float = TIGHT_TOL) -> bool:
    lower, upper = frame_bounds(frame)
    return (upper - lower) / upper < tol


def canonical_dual(frame: Frame, max_condition: float = MAX_CONDITION) -> Frame:
    """Canonical dual frame ``u~_k = S^{-1} u_k``."""
    eig, vec = np.linalg.eigh(frame_operator(frame))
    if eig[0] <= 0 or eig[-1] / eig[0] > max_condition:
        raise FrameError(f"ill-conditioned frame operator (condition number {eig[-1] / eig[0]:.3g})")
    s_inv = (vec / eig) @ vec.conj().T
    # rows: (S^{-1} u_k)^T = u_k^T S^{-T}
    dual = frame.vectors @ s_inv.T
    return Frame(dual, label=f"dual({frame.label})")


def validate_dual(frame: Frame, dual: Frame, tol: float = 1e-9) -> None:
    """Raise unless ``x = sum_k <x, u_k> u~_k`` holds for every ``x``."""
    if dual.size != frame.size or dual.dim != frame.dim:
        raise FrameError("dual frame shape does not match the frame")
    mixed = dual.vectors.T @ frame.vectors.conj()
    err = np.abs(mixed - np.eye(frame.dim)).max()
    if err > tol:
        raise FrameError(f"not a dual frame: reconstruction error {err:.3g}")


def change_of_frame(U: Frame, V: Frame) -> np.ndarray:
    """Matrix ``T = V U^+`` mapping ``U x`` to ``V x``.

    ``T[l, k] = <u~_k, v_l>`` with ``u~`` the canonical dual of ``U``.
    """
    if U.dim != V.dim:
        raise ValueError(f"frames live in different dimensions ({U.dim} vs {V.dim})")
    dual = canonical_dual(U)
    return V.vectors.conj() @ dual.vectors.T


# ---------------------------------------------------------------- JSON I/O


def frame_to_dict(frame: Frame) -> dict:
    vecs = frame.vectors
    return {
        "dim": frame.dim,
        "label": frame.label,
        "vectors": np.stack([vecs.real, vecs.imag], axis=-1).tolist(),
    }


def frame_from_dict(data: dict) -> Frame:
    try:
        dim = int(data["dim"])
        raw = np.asarray(data["vectors"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FrameError(f"malformed frame record: {exc}") from exc
    if raw.ndim != 3 or raw.shape[2] != 2:
        raise FrameError("'vectors' must be a list of rows of [re, im] pairs")
    if raw.shape[1] != dim:
        raise FrameError(f"declared dim {dim} but rows have length {raw.shape[1]}")
    return Frame(raw[..., 0] + 1j * raw[..., 1], label=str(data.get("label", "")))


def load_frames(path: str | Path) -> list[Frame]:
    """Read a single frame or a ``{"frames": [...]}`` bundle."""
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict) and "frames" in data:
        return [frame_from_dict(d) for d in data["frames"]]
    return [frame_from_dict(data)]


def save_frames(path: str | Path, frames: Sequence[Frame]) -> None:
    if len(frames) == 1:
        payload = frame_to_dict(frames[0])
    else:
        payload = {"frames": [frame_to_dict(f) for f in frames]}
    Path(path).write_text(json.dumps(payload))
