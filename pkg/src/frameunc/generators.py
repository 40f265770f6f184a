"""Constructors for the frame families used throughout the package."""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.linalg import block_diag

from .frames import Frame

__all__ = [
    "kronecker_basis",
    "fourier_basis",
    "mub_pair",
    "random_onb",
    "random_onb_pair",
    "random_frame",
    "bmub",
    "mdct_basis",
    "mercedes",
    "tight_frame",
    "TIGHT_FRAMES",
]

TIGHT_FRAMES = ("mercedes", "union2onb", "harmonic")


def kronecker_basis(n: int) -> Frame:
    if n < 1:
        raise ValueError("dimension must be positive")
    return Frame(np.eye(n), label=f"kronecker{n}")


def _dft_rows(n: int) -> np.ndarray:
    idx = np.arange(n)
    return np.exp(2j * np.pi * np.outer(idx, idx) / n) / np.sqrt(n)


def fourier_basis(n: int) -> Frame:
    """Rows ``(v_l)_n = exp(2 pi i l n / N) / sqrt(N)``."""
    if n < 1:
        raise ValueError("dimension must be positive")
    return Frame(_dft_rows(n), label=f"fourier{n}")


def mub_pair(n: int) -> tuple[Frame, Frame]:
    return kronecker_basis(n), fourier_basis(n)


def _fix_signs(basis: np.ndarray) -> np.ndarray:
    # largest-magnitude entry of each row made real-positive
    rows = np.arange(basis.shape[0])
    pivot = basis[rows, np.argmax(np.abs(basis), axis=1)]
    return basis * (np.abs(pivot) / pivot)[:, None]


def random_onb(n: int, rng: np.random.Generator) -> np.ndarray:
    """Eigenvectors (as rows) of a symmetrized standard Gaussian matrix."""
    g = rng.standard_normal((n, n))
    _, vec = np.linalg.eigh((g + g.T) / 2)
    return _fix_signs(vec.T)


def random_onb_pair(n: int, seed: int) -> tuple[Frame, Frame]:
    """Two independent random real orthonormal bases of ``R^n``."""
    if n < 2:
        raise ValueError("random bases need n >= 2")
    rng = np.random.default_rng(seed)
    u = random_onb(n, rng)
    v = random_onb(n, rng)
    return (
        Frame(u, label=f"random-onb{n}-s{seed}-a"),
        Frame(v, label=f"random-onb{n}-s{seed}-b"),
    )


def random_frame(n: int, m: int, seed: int) -> Frame:
    """``m`` i.i.d. complex Gaussian vectors in ``C^n`` (generically non-tight)."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    return Frame(z / np.sqrt(2), label=f"random-frame{m}x{n}-s{seed}")


def bmub(block_dims: Sequence[int]) -> tuple[Frame, Frame]:
    """Blockwise Kronecker/Fourier pair on a direct sum of coordinate blocks."""
    dims = [int(d) for d in block_dims]
    if not dims:
        raise ValueError("block list is empty")
    if any(d < 1 for d in dims):
        raise ValueError("block dimensions must be positive")
    n = sum(dims)
    u = np.eye(n)
    v = block_diag(*[_dft_rows(d) for d in dims])
    tag = ",".join(map(str, dims))
    return Frame(u, label=f"bmub[{tag}]-kronecker"), Frame(v, label=f"bmub[{tag}]-fourier")


def mdct_basis(n: int, window_len: int) -> Frame:
    """Periodic MDCT basis of ``R^n`` with a sine window.

    ``n`` must be ``L * window_len / 2`` with ``L >= 2``.  Atom ``(j, m)``
    is supported on ``[j*h, j*h + window_len)`` modulo ``n`` with hop
    ``h = window_len / 2``.
    """
    if window_len < 2 or window_len % 2:
        raise ValueError("window length must be a positive even integer")
    hop = window_len // 2
    if n % hop or n // hop < 2:
        raise ValueError(f"n={n} must be a multiple L*{hop} of the hop size with L >= 2")
    t = np.arange(window_len)
    window = np.sin(np.pi * (t + 0.5) / window_len)
    freqs = np.arange(hop)
    kernel = np.sqrt(2.0 / hop) * np.cos(
        np.pi / hop * np.outer(freqs + 0.5, t + 0.5 + hop / 2)
    )
    atoms = kernel * window
    basis = np.zeros((n, n))
    for j in range(n // hop):
        cols = (j * hop + t) % n
        rows = slice(j * hop, (j + 1) * hop)
        np.add.at(basis[rows], (slice(None), cols), atoms)
    return Frame(basis, label=f"mdct{n}-w{window_len}")


def mercedes(angle: float = 0.0) -> Frame:
    """Three unit vectors of ``R^2`` at 120 degrees, rotated by ``angle``."""
    base = np.array([[0.0, 1.0], [np.sqrt(3) / 2, -0.5], [-np.sqrt(3) / 2, -0.5]])
    c, s = np.cos(angle), np.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    label = "mercedes" if angle == 0 else f"mercedes-rot{angle:.6g}"
    return Frame(base @ rot.T, label=label)


def tight_frame(name: str, n: int = 2, m: int | None = None) -> Frame:
    """Catalogue of tight frames.

    ``"mercedes"`` (``n`` must be 2), ``"union2onb"`` (Kronecker stacked on
    Fourier, bound 2) and ``"harmonic"`` (``m > n`` unit-norm rows of the
    ``m``-point DFT restricted to ``n`` coordinates, bound ``m / n``).
    """
    if name == "mercedes":
        if n != 2:
            raise ValueError("the Mercedes-Benz frame lives in dimension 2")
        return mercedes()
    if name == "union2onb":
        vecs = np.vstack([np.eye(n), _dft_rows(n)])
        return Frame(vecs, label=f"union2onb{n}")
    if name == "harmonic":
        m = 2 * n if m is None else m
        if m <= n:
            raise ValueError("harmonic frame needs m > n")
        k = np.arange(m)[:, None]
        j = np.arange(n)[None, :]
        return Frame(np.exp(2j * np.pi * k * j / m) / np.sqrt(n), label=f"harmonic{m}x{n}")
    raise ValueError(f"unknown tight frame {name!r}; choose from {TIGHT_FRAMES}")
