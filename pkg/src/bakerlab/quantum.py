"""Quantization of the closed/open 3-baker maps on the N-dimensional torus
Hilbert space (hbar = 1/(2 pi N), N divisible by 3).

The closed propagator is F_N^-1 . blockdiag(F_{N/3}, F_{N/3}, F_{N/3}) in the
position basis; the open one replaces the middle block by 0 and is subunitary
with singular values in {0, 1}.  Two discrete Fourier conventions are
supported: integer ("plain") offsets, and half-integer ("antiperiodic")
offsets in both indices, which make the propagators covariant under the
position reversal Q_j -> Q_{N-1-j} and allow an even/odd block reduction.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Scheme",
    "PlanckIndex",
    "dft_matrix",
    "closed_baker_matrix",
    "open_baker_matrix",
    "hole_projector",
    "apply_open_baker",
    "parity_operator",
    "parity_blocks",
]


class Scheme(enum.Enum):
    """Fourier index convention of the quantization."""

    PLAIN = "plain"
    ANTIPERIODIC = "antiperiodic"

    @property
    def offset(self) -> float:
        return 0.5 if self is Scheme.ANTIPERIODIC else 0.0


@dataclass(frozen=True)
class PlanckIndex:
    """Hilbert-space dimension N (inverse Planck constant 2*pi*hbar = 1/N)."""

    N: int
    scheme: Scheme = Scheme.PLAIN

    def __post_init__(self):
        if self.N < 3 or self.N % 3 != 0:
            raise ValueError(
                f"N = {self.N}: the baker quantization needs N divisible by 3"
            )

    @property
    def hbar(self) -> float:
        return 1.0 / (2 * math.pi * self.N)


def dft_matrix(N: int, offset_k: float = 0.0, offset_j: float = 0.0) -> np.ndarray:
    """Discrete Fourier matrix with entries
    exp(-2 pi i (k+offset_k)(j+offset_j)/N) / sqrt(N); unitary for any offsets.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    k = np.arange(N)[:, None] + offset_k
    j = np.arange(N)[None, :] + offset_j
    return np.exp(-2j * np.pi * k * j / N) / np.sqrt(N)


def _block_diag_fourier(P: PlanckIndex, keep_middle: bool) -> np.ndarray:
    o = P.scheme.offset
    n3 = P.N // 3
    f3 = dft_matrix(n3, o, o)
    blk = np.zeros((P.N, P.N), dtype=complex)
    blk[:n3, :n3] = f3
    if keep_middle:
        blk[n3 : 2 * n3, n3 : 2 * n3] = f3
    blk[2 * n3 :, 2 * n3 :] = f3
    return blk


def closed_baker_matrix(P: PlanckIndex) -> np.ndarray:
    """Unitary N x N propagator of the closed 3-baker."""
    o = P.scheme.offset
    fN = dft_matrix(P.N, o, o)
    return fN.conj().T @ _block_diag_fourier(P, keep_middle=True)


def open_baker_matrix(P: PlanckIndex) -> np.ndarray:
    """Subunitary N x N propagator of the open baker.

    Equals the closed propagator times the projector onto the outer position
    strips; the N/3 hole states are in its kernel and the singular values are
    exactly N/3 zeros and 2N/3 ones.
    """
    o = P.scheme.offset
    fN = dft_matrix(P.N, o, o)
    return fN.conj().T @ _block_diag_fourier(P, keep_middle=False)


def hole_projector(N: int) -> np.ndarray:
    """Orthogonal projector onto the outer position strips (complement of the
    hole indices j in [N/3, 2N/3))."""
    keep = np.ones(N)
    keep[N // 3 : 2 * (N // 3)] = 0.0
    return np.diag(keep).astype(complex)


def _fourier_apply(v: np.ndarray, offset: float) -> np.ndarray:
    """F^(o) v via the FFT: conjugation of the plain transform by the
    diagonal phases exp(-2 pi i o j / N), plus a global phase."""
    N = len(v)
    d = np.exp(-2j * np.pi * offset * np.arange(N) / N)
    return np.exp(-2j * np.pi * offset * offset / N) * d * (np.fft.fft(d * v) / np.sqrt(N))


def _fourier_apply_inv(v: np.ndarray, offset: float) -> np.ndarray:
    N = len(v)
    dc = np.exp(2j * np.pi * offset * np.arange(N) / N)
    return np.exp(2j * np.pi * offset * offset / N) * dc * (np.fft.ifft(dc * v) * np.sqrt(N))


def apply_open_baker(P: PlanckIndex, v: np.ndarray) -> np.ndarray:
    """Apply the open propagator to a state in O(N log N).

    Size-N/3 transforms on the outer blocks, zero on the hole block, one
    inverse size-N transform; agrees with the dense matrix product to
    rounding accuracy.
    """
    v = np.asarray(v, dtype=complex)
    if v.shape != (P.N,):
        raise ValueError(f"state dimension {v.shape} does not match N = {P.N}")
    o = P.scheme.offset
    n3 = P.N // 3
    w = np.zeros(P.N, dtype=complex)
    w[:n3] = _fourier_apply(v[:n3], o)
    w[2 * n3 :] = _fourier_apply(v[2 * n3 :], o)
    return _fourier_apply_inv(w, o)


def parity_operator(P: PlanckIndex) -> np.ndarray:
    """Position reversal Q_j -> Q_{N-1-j}; an involution commuting with the
    antiperiodic baker propagators."""
    if P.scheme is not Scheme.ANTIPERIODIC:
        raise ValueError("parity covariance holds for the antiperiodic scheme only")
    return np.eye(P.N)[::-1].copy()


def _parity_bases(N: int) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases of the even/odd subspaces of the position reversal."""
    half = N // 2
    even = np.zeros((N, (N + 1) // 2))
    odd = np.zeros((N, half))
    s = 1 / math.sqrt(2)
    for j in range(half):
        even[j, j] = even[N - 1 - j, j] = s
        odd[j, j] = s
        odd[N - 1 - j, j] = -s
    if N % 2:
        even[half, half] = 1.0
    return even, odd


def parity_blocks(P: PlanckIndex) -> tuple[np.ndarray, np.ndarray]:
    """Open propagator compressed to the even and odd parity subspaces.

    The two blocks have dimensions ceil(N/2) and floor(N/2), and the union of
    their spectra reproduces the full spectrum.
    """
    if P.scheme is not Scheme.ANTIPERIODIC:
        raise ValueError("parity covariance holds for the antiperiodic scheme only")
    C = open_baker_matrix(P)
    even, odd = _parity_bases(P.N)
    return even.T @ C @ even, odd.T @ C @ odd
