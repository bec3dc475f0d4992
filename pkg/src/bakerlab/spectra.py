"""Dense non-Hermitian spectra of the quantized maps, resonance counting
n(N, r), power-law slope fits against the trapped-set dimension, and the
rescaled shape-function collapse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .classical import CANTOR_DIMENSION

__all__ = [
    "NonConvergenceError",
    "InsufficientDataError",
    "SpectrumRecord",
    "CountingCurve",
    "WeylFit",
    "ShapeCollapse",
    "default_radius_grid",
    "full_spectrum",
    "counting_function",
    "weyl_fit",
    "shape_function",
    "kernel_dimension",
]


class NonConvergenceError(RuntimeError):
    """The dense eigensolver exhausted its iteration budget."""


class InsufficientDataError(ValueError):
    """Too few usable counting curves for a slope fit."""


@dataclass(frozen=True)
class SpectrumRecord:
    """Eigenvalues of one quantized map at one N, solver order sorted by
    decreasing modulus.  For parity blocks len(eigenvalues) is the block
    dimension, not N."""

    N: int
    map_kind: str
    scheme: str
    eigenvalues: np.ndarray
    solver_residual: float

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.eigenvalues)


@dataclass(frozen=True)
class CountingCurve:
    """Samples of r -> n(N, r) = #{eigenvalues with |lambda| >= r}."""

    N: int
    radii: np.ndarray
    counts: np.ndarray

    @property
    def rescaled(self) -> np.ndarray:
        """Counts divided by N^(log2/log3)."""
        return self.counts * self.N ** (-CANTOR_DIMENSION)

    def count_at(self, r: float, tol: float = 1e-9) -> int:
        idx = int(np.argmin(np.abs(self.radii - r)))
        if abs(self.radii[idx] - r) > tol:
            raise ValueError(f"radius {r} was not sampled on this curve")
        return int(self.counts[idx])


@dataclass(frozen=True)
class WeylFit:
    """Least-squares slope of log n(N, r) against log N at fixed radius."""

    radius: float
    sequence: tuple[tuple[int, int], ...]
    slope: float
    intercept: float
    rms_residual: float


@dataclass(frozen=True)
class ShapeCollapse:
    """Rescaled counting curves on a common grid plus the sup-distances of
    consecutive curves over the comparison window."""

    samples: tuple[tuple[int, float, float], ...]
    consecutive_distances: tuple[tuple[int, int, float], ...]
    window: tuple[float, float]


def default_radius_grid(steps: int = 200) -> np.ndarray:
    """Uniform samples of (0, 1]; 200 points resolve the toy-model step near
    0.76 while keeping exports small."""
    return np.linspace(0.0, 1.0, steps + 1)[1:]


def full_spectrum(
    mat: np.ndarray,
    N: int | None = None,
    map_kind: str = "custom",
    scheme: str = "plain",
    residual_samples: int = 16,
) -> SpectrumRecord:
    """All eigenvalues of a dense complex matrix (LAPACK balancing +
    Hessenberg + shifted QR, backward stable).

    The residual reports max ||A v - lambda v|| / ||A||_F over the
    residual_samples largest-modulus eigenpairs.
    """
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:
        raise ValueError("expected a square matrix of dimension >= 1")
    if not np.all(np.isfinite(mat.view(float))):
        raise ValueError("matrix has non-finite entries")
    try:
        vals, vecs = scipy.linalg.eig(mat, check_finite=False)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise NonConvergenceError(str(exc)) from exc
    order = np.lexsort((-vals.imag, -vals.real, -np.abs(vals)))
    vals, vecs = vals[order], vecs[:, order]
    norm = np.linalg.norm(mat)
    residual = 0.0
    if norm > 0:
        for i in range(min(residual_samples, len(vals))):
            v = vecs[:, i]
            residual = max(residual, np.linalg.norm(mat @ v - vals[i] * v) / norm)
    return SpectrumRecord(
        N=N if N is not None else mat.shape[0],
        map_kind=map_kind,
        scheme=scheme,
        eigenvalues=vals,
        solver_residual=float(residual),
    )


def counting_function(record: SpectrumRecord, radii) -> CountingCurve:
    """Exact counts of eigenvalues with |lambda| >= r (closed inequality),
    for radii sorted ascending in (0, 1]."""
    radii = np.asarray(radii, dtype=float)
    if radii.ndim != 1 or len(radii) == 0:
        raise ValueError("radii must be a nonempty 1-d sequence")
    if np.any(np.diff(radii) < 0) or radii[0] <= 0 or radii[-1] > 1:
        raise ValueError("radii must be ascending and lie in (0, 1]")
    mods = np.sort(record.moduli)
    counts = len(mods) - np.searchsorted(mods, radii, side="left")
    return CountingCurve(record.N, radii, counts.astype(int))


def weyl_fit(curves: list[CountingCurve], r: float) -> WeylFit:
    """Ordinary least squares of log n(N, r) against log N.

    Uses only curves with n(N, r) >= 1 and needs at least three of them; the
    slope is the measured counting exponent (log2/log3 ~ 0.63093 for the
    open baker along geometric sequences).
    """
    seq = []
    for curve in sorted(curves, key=lambda c: c.N):
        count = curve.count_at(r)
        if count >= 1:
            seq.append((curve.N, count))
    if len(seq) < 3:
        raise InsufficientDataError(
            f"only {len(seq)} curves with n(N, {r}) >= 1; need at least 3"
        )
    Ns = [n for n, _ in seq]
    if len(set(Ns)) != len(Ns):
        raise ValueError("N values must be distinct")
    xs = np.log(np.array(Ns, dtype=float))
    ys = np.log(np.array([c for _, c in seq], dtype=float))
    slope, intercept = np.polyfit(xs, ys, 1)
    rms = float(np.sqrt(np.mean((ys - (slope * xs + intercept)) ** 2)))
    return WeylFit(float(r), tuple(seq), float(slope), float(intercept), rms)


def shape_function(
    curves: list[CountingCurve], r_lo: float = 0.3, r_hi: float = 0.9
) -> ShapeCollapse:
    """Rescaled curves c_N(r) = n(N, r) N^(-log2/log3) on the common grid.

    The companion metric is the sup-distance over [r_lo, r_hi] between
    rescaled curves of consecutive N; along a geometric N-sequence these
    distances shrink as the curves superpose.
    """
    if len(curves) < 2:
        raise ValueError("need at least 2 curves")
    curves = sorted(curves, key=lambda c: c.N)
    grid = curves[0].radii
    for c in curves[1:]:
        if len(c.radii) != len(grid) or not np.allclose(c.radii, grid):
            raise ValueError("curves must share a common radius grid")
    samples = tuple(
        (c.N, float(r), float(v)) for c in curves for r, v in zip(c.radii, c.rescaled)
    )
    window = (grid >= r_lo) & (grid <= r_hi)
    dists = []
    for a, b in zip(curves[:-1], curves[1:]):
        sup = float(np.max(np.abs(b.rescaled[window] - a.rescaled[window])))
        dists.append((a.N, b.N, sup))
    return ShapeCollapse(samples, tuple(dists), (r_lo, r_hi))


def kernel_dimension(record: SpectrumRecord, tol: float) -> int:
    """Number of eigenvalues with modulus below tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return int(np.sum(record.moduli < tol))
