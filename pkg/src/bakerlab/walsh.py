"""Walsh-quantized toy model of the open baker.

For N = 3^k the Hilbert space factorizes into k qutrits indexed by the
ternary digits of position, j/N = 0.eps_0 eps_1 ... eps_{k-1}.  The toy
propagator acts on product states as a digit shift with the 3x3 core
M = F_3^-1 pi_02 applied to the outgoing factor (pi_02 projects out the
middle basis vector), so its k-th power is M tensored k times and the full
nonzero spectrum is an explicit lattice built from the two nonzero
eigenvalues lambda_+/- of M.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from math import comb, gcd

import numpy as np

from .quantum import dft_matrix

__all__ = [
    "OMEGA",
    "WalshSpectrumMismatchError",
    "WalshEigenvalue",
    "AnalyticWalshSpectrum",
    "core_matrix",
    "core_eigenvalues",
    "walsh_matrix",
    "toy_matrix",
    "toy_apply",
    "power_k_factorization_check",
    "derived_multiplicities",
    "analytic_spectrum",
    "radial_distribution",
]

#: Primitive cube root of unity.
OMEGA = cmath.exp(2j * cmath.pi / 3)

#: Largest k diagonalized densely when validating multiplicities.
MEASURED_K_MAX = 7


class WalshSpectrumMismatchError(RuntimeError):
    """Numerical spectrum does not fit the analytic eigenvalue lattice
    (signals a branch-choice or construction error)."""


def core_matrix() -> np.ndarray:
    """The 3x3 qutrit core M = F_3^-1 . diag(1, 0, 1); kills e_1, rank 2."""
    f3 = dft_matrix(3)
    return f3.conj().T @ np.diag([1.0, 0.0, 1.0]).astype(complex)


@functools.cache
def core_eigenvalues() -> tuple[complex, complex]:
    """Nonzero eigenvalues (lambda_+, lambda_-) of the core, ordered by
    decreasing modulus (|lambda_+| ~ 0.8443, |lambda_-| ~ 0.6838)."""
    vals = sorted(np.linalg.eigvals(core_matrix()), key=lambda z: -abs(z))
    lp, lm = complex(vals[0]), complex(vals[1])
    return lp, lm


def _digit_reversal(k: int) -> np.ndarray:
    """Index permutation reversing the ternary digit string of 0..3^k-1."""
    idx = np.arange(3**k)
    rev = np.zeros_like(idx)
    for level in range(k):
        rev += ((idx // 3 ** (k - 1 - level)) % 3) * 3**level
    return rev


def walsh_matrix(k: int) -> np.ndarray:
    """Walsh transform on k qutrits: factor-wise size-3 Fourier transforms
    composed with the digit reversal, W (v_0 x ... x v_{k-1}) =
    F_3 v_{k-1} x ... x F_3 v_0.  Unitary."""
    if k < 1:
        raise ValueError("k must be >= 1")
    f3 = dft_matrix(3)
    kron = np.array([[1.0]], dtype=complex)
    for _ in range(k):
        kron = np.kron(kron, f3)
    return kron[_digit_reversal(k), :]


def toy_matrix(N: int) -> np.ndarray:
    """Toy propagator for N divisible by 3.

    Column m is zero for m in the middle third; for m in the first third it
    has entries 1/sqrt(3) in rows 3m+r, r = 0,1,2; for m in the last third,
    entries omega^(2r)/sqrt(3) in rows 3(m - 2N/3)+r.  Every nonzero entry
    has modulus 1/sqrt(3).  For N = 3^k this equals
    W_N^-1 . blockdiag(W_{N/3}, 0, W_{N/3}).
    """
    if N < 3 or N % 3 != 0:
        raise ValueError(f"N = {N}: the toy model needs N divisible by 3")
    C = np.zeros((N, N), dtype=complex)
    n3 = N // 3
    amp = 1 / math.sqrt(3)
    phases = OMEGA ** (2 * np.arange(3))
    for m in range(n3):
        C[3 * m : 3 * m + 3, m] = amp
    for m in range(2 * n3, N):
        C[3 * (m - 2 * n3) : 3 * (m - 2 * n3) + 3, m] = amp * phases
    return C


def _qutrit_count(dim: int) -> int:
    k = round(math.log(dim, 3))
    if 3**k != dim:
        raise ValueError(f"dimension {dim} is not a power of 3")
    return k


def toy_apply(state: np.ndarray) -> np.ndarray:
    """Apply the toy propagator to a 3^k state by the tensor action: cyclic
    digit shift with the core M on the outgoing factor.  O(3^k) arithmetic."""
    state = np.asarray(state, dtype=complex)
    k = _qutrit_count(state.shape[0])
    if k == 0:
        raise ValueError("state must have at least one qutrit factor")
    out = core_matrix() @ state.reshape(3, 3 ** (k - 1))
    return out.T.reshape(-1)


def power_k_factorization_check(k: int, tol: float = 1e-10) -> bool:
    """True iff the k-th power of the 3^k toy propagator equals the k-fold
    tensor power of the core, entrywise to tol (dense check)."""
    if not 1 <= k <= MEASURED_K_MAX:
        raise ValueError(f"dense check supported for 1 <= k <= {MEASURED_K_MAX}")
    Ck = np.linalg.matrix_power(toy_matrix(3**k), k)
    M = core_matrix()
    Mk = np.array([[1.0]], dtype=complex)
    for _ in range(k):
        Mk = np.kron(Mk, M)
    return bool(np.max(np.abs(Ck - Mk)) <= tol)


@dataclass(frozen=True)
class WalshEigenvalue:
    """One lattice point of the nonzero toy spectrum.

    value = exp(2 pi i j / k) * lambda_+^(1-p/k) * lambda_-^(p/k) with
    principal-branch logarithms; p = 0 and p = k are the pure lambda_+/-
    points (j = 0 there).
    """

    value: complex
    multiplicity: int
    p: int
    j: int


@dataclass(frozen=True)
class AnalyticWalshSpectrum:
    """Nonzero eigenvalue lattice with multiplicities, plus the count of the
    zero eigenvalue; nonzero multiplicities sum to 2^k, the zero count is
    3^k - 2^k."""

    k: int
    entries: tuple[WalshEigenvalue, ...]
    zero_multiplicity: int

    def __post_init__(self):
        nonzero = sum(e.multiplicity for e in self.entries)
        if nonzero != 2**self.k:
            raise ValueError(
                f"nonzero multiplicities sum to {nonzero}, expected {2**self.k}"
            )
        if nonzero + self.zero_multiplicity != 3**self.k:
            raise ValueError("multiplicities do not fill the space")

    def values(self) -> np.ndarray:
        return np.array([e.value for e in self.entries])

    def expanded_values(self) -> np.ndarray:
        """All nonzero eigenvalues repeated by multiplicity (length 2^k)."""
        return np.concatenate(
            [np.full(e.multiplicity, e.value) for e in self.entries]
        )


def lattice_value(k: int, p: int, j: int) -> complex:
    """Eigenvalue at lattice point (p, j), principal branches."""
    lp, lm = core_eigenvalues()
    return cmath.exp(
        (1 - p / k) * cmath.log(lp) + (p / k) * cmath.log(lm) + 2j * cmath.pi * j / k
    )


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    res, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    if m > 1:
        res = -res
    return res


def _primitive_orbit_count(length: int, ones: int) -> int:
    """Number of primitive (aperiodic) cyclic orbits of binary strings with
    the given length and number of ones."""
    g = gcd(length, ones) if ones else length
    total = sum(
        _mobius(d) * comb(length // d, ones // d)
        for d in range(1, g + 1)
        if g % d == 0
    )
    return total // length


def derived_multiplicities(k: int) -> dict[tuple[int, int], int]:
    """Exact lattice multiplicities from the tensor structure.

    The k-th power of the toy propagator is diagonal on products of core
    eigenvectors, and the propagator itself permutes those products
    cyclically by digit shift.  A primitive cyclic orbit of length l (l | k)
    whose period carries m = p*l/k minus-factors contributes the l-th roots
    of lambda_+^(l-m) lambda_-^m, i.e. one eigenvalue at every lattice point
    (p, j) with j a multiple of k/l.  Summed over j this gives the binomial
    count C(k, p) per radius.
    """
    mult: dict[tuple[int, int], int] = {}
    for p in range(k + 1):
        for length in range(1, k + 1):
            if k % length or (p * length) % k:
                continue
            orbits = _primitive_orbit_count(length, p * length // k)
            if orbits == 0:
                continue
            # only length 1 survives for p in {0, k}, landing on j = 0
            step = k // length
            for jp in range(length):
                key = (p, jp * step)
                mult[key] = mult.get(key, 0) + orbits
    return mult


@functools.cache
def _toy_eigenvalues(k: int) -> np.ndarray:
    return np.linalg.eigvals(toy_matrix(3**k))


def _measured_multiplicities(
    k: int, eigenvalues: np.ndarray, match_tol: float, zero_tol: float
) -> tuple[dict[tuple[int, int], int], int]:
    """Count numerically computed eigenvalues per lattice point; loud failure
    when any nonzero eigenvalue sits farther than match_tol from the
    lattice."""
    points = [(p, j) for p in range(k + 1) for j in (range(k) if 0 < p < k else (0,))]
    values = np.array([lattice_value(k, p, j) for p, j in points])
    nonzero = eigenvalues[np.abs(eigenvalues) > zero_tol]
    if len(nonzero) != 2**k:
        raise WalshSpectrumMismatchError(
            f"k={k}: found {len(nonzero)} eigenvalues above {zero_tol}, expected {2**k}"
        )
    dists = np.abs(nonzero[:, None] - values[None, :])
    nearest = np.argmin(dists, axis=1)
    worst = float(dists[np.arange(len(nonzero)), nearest].max())
    if worst > match_tol:
        raise WalshSpectrumMismatchError(
            f"k={k}: eigenvalue {worst:.3e} away from the analytic lattice "
            f"(tolerance {match_tol:.0e}); check the branch convention"
        )
    mult: dict[tuple[int, int], int] = {}
    for idx in nearest:
        mult[points[idx]] = mult.get(points[idx], 0) + 1
    return mult, len(eigenvalues) - len(nonzero)


def analytic_spectrum(
    k: int,
    multiplicities: str = "auto",
    eigenvalues: np.ndarray | None = None,
    match_tol: float = 1e-7,
    zero_tol: float = 1e-8,
) -> AnalyticWalshSpectrum:
    """Exact nonzero spectrum of the 3^k toy propagator with multiplicities.

    multiplicities:
      "measured" -- counted from a dense diagonalization (or the supplied
                    eigenvalues), raising WalshSpectrumMismatchError if the
                    numerical spectrum does not fit the lattice;
      "derived"  -- exact combinatorial counts from the tensor structure;
      "auto"     -- measured up to k = 7, derived beyond.

    Both routes agree wherever dense diagonalization is feasible (this is
    asserted in the test suite).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if multiplicities == "auto":
        multiplicities = "measured" if k <= MEASURED_K_MAX and 3**k < 10**4 else "derived"
    if multiplicities == "measured":
        if eigenvalues is None:
            eigenvalues = _toy_eigenvalues(k)
        mult, zero_count = _measured_multiplicities(
            k, np.asarray(eigenvalues), match_tol, zero_tol
        )
    elif multiplicities == "derived":
        mult = derived_multiplicities(k)
        zero_count = 3**k - 2**k
    else:
        raise ValueError(f"unknown multiplicity mode {multiplicities!r}")
    entries = tuple(
        WalshEigenvalue(lattice_value(k, p, j), m, p, j)
        for (p, j), m in sorted(mult.items())
    )
    return AnalyticWalshSpectrum(k, entries, zero_count)


def radial_distribution(
    k: int, multiplicities: str = "auto"
) -> list[tuple[float, float]]:
    """Multiplicity-weighted radial distribution of the nonzero spectrum,
    normalized by 2^k.

    One (radius, weight) row per lattice radius
    |lambda_+|^(1-p/k) |lambda_-|^(p/k), p = 0..k, radii decreasing; the
    weights sum to 1 and concentrate at sqrt(|lambda_+ lambda_-|) as k grows.
    """
    spec = analytic_spectrum(k, multiplicities=multiplicities)
    lp, lm = core_eigenvalues()
    weight_per_p: dict[int, int] = {}
    for e in spec.entries:
        weight_per_p[e.p] = weight_per_p.get(e.p, 0) + e.multiplicity
    return [
        (abs(lp) ** (1 - p / k) * abs(lm) ** (p / k), weight_per_p.get(p, 0) / 2**k)
        for p in range(k + 1)
    ]
