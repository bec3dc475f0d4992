"""Shared helpers and reference sequences for the test suite."""

from __future__ import annotations

import numpy as np

from bakerlab.spectra import CountingCurve

#: Geometric dimension sequence used by the counting/collapse checks.
WEYL_SEQUENCE = [27 * 3**j for j in range(5)]

#: Dimensions exercised by the quantization checks.
BAKER_DIMENSIONS = [9, 27, 81, 243, 729, 2187]


def optimal_matching_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max pairwise distance under the optimal bijection of two equal-size
    complex multisets (Hungarian assignment)."""
    from scipy.optimize import linear_sum_assignment

    assert len(a) == len(b)
    cost = np.abs(np.asarray(a)[:, None] - np.asarray(b)[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def synthetic_curve(N: int, count: int, r: float = 0.5) -> CountingCurve:
    return CountingCurve(N, np.array([r]), np.array([count]))
