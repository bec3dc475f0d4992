"""Shared fixtures: the expensive dense spectra are computed once per session."""

from __future__ import annotations

import pytest

from bakerlab.quantum import PlanckIndex, Scheme, open_baker_matrix
from bakerlab.spectra import full_spectrum
from bakerlab.walsh import toy_matrix

from support import WEYL_SEQUENCE


@pytest.fixture(scope="session")
def open_baker_records():
    """Plain-scheme open-baker spectra along N = 27 * 3^j, j = 0..4."""
    records = {}
    for N in WEYL_SEQUENCE:
        mat = open_baker_matrix(PlanckIndex(N, Scheme.PLAIN))
        records[N] = full_spectrum(mat, N=N, map_kind="open-baker", scheme="plain")
    return records


@pytest.fixture(scope="session")
def toy_records():
    """Toy-model spectra for k = 2..7 (N = 9..2187)."""
    records = {}
    for k in range(2, 8):
        N = 3**k
        records[k] = full_spectrum(toy_matrix(N), N=N, map_kind="walsh", scheme="plain")
    return records
