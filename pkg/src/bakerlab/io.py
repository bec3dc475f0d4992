"""File formats: CSV exports for spectra, counting curves, covers and the
analytic toy spectrum; JSON for slope fits; a small binary matrix format.

All floats are printed with 17 significant digits so that files round-trip
exactly.  CSV files carry a single timestamped comment line; everything
after it is deterministic for a fixed configuration.
"""

from __future__ import annotations

import json
import struct
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import numpy as np

from .classical import CANTOR_DIMENSION, DimensionEstimate, IntervalCover
from .spectra import CountingCurve, SpectrumRecord, WeylFit
from .walsh import AnalyticWalshSpectrum, core_eigenvalues

__all__ = [
    "write_rows",
    "read_rows",
    "write_matrix_csv",
    "write_matrix_binary",
    "read_matrix_binary",
    "write_spectrum_csv",
    "read_spectrum_csv",
    "write_counting_csv",
    "read_counting_csv",
    "write_weyl_json",
    "write_cover_csv",
    "write_analytic_spectrum_csv",
    "write_walsh_core_json",
]

#: Magic bytes of the binary matrix container.
MATRIX_MAGIC = b"BKRS"
MATRIX_VERSION = 1

_SCHEME_CODES = {"plain": 0, "antiperiodic": 1}
_SCHEME_NAMES = {v: k for k, v in _SCHEME_CODES.items()}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _header_line() -> str:
    return f"# generated: {datetime.now(timezone.utc).isoformat()}\n"


def write_rows(path, columns: list[str], rows) -> None:
    path = Path(path)
    with path.open("w") as fh:
        fh.write(_header_line())
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(str(c) for c in row) + "\n")


def read_rows(path) -> tuple[list[str], list[list[str]]]:
    lines = [
        ln.strip()
        for ln in Path(path).read_text().splitlines()
        if ln.strip() and not ln.startswith("#")
    ]
    if not lines:
        raise ValueError(f"{path}: no data rows")
    header = lines[0].split(",")
    return header, [ln.split(",") for ln in lines[1:]]


def write_matrix_csv(path, mat: np.ndarray) -> None:
    """Dense matrix as rows (row, col, re, im)."""
    mat = np.asarray(mat, dtype=complex)
    rows = (
        (i, j, _fmt(mat[i, j].real), _fmt(mat[i, j].imag))
        for i in range(mat.shape[0])
        for j in range(mat.shape[1])
    )
    write_rows(path, ["row", "col", "re", "im"], rows)


def write_matrix_binary(path, mat: np.ndarray, scheme: str = "plain") -> None:
    """Binary container: magic, version u32, dim u32, scheme u8, then
    little-endian float64 re/im interleaved in row-major order."""
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("expected a square matrix")
    dim = mat.shape[0]
    interleaved = np.empty((dim, dim, 2), dtype="<f8")
    interleaved[..., 0] = mat.real
    interleaved[..., 1] = mat.imag
    with Path(path).open("wb") as fh:
        fh.write(struct.pack("<4sIIB", MATRIX_MAGIC, MATRIX_VERSION, dim,
                             _SCHEME_CODES[scheme]))
        fh.write(interleaved.tobytes())


def read_matrix_binary(path) -> tuple[np.ndarray, str]:
    raw = Path(path).read_bytes()
    head = struct.calcsize("<4sIIB")
    magic, version, dim, scheme_code = struct.unpack("<4sIIB", raw[:head])
    if magic != MATRIX_MAGIC:
        raise ValueError(f"{path}: not a matrix container (bad magic {magic!r})")
    if version != MATRIX_VERSION:
        raise ValueError(f"{path}: unsupported version {version}")
    data = np.frombuffer(raw[head:], dtype="<f8")
    if data.size != 2 * dim * dim:
        raise ValueError(f"{path}: truncated payload")
    data = data.reshape(dim, dim, 2)
    return data[..., 0] + 1j * data[..., 1], _SCHEME_NAMES[scheme_code]


def write_spectrum_csv(path, record: SpectrumRecord) -> None:
    rows = (
        (record.N, record.map_kind, record.scheme, _fmt(v.real), _fmt(v.imag))
        for v in record.eigenvalues
    )
    write_rows(path, ["N", "map_kind", "scheme", "re", "im"], rows)


def read_spectrum_csv(path) -> SpectrumRecord:
    header, rows = read_rows(path)
    if header != ["N", "map_kind", "scheme", "re", "im"]:
        raise ValueError(f"{path}: unexpected spectrum header {header}")
    if not rows:
        raise ValueError(f"{path}: empty spectrum")
    vals = np.array([float(r[3]) + 1j * float(r[4]) for r in rows])
    return SpectrumRecord(
        N=int(rows[0][0]),
        map_kind=rows[0][1],
        scheme=rows[0][2],
        eigenvalues=vals,
        solver_residual=float("nan"),
    )


def write_counting_csv(path, curve: CountingCurve) -> None:
    rows = (
        (curve.N, _fmt(r), int(c), _fmt(s))
        for r, c, s in zip(curve.radii, curve.counts, curve.rescaled)
    )
    write_rows(path, ["N", "r", "count", "rescaled"], rows)


def read_counting_csv(path) -> CountingCurve:
    header, rows = read_rows(path)
    if header != ["N", "r", "count", "rescaled"]:
        raise ValueError(f"{path}: unexpected counting header {header}")
    if not rows:
        raise ValueError(f"{path}: empty counting curve")
    return CountingCurve(
        N=int(rows[0][0]),
        radii=np.array([float(r[1]) for r in rows]),
        counts=np.array([int(r[2]) for r in rows]),
    )


def write_weyl_json(path, fit: WeylFit) -> None:
    payload = {
        "radius": fit.radius,
        "Ns": [n for n, _ in fit.sequence],
        "counts": [c for _, c in fit.sequence],
        "slope": fit.slope,
        "intercept": fit.intercept,
        "rms_residual": fit.rms_residual,
        "target": 0.63093,
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def write_cover_csv(
    path, cover: IntervalCover, estimate: DimensionEstimate | None = None
) -> None:
    """One row per interval (depth, left as exact fraction, width) and, when
    a dimension estimate is given, a final summary row (slope, residual)."""
    width = str(cover.width)
    rows = [(cover.depth, str(Fraction(a)), width) for a in cover.lefts]
    if estimate is not None:
        rows.append(("summary", _fmt(estimate.value), _fmt(estimate.residual)))
    write_rows(path, ["depth", "left", "width"], rows)


def write_analytic_spectrum_csv(path, spectrum: AnalyticWalshSpectrum) -> None:
    """Lattice rows (k, re, im, multiplicity, radius, p, j); the pure
    lambda_+/- entries are marked with p = -1."""
    rows = []
    for e in spectrum.entries:
        p_out = -1 if e.p in (0, spectrum.k) else e.p
        rows.append(
            (
                spectrum.k,
                _fmt(e.value.real),
                _fmt(e.value.imag),
                e.multiplicity,
                _fmt(abs(e.value)),
                p_out,
                e.j,
            )
        )
    write_rows(path, ["k", "re", "im", "multiplicity", "radius", "p", "j"], rows)


def write_walsh_core_json(path) -> None:
    """Nonzero core eigenvalues and the derived reference radii, consumed by
    the figure scripts for circle overlays."""
    lp, lm = core_eigenvalues()
    payload = {
        "lambda_plus": {"re": lp.real, "im": lp.imag, "modulus": abs(lp)},
        "lambda_minus": {"re": lm.real, "im": lm.imag, "modulus": abs(lm)},
        "geometric_mean_modulus": (abs(lp) * abs(lm)) ** 0.5,
        "counting_exponent": CANTOR_DIMENSION,
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")
