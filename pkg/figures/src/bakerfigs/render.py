"""Figure rendering from bakerlab exports.

Read-only consumers of the CSV/JSON files written by the ``bakerlab`` CLI:
nothing is recomputed here, the scripts only plot.  Output is PNG at a fixed
150 dpi.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "FigureInputError",
    "render_weyl_loglog",
    "render_spectrum_scatter",
    "render_shape_collapse",
    "render_walsh_circles",
]

DPI = 150

#: Reference counting exponent drawn in the log-log figure.
REFERENCE_SLOPE = 0.63093


class FigureInputError(ValueError):
    """Missing or malformed input file."""


def _read_csv(path) -> tuple[list[str], list[list[str]]]:
    path = Path(path)
    if not path.is_file():
        raise FigureInputError(f"{path}: no such file")
    lines = [
        ln.strip()
        for ln in path.read_text().splitlines()
        if ln.strip() and not ln.startswith("#")
    ]
    if len(lines) < 2:
        raise FigureInputError(f"{path}: no data rows")
    return lines[0].split(","), [ln.split(",") for ln in lines[1:]]


def _load_json(path) -> dict:
    path = Path(path)
    if not path.is_file():
        raise FigureInputError(f"{path}: no such file")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FigureInputError(f"{path}: not valid JSON ({exc})")


def load_spectrum_csv(path) -> tuple[int, str, np.ndarray]:
    header, rows = _read_csv(path)
    if header != ["N", "map_kind", "scheme", "re", "im"]:
        raise FigureInputError(f"{path}: unexpected columns {header}")
    vals = np.array([float(r[3]) + 1j * float(r[4]) for r in rows])
    return int(rows[0][0]), rows[0][1], vals


def load_counting_csv(path) -> tuple[int, np.ndarray, np.ndarray, np.ndarray]:
    header, rows = _read_csv(path)
    if header != ["N", "r", "count", "rescaled"]:
        raise FigureInputError(f"{path}: unexpected columns {header}")
    radii = np.array([float(r[1]) for r in rows])
    counts = np.array([int(r[2]) for r in rows])
    rescaled = np.array([float(r[3]) for r in rows])
    return int(rows[0][0]), radii, counts, rescaled


def load_weyl_json(path) -> dict:
    payload = _load_json(path)
    for key in ("radius", "Ns", "counts", "slope"):
        if key not in payload:
            raise FigureInputError(f"{path}: missing field {key!r}")
    if not payload["Ns"] or not payload["counts"]:
        raise FigureInputError(f"{path}: empty fit sequence")
    return payload


def load_walsh_core_json(path) -> dict:
    payload = _load_json(path)
    for key in ("lambda_plus", "lambda_minus", "geometric_mean_modulus"):
        if key not in payload:
            raise FigureInputError(f"{path}: missing field {key!r}")
    return payload


def _save(fig, out_path) -> Path:
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, dpi=DPI)
    plt.close(fig)
    return out_path


def render_weyl_loglog(fit_paths, out_path) -> Path:
    """Counting data n(N, r) against N on log-log axes, one marker set per
    fit radius, with a dashed reference line of slope 0.63093."""
    if not fit_paths:
        raise FigureInputError("no fit files given")
    fits = [load_weyl_json(p) for p in fit_paths]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for fit in fits:
        ns = np.array(fit["Ns"], dtype=float)
        counts = np.array(fit["counts"], dtype=float)
        ax.loglog(ns, counts, "o-", ms=5,
                  label=f"r = {fit['radius']:g} (slope {fit['slope']:.3f})")
    anchor = fits[0]
    n0, c0 = anchor["Ns"][0], anchor["counts"][0]
    ns = np.array(sorted({n for f in fits for n in f["Ns"]}), dtype=float)
    ax.loglog(ns, c0 * (ns / n0) ** REFERENCE_SLOPE, "k--", lw=2,
              label=f"slope {REFERENCE_SLOPE}")
    ax.set_xlabel("N")
    ax.set_ylabel("n(N, r)")
    ax.legend(fontsize=8)
    ax.set_title("Resonance counting vs dimension")
    return _save(fig, out_path)


def render_spectrum_scatter(spectrum_paths, out_path) -> Path:
    """Eigenvalues in the complex plane with the unit circle for scale."""
    if not spectrum_paths:
        raise FigureInputError("no spectrum files given")
    fig, ax = plt.subplots(figsize=(5, 5))
    theta = np.linspace(0, 2 * np.pi, 256)
    ax.plot(np.cos(theta), np.sin(theta), "k-", lw=0.8)
    for path in spectrum_paths:
        N, kind, vals = load_spectrum_csv(path)
        ax.plot(vals.real, vals.imag, ".", ms=3, alpha=0.7, label=f"{kind} N={N}")
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.legend(fontsize=8, loc="upper right")
    ax.set_title("Spectrum")
    return _save(fig, out_path)


def render_shape_collapse(counting_paths, out_path) -> Path:
    """Rescaled counting curves n(N, r) / N^0.63093 overlaid on one grid."""
    if not counting_paths:
        raise FigureInputError("no counting files given")
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    for path in counting_paths:
        N, radii, counts, rescaled = load_counting_csv(path)
        axes[0].plot(radii, counts, lw=1, label=f"N={N}")
        axes[1].plot(radii, rescaled, lw=1, label=f"N={N}")
    axes[0].set_xlabel("r")
    axes[0].set_ylabel("n(N, r)")
    axes[1].set_xlabel("r")
    axes[1].set_ylabel("rescaled")
    axes[1].legend(fontsize=8)
    fig.suptitle("Counting curves and rescaled collapse")
    return _save(fig, out_path)


def render_walsh_circles(spectrum_paths, core_path, out_path) -> tuple[Path, list[float]]:
    """Toy-model spectrum with the four reference circles at radii 1,
    |lambda_+|, sqrt(|lambda_+ lambda_-|), |lambda_-|, all read from the
    exported core file.  Returns the output path and the radii drawn."""
    if not spectrum_paths:
        raise FigureInputError("no spectrum files given")
    core = load_walsh_core_json(core_path)
    radii = [
        1.0,
        float(core["lambda_plus"]["modulus"]),
        float(core["geometric_mean_modulus"]),
        float(core["lambda_minus"]["modulus"]),
    ]
    fig, ax = plt.subplots(figsize=(5, 5))
    theta = np.linspace(0, 2 * np.pi, 256)
    for rho in radii:
        ax.plot(rho * np.cos(theta), rho * np.sin(theta), "k-", lw=0.8)
    markers = ["o", "x", "+", "s", "d"]
    for i, path in enumerate(spectrum_paths):
        N, _, vals = load_spectrum_csv(path)
        ax.plot(vals.real, vals.imag, markers[i % len(markers)], ms=4,
                ls="none", alpha=0.8, label=f"N={N}")
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.legend(fontsize=8, loc="upper right")
    ax.set_title("Toy-model spectrum with reference circles")
    return _save(fig, out_path), radii
