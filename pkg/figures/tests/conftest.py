"""Fixture data comes from the real primary CLI, invoked as a subprocess, so
these tests consume exactly the published file formats."""

import subprocess
import sys

import pytest


def run_bakerlab(*args) -> None:
    proc = subprocess.run(
        [sys.executable, "-m", "bakerlab.cli", *args],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr


@pytest.fixture(scope="session")
def primary_outputs(tmp_path_factory):
    """Small walsh + open-baker runs: spectra, counting curves, fits, core."""
    root = tmp_path_factory.mktemp("primary")
    walsh = root / "walsh"
    weyl = root / "weyl"
    run_bakerlab("spectrum", "--map", "walsh", "--geometric", "3:3",
                 "--out", str(walsh))
    run_bakerlab("weyl", "--map", "open-baker", "--geometric", "3:3",
                 "--out", str(weyl))
    return {
        "walsh_spectra": sorted(walsh.glob("spectrum_walsh_plain_N*.csv")),
        "walsh_core": walsh / "walsh_core.json",
        "counting": sorted(weyl.glob("counting_open-baker_plain_N*.csv")),
        "fits": sorted(weyl.glob("weyl_fit_r*.json")),
    }
