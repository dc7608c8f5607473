"""The numba and numpy kernel paths must agree to round-off."""

import os
import subprocess
import sys

import numpy as np
import pytest

from mtsine import _kernels

pytestmark = pytest.mark.skipif(
    not _kernels.NUMBA_ENABLED, reason="numba path disabled; nothing to compare"
)

rng = np.random.default_rng(91)


def _transform(m):
    x = rng.standard_normal(m // 4)
    return np.fft.fft(x, m) * np.exp(-2j * np.pi * np.arange(m) / m)


def test_combine_shifts_matches_numpy():
    y = _transform(520)
    w = rng.random(12)
    a = _kernels.combine_shifts(y, w, 2)
    b = _kernels.combine_shifts_np(y, w, 2)
    assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(b))


@pytest.mark.parametrize("parabolic", [False, True])
def test_variable_k_combine_matches_numpy(parabolic):
    y = _transform(520)
    prof = rng.integers(1, 40, size=520)
    a = _kernels.variable_k_combine(y, prof, 2, 130.0, parabolic)
    b = _kernels.variable_k_combine_np(y, prof.astype(np.int64), 2, 130.0, parabolic)
    assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(b))


@pytest.mark.parametrize("kernel_id", [0, 1])
def test_smooth_variable_matches_numpy(kernel_id):
    v = rng.standard_normal(2048)
    half = rng.integers(1, 200, size=2048)
    a = _kernels.smooth_variable(v, half, kernel_id)
    b = _kernels.smooth_variable_np(v, half.astype(np.int64), kernel_id)
    assert np.max(np.abs(a - b)) <= 1e-10 * np.max(np.abs(v))


def test_ar_recurse_matches_numpy():
    e = rng.standard_normal(3000)
    coeffs = np.array([0.6, -0.3, 0.05])
    a = _kernels.ar_recurse(e, coeffs)
    b = _kernels.ar_recurse_np(e, coeffs)
    assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(b))


def test_env_flag_selects_numpy_path():
    env = dict(os.environ, MTSINE_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from mtsine import _kernels; print(_kernels.NUMBA_ENABLED)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "False"
