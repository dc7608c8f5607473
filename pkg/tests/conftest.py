import numpy as np
import pytest

from mtsine import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger JIT compilation once so timed tests measure the algorithms."""
    y = np.exp(2j * np.pi * np.arange(16) / 16)
    _kernels.combine_shifts(y, np.array([0.5, 0.5]), 1)
    _kernels.variable_k_combine(y, np.full(16, 2, dtype=np.int64), 1, 4.0, True)
    _kernels.variable_k_combine(y, np.full(16, 2, dtype=np.int64), 1, 4.0, False)
    v = np.arange(16.0)
    _kernels.smooth_circular(v, np.array([0.25, 0.5, 0.25]))
    _kernels.smooth_variable(v, np.full(16, 2, dtype=np.int64), 1)
    _kernels.ar_recurse(v, np.array([0.5]))
