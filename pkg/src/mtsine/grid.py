"""Frequency grids for estimates and window evaluation.

Frequencies are in cycles per sample and live on the circular grid
f_j = j/m, j = 0..m-1, wrapped to [-1/2, 1/2) in FFT order.
"""

from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform circular frequency grid with ``m`` points."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"grid needs at least 2 points, got m={self.m}")

    @cached_property
    def frequencies(self):
        """Grid frequencies j/m wrapped to [-1/2, 1/2), FFT order."""
        f = np.fft.fftfreq(self.m)
        f.flags.writeable = False
        return f

    def shift_step(self, n):
        """Whole-bin step of the half-resolution offset 1/(2*(n+1)).

        The single-FFT sinusoidal path reads the transform at
        f +- j/(2*(n+1)); those offsets land on grid bins only when m is
        a multiple of 2*(n+1).
        """
        block = 2 * (n + 1)
        if self.m % block != 0:
            raise ValueError(
                f"grid size m={self.m} must be a multiple of 2*(n+1)={block} "
                "for the fast sinusoidal path"
            )
        return self.m // block

    def nonnegative_indices(self):
        """Indices of bins reported as f in [0, 1/2] (the -1/2 bin maps to 1/2)."""
        return np.arange(self.m // 2 + 1)


def default_grid(n):
    """Estimation grid: the smallest multiple of 2*(n+1) that is >= 2n.

    Works out to roughly 4n points, so the fast path needs no
    interpolation and the grid resolves the estimate.
    """
    if n < 1:
        raise ValueError(f"series length must be positive, got {n}")
    block = 2 * (n + 1)
    return FrequencyGrid(block * max(1, math.ceil(2 * n / (n + 1))))


def window_grid(n, oversample=16):
    """Dense grid for spectral-window evaluation (default 16n points)."""
    if n < 1:
        raise ValueError(f"taper length must be positive, got {n}")
    return FrequencyGrid(oversample * n)
