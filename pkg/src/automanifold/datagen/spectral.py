"""Fourier-space helpers for periodic grids."""

import numpy as np


def wavenumbers(grid):
    """Angular wavenumbers matching ``np.fft.rfft`` output on ``grid``."""
    n = grid.n_points
    return 2.0 * np.pi / grid.length * np.arange(n // 2 + 1)


def derivative(u, grid, order=1):
    """Pseudo-spectral ``d^order u / dx^order`` of a real periodic field.

    The Nyquist mode is dropped for odd orders so the result stays real
    and consistent.
    """
    k = wavenumbers(grid)
    mult = (1j * k) ** order
    if order % 2 == 1 and grid.n_points % 2 == 0:
        mult[-1] = 0.0
    return np.fft.irfft(mult * np.fft.rfft(u, axis=-1), n=grid.n_points, axis=-1)


def dealias_mask(grid):
    """Two-thirds rule: keep modes with index <= n/3."""
    n = grid.n_points
    return np.arange(n // 2 + 1) <= n // 3
