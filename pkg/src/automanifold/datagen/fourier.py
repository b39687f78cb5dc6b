import numpy as np

from .._validation import check_positive_int
from ..embed._types import Embedding
from ..errors import DomainError
from ._types import SpatialGrid


def fourier_reference(ds, n_modes=2):
    """Trajectory of the dominant spatial Fourier modes.

    Nonnegative wavenumbers are ranked by time-averaged power ``|c_m(t)|^2``
    (ties go to the lower wavenumber), with ``c_m = rfft(u)_m / n``.  The
    columns are ``(Re c_1, Im c_1, |c_2|, ..., |c_{n_modes}|)`` where
    ``c_1`` is the most powerful mode, so ``n_modes = 2`` gives an N x 3
    trajectory.
    """
    n_modes = check_positive_int(n_modes, "n_modes")
    if not isinstance(ds.grid, SpatialGrid) or not ds.grid.periodic:
        raise DomainError("fourier_reference needs a periodic grid")
    n = ds.values.shape[1]
    coeffs = np.fft.rfft(ds.values, axis=1) / n
    if n_modes > coeffs.shape[1]:
        raise DomainError(f"n_modes={n_modes} exceeds the {coeffs.shape[1]} available wavenumbers")
    power = (np.abs(coeffs) ** 2).mean(axis=0)
    order = np.argsort(-power, kind="stable")[:n_modes]
    lead = coeffs[:, order[0]]
    cols = [lead.real, lead.imag] + [np.abs(coeffs[:, m]) for m in order[1:]]
    return Embedding(np.column_stack(cols), "fourier",
                     config={"n_modes": n_modes, "modes": order.tolist()})
