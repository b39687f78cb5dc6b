"""Dense symmetric eigensolver shared by every spectral method."""

import numpy as np
import scipy.linalg

from .._validation import MAX_DENSE_N, check_positive_int
from ..errors import DomainError, NumericalError
from ._types import EigResult


def fix_signs(vectors):
    """Flip each column so its largest-magnitude entry is positive."""
    if vectors.size == 0:
        return vectors
    rows = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[rows, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def sym_eig(matrix, which="top", count=1):
    """The ``count`` largest (``which="top"``) or smallest eigenpairs.

    Values come back descending for ``top`` and ascending for ``bottom``;
    eigenvectors follow :func:`fix_signs`.  Backed by LAPACK's
    tridiagonal reduction (``syevr``), computing only the requested subset.
    """
    A = np.asarray(matrix, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    if n > MAX_DENSE_N:
        raise DomainError(f"matrix size {n} exceeds the dense limit {MAX_DENSE_N}")
    if which not in ("top", "bottom"):
        raise DomainError(f"which must be 'top' or 'bottom', got {which!r}")
    count = check_positive_int(count, "count")
    if count > n:
        raise DomainError(f"count={count} exceeds matrix size {n}")
    if not np.isfinite(A).all():
        raise DomainError("matrix has non-finite entries")
    scale = max(1.0, float(np.abs(A).max()))
    if np.abs(A - A.T).max() > 1e-10 * scale:
        raise DomainError("matrix is not symmetric")
    A = 0.5 * (A + A.T)
    lo, hi = (n - count, n - 1) if which == "top" else (0, count - 1)
    try:
        values, vectors = scipy.linalg.eigh(A, subset_by_index=(lo, hi), driver="evr")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    if which == "top":
        values, vectors = values[::-1], vectors[:, ::-1]
    return EigResult(values.copy(), fix_signs(vectors.copy()))
