"""Input validation helpers shared across modules."""

import numpy as np
from scipy.spatial.distance import pdist, squareform
from sklearn.utils.validation import check_array

from .errors import DomainError

MAX_DENSE_N = 4096


def as_data_matrix(X, name="data", min_samples=1):
    """Return ``X`` as a finite 2-D float64 array."""
    try:
        return check_array(X, dtype=np.float64, ensure_min_samples=min_samples,
                           input_name=name)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc


def as_distance_matrix(D, name="dist", tol=1e-10):
    """Validate a square, symmetric, zero-diagonal, nonnegative matrix."""
    D = as_data_matrix(D, name=name)
    n, m = D.shape
    if n != m:
        raise DomainError(f"{name} must be square, got shape {D.shape}")
    scale = max(1.0, float(np.abs(D).max(initial=0.0)))
    if np.abs(D - D.T).max(initial=0.0) > tol * scale:
        raise DomainError(f"{name} is not symmetric")
    if np.abs(np.diag(D)).max(initial=0.0) > tol * scale:
        raise DomainError(f"{name} must have a zero diagonal")
    if (D < 0).any():
        raise DomainError(f"{name} has negative entries")
    if n > MAX_DENSE_N:
        raise DomainError(f"{name} has {n} points; dense routines are capped at {MAX_DENSE_N}")
    return D


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def pairwise_euclidean(X):
    """Dense Euclidean distance matrix (exact per pair, zero diagonal)."""
    X = np.asarray(X, dtype=np.float64)
    if X.shape[0] < 2:
        return np.zeros((X.shape[0], X.shape[0]))
    return squareform(pdist(X))
