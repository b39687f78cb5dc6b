from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform 1-D grid. For periodic grids the right endpoint is excluded."""

    n_points: int
    x_min: float = -np.pi
    x_max: float = np.pi
    periodic: bool = True

    def __post_init__(self):
        if self.n_points < 1:
            raise DomainError("n_points must be positive")
        if not self.x_min < self.x_max:
            raise DomainError("x_min must be smaller than x_max")

    @property
    def length(self):
        return self.x_max - self.x_min

    @property
    def dx(self):
        if self.periodic:
            return self.length / self.n_points
        return self.length / (self.n_points - 1)

    @property
    def x(self):
        return self.x_min + self.dx * np.arange(self.n_points)

    def check_spectral(self):
        n = self.n_points
        if not self.periodic:
            raise DomainError("spectral integrators need a periodic grid")
        if n < 4 or n & (n - 1):
            raise DomainError(f"n_points must be a power of two >= 4, got {n}")

    def header(self):
        return f"{self.n_points},{self.x_min!r},{self.x_max!r},{str(self.periodic).lower()}"


@dataclass(frozen=True)
class FkdvParams:
    froude: float = 1.5
    amp: float = 0.5
    wavenumber: int = 1
    phase: float = 1.0
    t_start: float = 300.0
    dt: float = 0.1
    n_snapshots: int = 1000
    tol: float = 1e-6


@dataclass(frozen=True)
class KsParams:
    """Kuramoto-Sivashinsky parameters.

    ``step`` is the fixed internal ETDRK4 step; it is shrunk so it divides
    ``dt`` and ``t_start`` exactly.  ``tol`` bounds the step-doubling error
    estimate taken on the first internal step.
    """

    nu: float = 16.0 / 71.0
    amp: float = 0.5
    wavenumber: int = 1
    phase: float = 1.0
    t_start: float = 300.0
    dt: float = 0.1
    n_snapshots: int = 1000
    tol: float = 1e-6
    step: float = 0.01


@dataclass(frozen=True)
class SgParams:
    amp: float = 0.5
    wavenumber: int = 1
    phase: float = 1.0
    t_start: float = 300.0
    dt: float = 0.1
    n_snapshots: int = 1000
    tol: float = 1e-6


@dataclass
class TimeSeriesDataset:
    """Snapshots ``values[i] = u(x, times[i])``.

    ``extras`` holds auxiliary per-snapshot fields that are not part of the
    observation (e.g. the Sine-Gordon velocity ``u_t``).
    """

    times: np.ndarray
    values: np.ndarray
    grid: Union[SpatialGrid, str] = "unstructured"
    source: str = "unknown"
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=np.float64)
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2:
            raise DomainError("values must be a 2-D matrix")
        if self.times.shape != (self.values.shape[0],):
            raise DomainError("times must have one entry per row of values")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise DomainError("times must be strictly increasing")
        if not np.isfinite(self.values).all():
            raise DomainError("values contain non-finite entries")

    @property
    def n_samples(self):
        return self.values.shape[0]

    @property
    def n_features(self):
        return self.values.shape[1]


@dataclass
class PointCloud:
    values: np.ndarray
    intrinsic_coords: Optional[np.ndarray] = None
    source: str = "unknown"

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2 or self.values.shape[0] < 1:
            raise DomainError("a point cloud needs at least one row")
        if not np.isfinite(self.values).all():
            raise DomainError("values contain non-finite entries")

    def to_dataset(self):
        n = self.values.shape[0]
        return TimeSeriesDataset(np.arange(n, dtype=np.float64), self.values,
                                 "unstructured", self.source)
