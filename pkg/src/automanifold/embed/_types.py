from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import DomainError, NumericalError


@dataclass
class Embedding:
    """Low-dimensional coordinates, one row per embedded point.

    ``index`` maps rows back to rows of the source data when the method drops
    points (Isomap and spectral embedding keep only the largest connected
    component); it is ``None`` when every point is embedded in order.
    """

    coords: np.ndarray
    method: str
    config: dict = field(default_factory=dict)
    seed: Optional[int] = None
    index: Optional[np.ndarray] = None
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coords = np.asarray(self.coords, dtype=np.float64)
        if self.coords.ndim != 2 or self.coords.shape[1] < 1:
            raise DomainError("coords must be an N x n_dim matrix with n_dim >= 1")
        if not np.isfinite(self.coords).all():
            raise NumericalError(f"{self.method} produced non-finite coordinates")
        if self.index is not None:
            self.index = np.asarray(self.index, dtype=np.int64)
            if self.index.shape != (self.coords.shape[0],):
                raise DomainError("index must have one entry per row of coords")

    @property
    def n_points(self):
        return self.coords.shape[0]

    @property
    def n_dim(self):
        return self.coords.shape[1]


@dataclass
class EigResult:
    values: np.ndarray
    vectors: np.ndarray
