"""Synthetic and file-based datasets."""

from ._types import (FkdvParams, KsParams, PointCloud, SgParams, SpatialGrid,
                     TimeSeriesDataset)
from .fourier import fourier_reference
from .io import load_csv_matrix, write_dataset_csv
from .pde import sg_energy, simulate_fkdv, simulate_ks, simulate_sg
from .static import make_sphere, make_swiss_roll

__all__ = [
    "FkdvParams", "KsParams", "PointCloud", "SgParams", "SpatialGrid",
    "TimeSeriesDataset", "fourier_reference", "load_csv_matrix",
    "write_dataset_csv", "sg_energy", "simulate_fkdv", "simulate_ks",
    "simulate_sg", "make_sphere", "make_swiss_roll",
]
