"""Static point clouds: swiss roll and unit sphere."""

import numpy as np

from .._validation import check_positive_int
from ._types import PointCloud


def make_swiss_roll(n=1000, seed=0):
    """Noise-free swiss roll ``(t cos t, 21 s, t sin t)``, ``t = 1.5 pi (1 + 2 r)``.

    ``intrinsic_coords`` holds ``(t, 21 s)``.
    """
    n = check_positive_int(n, "n")
    rng = np.random.default_rng(seed)
    t = 1.5 * np.pi * (1.0 + 2.0 * rng.random(n))
    height = 21.0 * rng.random(n)
    values = np.column_stack([t * np.cos(t), height, t * np.sin(t)])
    return PointCloud(values, np.column_stack([t, height]), "swiss")


def make_sphere(n=1000, seed=0):
    """``n`` distinct points uniform on the unit sphere (normalized Gaussians).

    ``intrinsic_coords`` holds ``(polar, azimuth)`` angles.
    """
    n = check_positive_int(n, "n")
    rng = np.random.default_rng(seed)
    pts = np.empty((0, 3))
    while pts.shape[0] < n:
        g = rng.standard_normal((n - pts.shape[0], 3))
        norms = np.linalg.norm(g, axis=1)
        g = g[norms > 0] / norms[norms > 0, None]
        pts = np.concatenate([pts, g])
        _, first = np.unique(pts, axis=0, return_index=True)
        pts = pts[np.sort(first)]
    polar = np.arccos(np.clip(pts[:, 2], -1.0, 1.0))
    azimuth = np.arctan2(pts[:, 1], pts[:, 0])
    return PointCloud(pts, np.column_stack([polar, azimuth]), "sphere")
