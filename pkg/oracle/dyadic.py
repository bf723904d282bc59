# oracle/dyadic.py
"""
Dyadic box grids. Edges accumulate at 0 on every axis, so power weights
|t|^(-alpha) vary by a bounded factor on each box away from the coordinate
hyperplanes.
"""
from typing import Tuple

import numpy as np

from errors import UnsupportedScaleError

# Finest dyadic scale 2^-J per axis.
DEFAULT_DEPTH = {1: 26, 2: 26, 3: 14}

Boxes = Tuple[np.ndarray, np.ndarray]


def default_depth(dimension: int) -> int:
    if dimension not in DEFAULT_DEPTH:
        raise UnsupportedScaleError(f"The numeric oracles support n <= 3, got n = {dimension}.")
    return DEFAULT_DEPTH[dimension]


def dyadic_edges(r: float, depth: int) -> np.ndarray:
    """[0, r 2^-depth, ..., r/2, r]."""
    return np.concatenate(([0.0], r * 2.0 ** -np.arange(depth, -1, -1)))


def signed_dyadic_edges(r: float, depth: int) -> np.ndarray:
    """Mirror image of `dyadic_edges` about 0, covering [-r, r]."""
    positive = dyadic_edges(r, depth)
    return np.concatenate((-positive[:0:-1], positive))


def product_boxes(edges: np.ndarray, dimension: int) -> Boxes:
    """
    Every box of the tensor grid, row-major in the per-axis interval index.

    Returns:
        tuple: (lo, hi), arrays of shape (count, dimension).
    """
    count = len(edges) - 1
    index = np.stack(np.meshgrid(*[np.arange(count)] * dimension, indexing="ij"), axis=-1)
    index = index.reshape(-1, dimension)
    return edges[index], edges[index + 1]


def bisect(lo: np.ndarray, hi: np.ndarray) -> Boxes:
    """Splits every box into its 2^n halves; children of a box stay contiguous."""
    n = lo.shape[1]
    mid = 0.5 * (lo + hi)
    corners = np.array(np.meshgrid(*[[0, 1]] * n, indexing="ij")).reshape(n, -1).T  # (2^n, n)
    child_lo = np.where(corners[None, :, :] == 0, lo[:, None, :], mid[:, None, :])
    child_hi = np.where(corners[None, :, :] == 0, mid[:, None, :], hi[:, None, :])
    return child_lo.reshape(-1, n), child_hi.reshape(-1, n)


def split_along(lo: np.ndarray, hi: np.ndarray, axes: np.ndarray) -> Boxes:
    """
    Halves each box along the axes flagged in its row of `axes` (boolean,
    shape (count, n)). Children of a box stay contiguous; unflagged boxes
    are returned unchanged.
    """
    for axis in range(lo.shape[1]):
        split = axes[:, axis]
        if not split.any():
            continue
        repeats = np.where(split, 2, 1)
        first = (np.cumsum(repeats) - repeats)[split]
        mid = 0.5 * (lo[split, axis] + hi[split, axis])
        lo, hi, axes = (np.repeat(a, repeats, axis=0) for a in (lo, hi, axes))
        hi[first, axis] = mid
        lo[first + 1, axis] = mid
    return lo, hi


def volumes(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    return np.prod(hi - lo, axis=1)


def map_to_boxes(unit_points: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """
    Maps per-box unit-cube points into the boxes.

    Args:
        unit_points: shape (boxes, q, n) or (q, n) shared by every box.
    """
    if unit_points.ndim == 2:
        unit_points = unit_points[None, :, :]
    return lo[:, None, :] + unit_points * (hi - lo)[:, None, :]
