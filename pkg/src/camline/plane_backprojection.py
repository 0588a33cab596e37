"""Inverse projection: intersect pixel rays with the ground plane below the camera.

Sign convention: world y increases downward (matching image v), and the
observed plane lies a known height ``c0`` *below* the camera, i.e. at
y = +c0.  A back-projected ray with a positive y component therefore descends
toward the plane; a negative y component points above the horizon and never
meets it.

The ``rot`` argument of every function here is the camera-to-world rotation
(what :func:`camline.core_geometry.rotation_matrix` returns).  It is the
transpose of the world-to-camera block used by ``project``; because rotations
are orthogonal the inverse is always taken as a transpose, never a general
matrix inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core_geometry import (
    DistortionCoefficients,
    Intrinsics,
    PixelPoint,
    _undistort_uv,
    normalize,
)
from .errors import RayAwayFromPlane, RayParallelToPlane

__all__ = [
    "SceneConstraints",
    "PlanePoint",
    "inverse_ray",
    "back_project_to_plane",
    "undistort_then_back_project",
]

# Rays with |y| below this are treated as horizon hits: the nominal
# intersection would sit ~1e12 m away and poison any residual built on it.
HORIZON_EPS = 1e-12


@dataclass(frozen=True)
class SceneConstraints:
    """Known scene geometry: camera height and reference-line depth (metres)."""

    c0: float
    z0: float

    def __post_init__(self) -> None:
        for name in ("c0", "z0"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be a finite positive number, got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class PlanePoint:
    """3D point on the observed plane; ``y`` equals the camera height exactly."""

    x: float
    y: float
    z: float


def inverse_ray(p: PixelPoint, k: Intrinsics, rot: np.ndarray) -> np.ndarray:
    """World-frame direction of the ray through a pixel.

    Returns ``rot @ (xn, yn, 1)`` where ``(xn, yn)`` are the normalized image
    coordinates of ``p`` and ``rot`` is the (orthogonal) camera-to-world
    rotation.  Applying the world-to-camera map ``rot.T`` to the result
    recovers the homogeneous image vector.
    """
    n = normalize(p, k)
    return rot @ np.array([n.xn, n.yn, 1.0])


def _intersect_plane(ray: np.ndarray, c0: float) -> PlanePoint:
    """Scale a world-frame ray until its y component reaches the plane height."""
    y = float(ray[1])
    if abs(y) < HORIZON_EPS:
        raise RayParallelToPlane(
            f"ray y component {y:.3e} is below {HORIZON_EPS:g}; pixel sits on the horizon"
        )
    if y < 0.0:
        raise RayAwayFromPlane(
            f"ray y component {y:.6g} is negative; pixel lies above the horizon"
        )
    scale = c0 / y
    return PlanePoint(float(ray[0]) * scale, c0, float(ray[2]) * scale)


def back_project_to_plane(
    p: PixelPoint, k: Intrinsics, rot: np.ndarray, c0: float
) -> PlanePoint:
    """Intersect the ray through ``p`` with the plane ``c0`` metres below.

    Args:
        p: Pixel, assumed free of lens distortion.
        k: Intrinsics.
        rot: Camera-to-world rotation.
        c0: Camera height above the plane, metres (> 0).

    Returns:
        The intersection point; its ``y`` is ``c0`` exactly by construction.

    Raises:
        RayParallelToPlane: the ray runs along the horizon (|y| < 1e-12).
        RayAwayFromPlane: the ray points above the horizon.
    """
    return _intersect_plane(inverse_ray(p, k, rot), c0)


def undistort_then_back_project(
    p: PixelPoint,
    k: Intrinsics,
    d: DistortionCoefficients,
    rot: np.ndarray,
    c0: float,
) -> PlanePoint:
    """Remove lens distortion from ``p``, then back-project onto the plane.

    Equivalent to ``back_project_to_plane(undistort(p, k, d), k, rot, c0)``;
    raises whatever either step raises.
    """
    uv = _undistort_uv(np.array([p.u, p.v]), k, d)
    return back_project_to_plane(PixelPoint(float(uv[0]), float(uv[1])), k, rot, c0)


def _plane_depths(norm_xy: np.ndarray, rot: np.ndarray, c0: float) -> np.ndarray:
    """Back-project normalized points (N, 2) and return their plane depths (N,).

    Vectorized core shared with the orientation estimator; raises the same
    horizon errors as :func:`back_project_to_plane` if *any* point fails.
    """
    hom = np.column_stack([norm_xy, np.ones(len(norm_xy))])
    rays = hom @ rot.T
    y = rays[:, 1]
    if np.any(np.abs(y) < HORIZON_EPS):
        n_bad = int(np.count_nonzero(np.abs(y) < HORIZON_EPS))
        raise RayParallelToPlane(f"{n_bad} point(s) back-project along the horizon")
    if np.any(y < 0.0):
        n_bad = int(np.count_nonzero(y < 0.0))
        raise RayAwayFromPlane(f"{n_bad} point(s) back-project above the horizon")
    return c0 * rays[:, 2] / y
