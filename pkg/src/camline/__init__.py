"""Camera roll/pitch estimation from a known ground-plane reference line.

A partially calibrated camera (known intrinsics and distortion, unknown
orientation) observes a straight reference line lying on a horizontal plane a
known height below the camera at a known depth.  This package provides the
forward projection model (pinhole + Brown-Conrady distortion), ray/plane
back-projection, closed-form roll and pitch estimators with residual
diagnostics, and a synthetic ground-truth rig for end-to-end verification.
"""

from .config import CameraConfig, dump_camera_config, load_camera_config, save_camera_config
from .core_geometry import (
    DistortionCoefficients,
    Intrinsics,
    NormalizedPoint,
    Orientation,
    PixelPoint,
    Pose,
    WorldPoint,
    denormalize,
    distort,
    normalize,
    project,
    rotation_matrix,
    rotation_x,
    rotation_xz,
    rotation_z,
    undistort,
)
from .errors import (
    BehindCamera,
    CamlineError,
    ConfigError,
    DegenerateGeometry,
    DegenerateLine,
    GeometryError,
    NoHorizonIntersection,
    NonConvergent,
    RayAwayFromPlane,
    RayParallelToPlane,
    TooFewVisible,
)
from .orientation_estimator import (
    OrientationEstimate,
    ReferenceLineObservation,
    ZSpread,
    central_pixel,
    estimate_orientation,
    estimate_pitch,
    estimate_roll,
    residual_z_spread,
)
from .plane_backprojection import (
    PlanePoint,
    SceneConstraints,
    back_project_to_plane,
    inverse_ray,
    undistort_then_back_project,
)
from .synthetic_rig import (
    DEFAULT_IMAGE_HEIGHT,
    DEFAULT_IMAGE_WIDTH,
    SWEEP_CSV_HEADER,
    SweepConfig,
    SyntheticScene,
    TrialReport,
    default_intrinsics,
    render_line,
    run_trial,
    sweep,
    write_sweep_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BehindCamera",
    "CameraConfig",
    "CamlineError",
    "ConfigError",
    "DEFAULT_IMAGE_HEIGHT",
    "DEFAULT_IMAGE_WIDTH",
    "DegenerateGeometry",
    "DegenerateLine",
    "DistortionCoefficients",
    "GeometryError",
    "Intrinsics",
    "NoHorizonIntersection",
    "NonConvergent",
    "NormalizedPoint",
    "Orientation",
    "OrientationEstimate",
    "PixelPoint",
    "PlanePoint",
    "Pose",
    "RayAwayFromPlane",
    "RayParallelToPlane",
    "ReferenceLineObservation",
    "SWEEP_CSV_HEADER",
    "SceneConstraints",
    "SweepConfig",
    "SyntheticScene",
    "TooFewVisible",
    "TrialReport",
    "WorldPoint",
    "ZSpread",
    "back_project_to_plane",
    "central_pixel",
    "default_intrinsics",
    "denormalize",
    "distort",
    "dump_camera_config",
    "estimate_orientation",
    "estimate_pitch",
    "estimate_roll",
    "inverse_ray",
    "load_camera_config",
    "normalize",
    "project",
    "render_line",
    "residual_z_spread",
    "rotation_matrix",
    "rotation_x",
    "rotation_xz",
    "rotation_z",
    "run_trial",
    "save_camera_config",
    "sweep",
    "undistort",
    "undistort_then_back_project",
    "write_sweep_csv",
]
