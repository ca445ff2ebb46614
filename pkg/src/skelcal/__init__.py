"""skelcal: calibration and correction of depth-sensor skeleton captures."""

from .errors import CalibrationError
from .skeleton import (
    CaptureSequence,
    GaitDirection,
    JOINT_COUNT,
    JointIndex,
    Point3,
    SKELETON_EDGES,
    SkeletonEdge,
    SkeletonFrame,
    joint_track,
    validate_sequence,
)
from .numerics import (
    FitPoint,
    Polynomial,
    arithmetic_mean,
    geometric_mean,
    polyeval,
    polyfit_least_squares,
)
from .tilt import (
    GaitInclination,
    TiltParams,
    aggregate_inclination,
    frame_inclination,
    gait_inclination,
    tilt_correct_point,
    tilt_correct_sequence,
)
from .perspective import (
    BetaModel,
    BetaPoint,
    DEFAULT_BETA_JOINTS,
    fit_beta_model,
    joint_perspective_degree,
    mean_perspective_degrees,
    perspective_correct_point,
    perspective_correct_sequence,
)
from .pipeline import CalibrationProfile, PipelineConfig, apply_profile, calibrate
from .synthetic import (
    BodyTemplate,
    DistortionSpec,
    TiltModel,
    add_noise,
    apply_distortion,
    default_template,
    distort_perspective,
    distort_tilt,
    generate_truth_capture,
)
from .diagnostics import (
    DiffSeries,
    EdgeStability,
    StabilityReport,
    bone_length_stability,
    bone_lengths,
    max_y_diff,
    y_diff_to_last,
)
from .fileio import read_capture, read_profile, write_capture, write_profile

__version__ = "0.1.0"

__all__ = [
    "BetaModel",
    "BetaPoint",
    "BodyTemplate",
    "CalibrationError",
    "CalibrationProfile",
    "CaptureSequence",
    "DEFAULT_BETA_JOINTS",
    "DiffSeries",
    "DistortionSpec",
    "EdgeStability",
    "FitPoint",
    "GaitDirection",
    "GaitInclination",
    "JOINT_COUNT",
    "JointIndex",
    "PipelineConfig",
    "Point3",
    "Polynomial",
    "SKELETON_EDGES",
    "SkeletonEdge",
    "SkeletonFrame",
    "StabilityReport",
    "TiltModel",
    "TiltParams",
    "add_noise",
    "aggregate_inclination",
    "apply_distortion",
    "apply_profile",
    "arithmetic_mean",
    "bone_length_stability",
    "bone_lengths",
    "calibrate",
    "default_template",
    "distort_perspective",
    "distort_tilt",
    "fit_beta_model",
    "frame_inclination",
    "gait_inclination",
    "generate_truth_capture",
    "geometric_mean",
    "joint_perspective_degree",
    "joint_track",
    "max_y_diff",
    "mean_perspective_degrees",
    "perspective_correct_point",
    "perspective_correct_sequence",
    "polyeval",
    "polyfit_least_squares",
    "read_capture",
    "read_profile",
    "tilt_correct_point",
    "tilt_correct_sequence",
    "validate_sequence",
    "write_capture",
    "write_profile",
]
