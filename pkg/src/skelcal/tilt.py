"""Sensor inclination estimation from the spine segment and the tilt correction.

The inclination estimate reads the base-of-spine -> middle-of-spine segment of
each frame. Sign convention: positive tilt means higher joints read *smaller*
depth than lower ones (sensor pitched down toward the subject), which is the
orientation the Y/Z correction below compensates. A vertically aligned spine
yields zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DegenerateSpineError,
    EmptyInputError,
    MixedSignAnglesError,
    NoUsableFramesError,
    ZeroAngleError,
)
from .numerics import arithmetic_mean, geometric_mean
from .skeleton import CaptureSequence, JointIndex, Point3, SkeletonFrame

#: Minimum spine height difference for a usable inclination estimate.
MIN_SPINE_RISE_M = 1e-6


@dataclass(frozen=True)
class TiltParams:
    """Sensor inclination (radians) and sensor height above ground (meters)."""

    tilt_rad: float
    sensor_height_m: float

    def __post_init__(self):
        if not (math.isfinite(self.tilt_rad) and abs(self.tilt_rad) < math.pi / 2):
            raise ValueError(f"tilt must satisfy |tilt| < pi/2, got {self.tilt_rad}")
        if not (math.isfinite(self.sensor_height_m) and self.sensor_height_m >= 0.0):
            raise ValueError(f"sensor height must be finite and >= 0, got {self.sensor_height_m}")


@dataclass(frozen=True)
class GaitInclination:
    """Per-frame inclination estimates of one gait and their arithmetic mean."""

    per_frame_rad: tuple[float, ...]
    mean_rad: float


def frame_inclination(frame: SkeletonFrame) -> float:
    """Inclination of one frame from its spine segment, in radians.

    Computed as atan2(z_base - z_mid, y_mid - y_base): the depth loss per unit
    height gain along the spine. Zero when the spine is vertically aligned in
    Z; positive when the upper spine joint reads closer to the sensor.
    """
    base = frame.joint(JointIndex.SPINE_BASE)
    mid = frame.joint(JointIndex.SPINE_MID)
    rise = mid.y - base.y
    if abs(rise) <= MIN_SPINE_RISE_M:
        raise DegenerateSpineError(
            f"frame {frame.frame_index}: spine height difference {rise} too small"
        )
    return math.atan2(base.z - mid.z, rise)


def gait_inclination(seq: CaptureSequence) -> GaitInclination:
    """Per-frame inclinations of a gait plus their mean.

    Frames with a degenerate spine (tracking glitch collapsing the two spine
    joints in Y) are skipped; the mean is over usable frames only.
    """
    per_frame = []
    for frame in seq.frames:
        try:
            per_frame.append(frame_inclination(frame))
        except DegenerateSpineError:
            continue
    if not per_frame:
        raise NoUsableFramesError(f"no frame of '{seq.label}' has a usable spine segment")
    return GaitInclination(tuple(per_frame), arithmetic_mean(per_frame))


def aggregate_inclination(gait_means: Sequence[float]) -> float:
    """Combine per-gait mean inclinations into one angle via the geometric mean.

    The geometric mean is taken over magnitudes with the common sign
    reattached. Mixed signs across gaits indicate an inconsistent setup and
    are an error, as is an exactly-zero gait mean.
    """
    if len(gait_means) == 0:
        raise EmptyInputError("no gait means to aggregate")
    for m in gait_means:
        if m == 0.0:
            raise ZeroAngleError("gait mean inclination of exactly 0 cannot be aggregated")
    signs = {math.copysign(1.0, m) for m in gait_means}
    if len(signs) > 1:
        raise MixedSignAnglesError(f"gait means disagree in sign: {list(gait_means)}")
    return math.copysign(geometric_mean([abs(m) for m in gait_means]), gait_means[0])


def tilt_correct_point(p: Point3, params: TiltParams) -> Point3:
    """Correct one point for sensor tilt and reference it to the ground plane.

    Z is corrected first from the raw Y; the corrected Z is then fed back into
    the Y correction together with the sensor height. X is untouched. Note the
    Y step intentionally uses the already-corrected Z, so the map is a shear,
    not a rigid rotation; it is exactly invertible (see synthetic.distort_tilt).
    """
    s = math.sin(params.tilt_rad)
    z_c = p.y * s + p.z
    y_c = z_c * s + p.y + params.sensor_height_m
    return Point3(p.x, y_c, z_c)


def tilt_correct_sequence(seq: CaptureSequence, params: TiltParams) -> CaptureSequence:
    """Apply tilt_correct_point to every joint of every frame; metadata preserved."""
    frames = tuple(
        SkeletonFrame(f.frame_index, tuple(tilt_correct_point(p, params) for p in f.joints))
        for f in seq.frames
    )
    return CaptureSequence(frames, seq.direction, seq.nominal_fps, seq.label)
