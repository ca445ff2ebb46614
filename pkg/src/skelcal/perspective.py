"""Height-dependent perspective estimation and the Y-coordinate correction.

As a subject approaches the sensor, each joint's apparent Y drifts by an
amount proportional to depth; the drift angle depends on the joint's height.
The angle is estimated per joint from the first and last frame of a
tilt-corrected walk toward the sensor, averaged across calibration gaits,
and fitted as a polynomial in height. Correction adds z * tan(angle) back to
each Y, with the angle read from the polynomial at the point's incoming Y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    BetaOutOfRangeError,
    InsufficientDepthTravelError,
    NoUsableGaitsError,
    WrongDirectionError,
)
from .numerics import FitPoint, Polynomial, arithmetic_mean, polyeval, polyfit_least_squares
from .skeleton import CaptureSequence, GaitDirection, JointIndex, Point3, SkeletonFrame

#: Minimum first-to-last depth travel for a usable estimate.
MIN_DEPTH_TRAVEL_M = 0.05

#: Default joint subset for estimation: torso chain, head, knees, ankles —
#: stable landmarks spanning the body's height top to bottom.
DEFAULT_BETA_JOINTS: tuple[JointIndex, ...] = (
    JointIndex.HEAD,
    JointIndex.NECK,
    JointIndex.SPINE_SHOULDER,
    JointIndex.SPINE_MID,
    JointIndex.SPINE_BASE,
    JointIndex.KNEE_LEFT,
    JointIndex.KNEE_RIGHT,
    JointIndex.ANKLE_LEFT,
    JointIndex.ANKLE_RIGHT,
)


@dataclass(frozen=True)
class BetaPoint:
    """Mean perspective angle of one joint at its representative height."""

    joint: JointIndex
    height_y_m: float
    beta_rad: float

    def __post_init__(self):
        if not (math.isfinite(self.beta_rad) and abs(self.beta_rad) < math.pi / 2):
            raise ValueError(f"perspective angle out of range: {self.beta_rad}")


@dataclass(frozen=True)
class BetaModel:
    """Fitted polynomial mapping height (m) to perspective angle (rad)."""

    poly: Polynomial
    fit_degree: int
    source_points: tuple[BetaPoint, ...]

    def __post_init__(self):
        if not isinstance(self.source_points, tuple):
            object.__setattr__(self, "source_points", tuple(self.source_points))
        if self.fit_degree != self.poly.degree:
            raise ValueError(
                f"fit_degree {self.fit_degree} != polynomial degree {self.poly.degree}"
            )
        if len(self.source_points) <= self.fit_degree:
            raise ValueError("need more source points than the fit degree")


def joint_perspective_degree(
    seq: CaptureSequence,
    j: JointIndex | int,
    min_depth_travel_m: float = MIN_DEPTH_TRAVEL_M,
) -> float:
    """Perspective angle of joint ``j`` from the first and last frame, radians.

    atan of (Y picked up per meter of depth lost) between the two end frames:
    positive when the far reading is too low. Only meaningful on a
    tilt-corrected walk toward the sensor with enough depth travel.
    """
    if seq.direction is not GaitDirection.VERTICAL:
        raise WrongDirectionError(
            f"perspective estimation needs a vertical gait, got {seq.direction.value}"
        )
    idx = int(j)
    first = seq.frames[0].joints[idx]
    last = seq.frames[-1].joints[idx]
    depth_travel = first.z - last.z
    if abs(depth_travel) <= min_depth_travel_m:
        raise InsufficientDepthTravelError(
            f"joint {idx}: |depth travel| {abs(depth_travel):.4f} m <= {min_depth_travel_m} m"
        )
    return math.atan((last.y - first.y) / depth_travel)


def mean_perspective_degrees(
    seqs: Sequence[CaptureSequence],
    joints: Sequence[JointIndex | int] = DEFAULT_BETA_JOINTS,
    min_depth_travel_m: float = MIN_DEPTH_TRAVEL_M,
) -> list[BetaPoint]:
    """Per-joint mean perspective angles across the vertical calibration gaits.

    Each joint's angle is averaged over the gaits where it was computable; its
    representative height is the joint's mean Y over all frames of all vertical
    gaits. Points come back ordered top to bottom by height.
    """
    vertical = [s for s in seqs if s.direction is GaitDirection.VERTICAL]
    if not vertical:
        raise WrongDirectionError("no vertical gait among the calibration sequences")
    points = []
    for j in joints:
        idx = int(j)
        betas = []
        for seq in vertical:
            try:
                betas.append(joint_perspective_degree(seq, idx, min_depth_travel_m))
            except InsufficientDepthTravelError:
                continue
        if not betas:
            raise NoUsableGaitsError(idx)
        heights = [f.joints[idx].y for seq in vertical for f in seq.frames]
        points.append(
            BetaPoint(JointIndex(idx), arithmetic_mean(heights), arithmetic_mean(betas))
        )
    points.sort(key=lambda p: (-p.height_y_m, int(p.joint)))
    return points


def fit_beta_model(points: Sequence[BetaPoint], degree: int) -> BetaModel:
    """Fit the height -> perspective angle polynomial over the given points."""
    fit = polyfit_least_squares(
        [FitPoint(p.height_y_m, p.beta_rad) for p in points], degree
    )
    return BetaModel(fit, degree, tuple(points))


def perspective_correct_point(p: Point3, model: BetaModel) -> Point3:
    """Correct one point's Y: y + z * tan(angle at the incoming y). X, Z unchanged."""
    beta = polyeval(model.poly, p.y)
    if abs(beta) >= math.pi / 2 - 1e-6:
        raise BetaOutOfRangeError(f"angle {beta} rad too close to pi/2 at y={p.y}")
    return Point3(p.x, p.y + p.z * math.tan(beta), p.z)


def perspective_correct_sequence(seq: CaptureSequence, model: BetaModel) -> CaptureSequence:
    """Apply perspective_correct_point to every joint of every frame."""
    frames = tuple(
        SkeletonFrame(f.frame_index, tuple(perspective_correct_point(p, model) for p in f.joints))
        for f in seq.frames
    )
    return CaptureSequence(frames, seq.direction, seq.nominal_fps, seq.label)
