"""Synthetic ground-truth captures and exactly-invertible distortions.

Every calibration stage gets an oracle from here: a rigid body template walks
a straight path while limbs swing as pendulums about their sockets (bone
lengths stay exact), and the tilt/perspective distortions are constructed to
be algebraic inverses of the corresponding corrections.

Two tilt models are provided. SHEAR_INVERSE is the exact inverse of
tilt.tilt_correct_point, so correcting with the injected parameters recovers
ground truth to rounding error. ROTATION is the physically honest rigid
rotation of the (Y, Z) plane; correcting rotated data with the shear-style
correction leaves a small-angle residual, which is the point: it separates
"implemented faithfully" from "physically exact".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import FixedPointDivergenceError, InvalidScenarioError
from .numerics import Polynomial, polyeval
from .skeleton import (
    JOINT_COUNT,
    CaptureSequence,
    GaitDirection,
    JointIndex,
    Point3,
    SKELETON_EDGES,
    SkeletonFrame,
)

_J = JointIndex

#: Standing-adult joint offsets relative to the base of the spine, meters.
_DEFAULT_OFFSETS: dict[JointIndex, tuple[float, float, float]] = {
    _J.SPINE_BASE: (0.0, 0.0, 0.0),
    _J.SPINE_MID: (0.0, 0.25, 0.0),
    _J.NECK: (0.0, 0.55, 0.0),
    _J.HEAD: (0.0, 0.72, 0.0),
    _J.SHOULDER_LEFT: (-0.18, 0.42, 0.0),
    _J.ELBOW_LEFT: (-0.21, 0.14, 0.0),
    _J.WRIST_LEFT: (-0.23, -0.11, 0.0),
    _J.HAND_LEFT: (-0.24, -0.19, 0.0),
    _J.SHOULDER_RIGHT: (0.18, 0.42, 0.0),
    _J.ELBOW_RIGHT: (0.21, 0.14, 0.0),
    _J.WRIST_RIGHT: (0.23, -0.11, 0.0),
    _J.HAND_RIGHT: (0.24, -0.19, 0.0),
    _J.HIP_LEFT: (-0.09, -0.06, 0.0),
    _J.KNEE_LEFT: (-0.10, -0.50, 0.0),
    _J.ANKLE_LEFT: (-0.10, -0.87, 0.0),
    _J.FOOT_LEFT: (-0.10, -0.95, 0.0),
    _J.HIP_RIGHT: (0.09, -0.06, 0.0),
    _J.KNEE_RIGHT: (0.10, -0.50, 0.0),
    _J.ANKLE_RIGHT: (0.10, -0.87, 0.0),
    _J.FOOT_RIGHT: (0.10, -0.95, 0.0),
    _J.SPINE_SHOULDER: (0.0, 0.45, 0.0),
    _J.HAND_TIP_LEFT: (-0.245, -0.26, 0.0),
    _J.THUMB_LEFT: (-0.20, -0.22, 0.0),
    _J.HAND_TIP_RIGHT: (0.245, -0.26, 0.0),
    _J.THUMB_RIGHT: (0.20, -0.22, 0.0),
}

# limb chains animated as rigid pendulums: pivot -> joints rotated about it
_LEG_CHAINS = (
    (_J.HIP_LEFT, (_J.KNEE_LEFT, _J.ANKLE_LEFT, _J.FOOT_LEFT)),
    (_J.HIP_RIGHT, (_J.KNEE_RIGHT, _J.ANKLE_RIGHT, _J.FOOT_RIGHT)),
)
_ARM_CHAINS = (
    (_J.SHOULDER_LEFT, (_J.ELBOW_LEFT, _J.WRIST_LEFT, _J.HAND_LEFT, _J.HAND_TIP_LEFT, _J.THUMB_LEFT)),
    (_J.SHOULDER_RIGHT, (_J.ELBOW_RIGHT, _J.WRIST_RIGHT, _J.HAND_RIGHT, _J.HAND_TIP_RIGHT, _J.THUMB_RIGHT)),
)


class TiltModel(Enum):
    SHEAR_INVERSE = "shear"
    ROTATION = "rotation"


@dataclass(frozen=True)
class BodyTemplate:
    """Rigid rest pose (25 offsets from the base of the spine) plus gait cadence."""

    joint_offsets: tuple[Point3, ...]
    stride_length_m: float = 0.3
    step_frequency_hz: float = 3.3

    def __post_init__(self):
        if len(self.joint_offsets) != JOINT_COUNT:
            raise ValueError(f"expected {JOINT_COUNT} joint offsets")
        off = self.joint_offsets
        heights = [
            off[_J.HEAD].y, off[_J.NECK].y, off[_J.SPINE_SHOULDER].y,
            off[_J.SPINE_MID].y, off[_J.SPINE_BASE].y,
        ]
        if not all(a > b for a, b in zip(heights, heights[1:])):
            raise ValueError("head/neck/spine offsets must decrease in height")
        for edge in SKELETON_EDGES:
            a, b = off[edge.parent], off[edge.child]
            if math.dist((a.x, a.y, a.z), (b.x, b.y, b.z)) <= 0.0:
                raise ValueError(f"zero-length bone {edge.parent.name}->{edge.child.name}")
        if self.stride_length_m < 0 or self.step_frequency_hz <= 0:
            raise ValueError("stride length must be >= 0 and step frequency > 0")

    @property
    def pelvis_height_m(self) -> float:
        """Base-of-spine height placing the lowest joint on the ground."""
        return -min(p.y for p in self.joint_offsets)


def default_template() -> BodyTemplate:
    return BodyTemplate(tuple(Point3(*_DEFAULT_OFFSETS[_J(i)]) for i in range(JOINT_COUNT)))


@dataclass(frozen=True)
class DistortionSpec:
    """Parameterized raw-capture distortion: tilt model, perspective polynomial, noise."""

    tilt_model: TiltModel = TiltModel.SHEAR_INVERSE
    tilt_rad: float = 0.0
    sensor_height_m: float = 0.0
    beta_poly: Polynomial = Polynomial((0.0,))
    noise_std_m: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if abs(self.tilt_rad) >= 0.5:
            raise ValueError(f"|tilt| must be < 0.5 rad, got {self.tilt_rad}")
        if self.noise_std_m < 0:
            raise ValueError("noise std must be >= 0")


def _rotated(offset: Point3, pivot: Point3, theta: float, plane: str) -> Point3:
    """Rotate ``offset`` about ``pivot`` by ``theta`` in the y/z or y/x plane."""
    c, s = math.cos(theta), math.sin(theta)
    dy = offset.y - pivot.y
    if plane == "yz":
        dz = offset.z - pivot.z
        return Point3(offset.x, pivot.y + dy * c - dz * s, pivot.z + dy * s + dz * c)
    dx = offset.x - pivot.x
    return Point3(pivot.x + dy * s + dx * c, pivot.y + dy * c - dx * s, offset.z)


def generate_truth_capture(
    template: BodyTemplate,
    direction: GaitDirection,
    frames: int,
    z_start: float,
    z_end: float,
    nominal_fps: float = 30.0,
    label: str = "synthetic-truth",
) -> CaptureSequence:
    """Ground-truth capture of the template walking a straight line.

    Vertical gaits walk toward the sensor from z_start down to z_end; a
    horizontal gait crosses the view at the midpoint depth, covering the same
    path length along X. Equal z_start and z_end means standing still: all
    frames identical. Limbs swing through a whole number of gait cycles so the
    first and last frames share the same pose, and the lowest foot touches
    y = 0 at stance.
    """
    if frames < 2:
        raise InvalidScenarioError(f"need at least 2 frames, got {frames}")
    if z_start < z_end:
        raise InvalidScenarioError(f"z_start {z_start} must be >= z_end {z_end}")
    if z_end < 0.8:
        raise InvalidScenarioError(f"z_end {z_end} must stay >= 0.8 m from the sensor")

    path_length = z_start - z_end
    pelvis_y = template.pelvis_height_m
    duration_s = (frames - 1) / nominal_fps
    if path_length > 0:
        cycles = max(1, round(duration_s * template.step_frequency_hz / 2))
        off = template.joint_offsets
        leg_len = abs(off[_J.ANKLE_LEFT].y - off[_J.HIP_LEFT].y)
        leg_amp = math.asin(min(1.0, template.stride_length_m / 2 / leg_len))
    else:
        cycles, leg_amp = 0, 0.0
    arm_amp = leg_amp / 2
    plane = "yz" if direction is GaitDirection.VERTICAL else "yx"

    out = []
    for k in range(frames):
        t = k / (frames - 1)
        if direction is GaitDirection.VERTICAL:
            base = Point3(0.0, pelvis_y, z_start + (z_end - z_start) * t)
        else:
            base = Point3(-path_length / 2 + path_length * t, pelvis_y, (z_start + z_end) / 2)
        phase = 2 * math.pi * cycles * t
        swing = math.sin(phase)
        posed = list(template.joint_offsets)
        for (pivot_j, chain), sign in zip(_LEG_CHAINS, (1.0, -1.0)):
            theta = sign * leg_amp * swing
            for j in chain:
                posed[j] = _rotated(posed[j], posed[pivot_j], theta, plane)
        for (pivot_j, chain), sign in zip(_ARM_CHAINS, (-1.0, 1.0)):
            theta = sign * arm_amp * swing
            for j in chain:
                posed[j] = _rotated(posed[j], posed[pivot_j], theta, plane)
        joints = tuple(
            Point3(base.x + p.x, base.y + p.y, base.z + p.z) for p in posed
        )
        out.append(SkeletonFrame(k, joints))
    return CaptureSequence(tuple(out), direction, nominal_fps, label)


def distort_tilt(seq: CaptureSequence, spec: DistortionSpec) -> CaptureSequence:
    """Simulate a tilted sensor.

    SHEAR_INVERSE applies the exact algebraic inverse of the tilt correction:
    y_raw = y - z*sin(a) - h, then z_raw = z - y_raw*sin(a). ROTATION rigidly
    rotates (y, z) by -a about the sensor origin and subtracts the sensor
    height from y.
    """
    a, h = spec.tilt_rad, spec.sensor_height_m
    s, c = math.sin(a), math.cos(a)

    def shear(p: Point3) -> Point3:
        y_raw = p.y - p.z * s - h
        return Point3(p.x, y_raw, p.z - y_raw * s)

    def rotate(p: Point3) -> Point3:
        return Point3(p.x, p.y * c + p.z * s - h, p.z * c - p.y * s)

    warp = shear if spec.tilt_model is TiltModel.SHEAR_INVERSE else rotate
    frames = tuple(
        SkeletonFrame(f.frame_index, tuple(warp(p) for p in f.joints)) for f in seq.frames
    )
    return CaptureSequence(frames, seq.direction, seq.nominal_fps, seq.label)


def distort_perspective(
    seq: CaptureSequence,
    beta_poly: Polynomial,
    max_iterations: int = 50,
    tolerance: float = 1e-10,
) -> CaptureSequence:
    """Simulate height-dependent perspective drift of Y.

    Solves y_raw = y_true - z*tan(beta(y_raw)) per point by fixed-point
    iteration, sampling the angle at the *raw* height so the perspective
    correction with the same polynomial inverts this exactly.
    """

    def warp(p: Point3) -> Point3:
        y_raw = p.y
        for _ in range(max_iterations):
            y_next = p.y - p.z * math.tan(polyeval(beta_poly, y_raw))
            if abs(y_next - y_raw) < tolerance:
                return Point3(p.x, y_next, p.z)
            y_raw = y_next
        raise FixedPointDivergenceError(
            f"no convergence after {max_iterations} iterations at y={p.y}, z={p.z}"
        )

    frames = tuple(
        SkeletonFrame(f.frame_index, tuple(warp(p) for p in f.joints)) for f in seq.frames
    )
    return CaptureSequence(frames, seq.direction, seq.nominal_fps, seq.label)


def add_noise(seq: CaptureSequence, std_m: float, seed: int) -> CaptureSequence:
    """Independent zero-mean Gaussian perturbation of every coordinate."""
    if std_m < 0:
        raise ValueError("noise std must be >= 0")
    if std_m == 0:
        return seq
    rng = np.random.default_rng(seed)
    offsets = rng.normal(0.0, std_m, size=(len(seq.frames), JOINT_COUNT, 3))
    frames = tuple(
        SkeletonFrame(
            f.frame_index,
            tuple(
                Point3(p.x + d[0], p.y + d[1], p.z + d[2])
                for p, d in zip(f.joints, offsets[i])
            ),
        )
        for i, f in enumerate(seq.frames)
    )
    return CaptureSequence(frames, seq.direction, seq.nominal_fps, seq.label)


def apply_distortion(seq: CaptureSequence, spec: DistortionSpec) -> CaptureSequence:
    """Full raw-capture simulation: perspective, then tilt, then sensor noise.

    The order mirrors (in reverse) how the calibration pipeline undoes the
    effects: tilt correction first, perspective correction second.
    """
    out = distort_perspective(seq, spec.beta_poly)
    out = distort_tilt(out, spec)
    return add_noise(out, spec.noise_std_m, spec.seed)
