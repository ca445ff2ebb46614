"""Core data model: joints, frames, capture sequences, and the skeleton tree.

All types are immutable values; sequences can be shared freely between
threads. Coordinates are meters in the sensor frame: Y up, Z pointing away
from the sensor into the scene, X lateral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum

from .errors import (
    EmptySequenceError,
    NonFiniteCoordinateError,
    NonMonotonicFrameIndexError,
    WrongJointCountError,
)

JOINT_COUNT = 25


class JointIndex(IntEnum):
    """The 25 tracked skeleton joints, indexed 0-24."""

    SPINE_BASE = 0
    SPINE_MID = 1
    NECK = 2
    HEAD = 3
    SHOULDER_LEFT = 4
    ELBOW_LEFT = 5
    WRIST_LEFT = 6
    HAND_LEFT = 7
    SHOULDER_RIGHT = 8
    ELBOW_RIGHT = 9
    WRIST_RIGHT = 10
    HAND_RIGHT = 11
    HIP_LEFT = 12
    KNEE_LEFT = 13
    ANKLE_LEFT = 14
    FOOT_LEFT = 15
    HIP_RIGHT = 16
    KNEE_RIGHT = 17
    ANKLE_RIGHT = 18
    FOOT_RIGHT = 19
    SPINE_SHOULDER = 20
    HAND_TIP_LEFT = 21
    THUMB_LEFT = 22
    HAND_TIP_RIGHT = 23
    THUMB_RIGHT = 24


class GaitDirection(Enum):
    """Walking path relative to the sensor: toward it (Z) or across it (X)."""

    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"


@dataclass(frozen=True)
class Point3:
    """One joint position in meters. Finiteness is enforced by validate_sequence."""

    x: float
    y: float
    z: float


@dataclass(frozen=True)
class SkeletonFrame:
    frame_index: int
    joints: tuple[Point3, ...]

    def joint(self, j: JointIndex | int) -> Point3:
        return self.joints[int(j)]


@dataclass(frozen=True)
class CaptureSequence:
    """Ordered frames of one recorded gait plus its direction and metadata."""

    frames: tuple[SkeletonFrame, ...]
    direction: GaitDirection
    nominal_fps: float = 30.0
    label: str = ""

    def __post_init__(self):
        if not isinstance(self.frames, tuple):
            object.__setattr__(self, "frames", tuple(self.frames))

    def __len__(self) -> int:
        return len(self.frames)


@dataclass(frozen=True)
class SkeletonEdge:
    parent: JointIndex
    child: JointIndex


def _edges() -> tuple[SkeletonEdge, ...]:
    J = JointIndex
    pairs = [
        # spine chain
        (J.SPINE_BASE, J.SPINE_MID),
        (J.SPINE_MID, J.SPINE_SHOULDER),
        (J.SPINE_SHOULDER, J.NECK),
        (J.NECK, J.HEAD),
        # left arm
        (J.SPINE_SHOULDER, J.SHOULDER_LEFT),
        (J.SHOULDER_LEFT, J.ELBOW_LEFT),
        (J.ELBOW_LEFT, J.WRIST_LEFT),
        (J.WRIST_LEFT, J.HAND_LEFT),
        (J.HAND_LEFT, J.HAND_TIP_LEFT),
        (J.HAND_LEFT, J.THUMB_LEFT),
        # right arm
        (J.SPINE_SHOULDER, J.SHOULDER_RIGHT),
        (J.SHOULDER_RIGHT, J.ELBOW_RIGHT),
        (J.ELBOW_RIGHT, J.WRIST_RIGHT),
        (J.WRIST_RIGHT, J.HAND_RIGHT),
        (J.HAND_RIGHT, J.HAND_TIP_RIGHT),
        (J.HAND_RIGHT, J.THUMB_RIGHT),
        # left leg
        (J.SPINE_BASE, J.HIP_LEFT),
        (J.HIP_LEFT, J.KNEE_LEFT),
        (J.KNEE_LEFT, J.ANKLE_LEFT),
        (J.ANKLE_LEFT, J.FOOT_LEFT),
        # right leg
        (J.SPINE_BASE, J.HIP_RIGHT),
        (J.HIP_RIGHT, J.KNEE_RIGHT),
        (J.KNEE_RIGHT, J.ANKLE_RIGHT),
        (J.ANKLE_RIGHT, J.FOOT_RIGHT),
    ]
    return tuple(SkeletonEdge(p, c) for p, c in pairs)


#: The fixed 24-edge tree connecting the 25 joints.
SKELETON_EDGES: tuple[SkeletonEdge, ...] = _edges()


def validate_sequence(raw: CaptureSequence) -> CaptureSequence:
    """Return ``raw`` unchanged iff every invariant holds.

    Checks, in order: non-empty, 25 joints per frame, finite coordinates,
    strictly increasing frame indices. The first violation found is reported
    with its frame index, joint, and field. Idempotent.
    """
    if len(raw.frames) == 0:
        raise EmptySequenceError("capture has no frames")
    prev_index = None
    for frame in raw.frames:
        if len(frame.joints) != JOINT_COUNT:
            raise WrongJointCountError(frame.frame_index, len(frame.joints))
        for j, p in enumerate(frame.joints):
            for name, value in (("x", p.x), ("y", p.y), ("z", p.z)):
                if not math.isfinite(value):
                    raise NonFiniteCoordinateError(frame.frame_index, j, name)
        if prev_index is not None and frame.frame_index <= prev_index:
            raise NonMonotonicFrameIndexError(
                f"frame index {frame.frame_index} does not increase after {prev_index}"
            )
        prev_index = frame.frame_index
    return raw


def joint_track(seq: CaptureSequence, j: JointIndex | int) -> list[Point3]:
    """Positions of joint ``j`` across all frames, in frame order."""
    idx = int(j)
    return [frame.joints[idx] for frame in seq.frames]
