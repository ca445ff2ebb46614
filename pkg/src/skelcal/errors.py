"""Exception hierarchy for capture validation, calibration, and file handling."""

from __future__ import annotations


class CalibrationError(Exception):
    """Base class for all skelcal errors.

    ``stage`` is set by the pipeline when an error propagates out of a named
    calibration stage, so callers see where a multi-stage run failed without
    losing the concrete exception type.
    """

    stage: str | None = None

    def __str__(self) -> str:
        base = super().__str__()
        if self.stage:
            return f"[stage: {self.stage}] {base}"
        return base


# -- sequence validation ----------------------------------------------------

class EmptySequenceError(CalibrationError):
    pass


class NonFiniteCoordinateError(CalibrationError):
    def __init__(self, frame_index: int, joint: int, field: str):
        super().__init__(
            f"non-finite coordinate at frame {frame_index}, joint {joint}, field {field}"
        )
        self.frame_index = frame_index
        self.joint = joint
        self.field = field


class WrongJointCountError(CalibrationError):
    def __init__(self, frame_index: int, count: int):
        super().__init__(f"frame {frame_index} has {count} joints, expected 25")
        self.frame_index = frame_index
        self.count = count


class NonMonotonicFrameIndexError(CalibrationError):
    pass


# -- numerics ----------------------------------------------------------------

class EmptyInputError(CalibrationError):
    pass


class NonPositiveValueError(CalibrationError):
    pass


class InsufficientPointsError(CalibrationError):
    pass


class DegenerateSystemError(CalibrationError):
    pass


# -- tilt estimation ---------------------------------------------------------

class DegenerateSpineError(CalibrationError):
    pass


class NoUsableFramesError(CalibrationError):
    pass


class MixedSignAnglesError(CalibrationError):
    pass


class ZeroAngleError(CalibrationError):
    pass


# -- perspective estimation --------------------------------------------------

class InsufficientDepthTravelError(CalibrationError):
    pass


class WrongDirectionError(CalibrationError):
    pass


class BetaOutOfRangeError(CalibrationError):
    pass


class NoUsableGaitsError(CalibrationError):
    def __init__(self, joint: int):
        super().__init__(f"no gait provides usable depth travel for joint {joint}")
        self.joint = joint


# -- synthetic generation ----------------------------------------------------

class InvalidScenarioError(CalibrationError):
    pass


class FixedPointDivergenceError(CalibrationError):
    pass


# -- file I/O ----------------------------------------------------------------

class ParseError(CalibrationError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MissingJointError(CalibrationError):
    def __init__(self, frame_index: int, joint: int):
        super().__init__(f"frame {frame_index} is missing joint {joint}")
        self.frame_index = frame_index
        self.joint = joint


class IoFailureError(CalibrationError):
    pass


class SchemaError(CalibrationError):
    def __init__(self, field: str, message: str):
        super().__init__(f"field '{field}': {message}")
        self.field = field
