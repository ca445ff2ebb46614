import math

import pytest
from hypothesis import given, strategies as st

from skelcal import (
    CaptureSequence,
    DistortionSpec,
    GaitDirection,
    JOINT_COUNT,
    Point3,
    SkeletonFrame,
    TiltModel,
    TiltParams,
    aggregate_inclination,
    distort_tilt,
    frame_inclination,
    gait_inclination,
    tilt_correct_point,
    tilt_correct_sequence,
)
from skelcal.errors import (
    DegenerateSpineError,
    EmptyInputError,
    MixedSignAnglesError,
    NoUsableFramesError,
    ZeroAngleError,
)


def spine_frame(index, base, mid):
    """Frame with the two spine joints set; everything else neutral."""
    joints = [Point3(0.0, 1.0, 2.5) for _ in range(JOINT_COUNT)]
    joints[0], joints[1] = base, mid
    return SkeletonFrame(index, tuple(joints))


def frame_with_tilt(index, tilt_rad, z0=2.5):
    # estimator reads atan2(z_base - z_mid, y_mid - y_base)
    rise = 0.3
    return spine_frame(
        index, Point3(0.0, 0.9, z0), Point3(0.0, 1.2, z0 - rise * math.tan(tilt_rad))
    )


class TestFrameInclination:
    def test_vertical_spine_gives_zero(self):
        frame = spine_frame(0, Point3(0, 0.90, 2.50), Point3(0, 1.20, 2.50))
        assert frame_inclination(frame) == 0.0

    def test_known_spine_geometry(self):
        # upper spine joint 3 cm deeper over a 30 cm rise
        frame = spine_frame(0, Point3(0, 0.90, 2.50), Point3(0, 1.20, 2.53))
        assert frame_inclination(frame) == pytest.approx(-0.0996686524911614, abs=1e-12)

    def test_degenerate_spine_rejected(self):
        frame = spine_frame(0, Point3(0, 1.00, 2.0), Point3(0.1, 1.00, 2.1))
        with pytest.raises(DegenerateSpineError):
            frame_inclination(frame)

    def test_recovers_injected_angle_from_round_trip(self):
        for deg in (1, 3, 7, 10):
            tilt = math.radians(deg)
            assert frame_inclination(frame_with_tilt(0, tilt)) == pytest.approx(tilt, abs=1e-12)


class TestGaitInclination:
    def test_constant_tilt_sequence(self):
        frames = tuple(frame_with_tilt(k, 0.1) for k in range(5))
        result = gait_inclination(CaptureSequence(frames, GaitDirection.VERTICAL))
        assert result.mean_rad == pytest.approx(0.1, abs=1e-12)
        assert len(result.per_frame_rad) == 5

    def test_mean_of_mixed_frames(self):
        frames = tuple(frame_with_tilt(k, a) for k, a in enumerate((0.08, 0.10, 0.12)))
        result = gait_inclination(CaptureSequence(frames, GaitDirection.VERTICAL))
        assert result.mean_rad == pytest.approx(0.10, abs=1e-12)

    def test_degenerate_frames_skipped(self):
        frames = (
            frame_with_tilt(0, 0.1),
            spine_frame(1, Point3(0, 1.0, 2.0), Point3(0, 1.0, 2.1)),
            frame_with_tilt(2, 0.1),
        )
        result = gait_inclination(CaptureSequence(frames, GaitDirection.VERTICAL))
        assert len(result.per_frame_rad) == 2

    def test_all_degenerate_rejected(self):
        frames = tuple(
            spine_frame(k, Point3(0, 1.0, 2.0), Point3(0, 1.0, 2.1)) for k in range(3)
        )
        with pytest.raises(NoUsableFramesError):
            gait_inclination(CaptureSequence(frames, GaitDirection.VERTICAL))


class TestAggregateInclination:
    def test_singleton(self):
        assert aggregate_inclination([0.1]) == pytest.approx(0.1, abs=1e-12)

    def test_geometric_mean_of_two(self):
        assert aggregate_inclination([0.02, 0.08]) == pytest.approx(0.04, abs=1e-12)

    def test_negative_pair_keeps_sign(self):
        assert aggregate_inclination([-0.02, -0.08]) == pytest.approx(-0.04, abs=1e-12)

    def test_mixed_signs_rejected(self):
        with pytest.raises(MixedSignAnglesError):
            aggregate_inclination([0.02, -0.08])

    def test_zero_rejected(self):
        with pytest.raises(ZeroAngleError):
            aggregate_inclination([0.0, 0.1])

    def test_empty_rejected(self):
        with pytest.raises(EmptyInputError):
            aggregate_inclination([])

    @given(st.floats(min_value=1e-4, max_value=0.4), st.integers(min_value=1, max_value=10))
    def test_n_copies_of_same_angle(self, angle, n):
        assert aggregate_inclination([angle] * n) == pytest.approx(angle, abs=1e-12)


class TestTiltCorrectPoint:
    def test_identity_with_zero_params(self):
        p = Point3(0.3, 1.2, 3.4)
        assert tilt_correct_point(p, TiltParams(0.0, 0.0)) == p

    def test_pure_height_offset(self):
        corrected = tilt_correct_point(Point3(0.2, 1.0, 2.0), TiltParams(0.0, 0.75))
        assert corrected == Point3(0.2, 1.75, 2.0)

    def test_worked_example(self):
        corrected = tilt_correct_point(Point3(0.2, 1.0, 2.0), TiltParams(0.1, 0.5))
        assert corrected.x == 0.2
        assert corrected.z == pytest.approx(2.099833416646828, abs=1e-12)
        assert corrected.y == pytest.approx(1.7096335443730355, abs=1e-12)

    @given(
        st.floats(min_value=-2, max_value=2),
        st.floats(min_value=-0.5, max_value=2.5),
        st.floats(min_value=0.8, max_value=5.0),
        st.floats(min_value=-0.49, max_value=0.49),
        st.floats(min_value=0, max_value=2),
    )
    def test_x_never_changes(self, x, y, z, tilt, h):
        assert tilt_correct_point(Point3(x, y, z), TiltParams(tilt, h)).x == x

    @given(
        st.floats(min_value=-0.5, max_value=2.5),
        st.floats(min_value=0.8, max_value=5.0),
        st.floats(min_value=-0.49, max_value=0.49),
        st.floats(min_value=0, max_value=2),
    )
    def test_shear_distort_then_correct_is_identity(self, y, z, tilt, h):
        params = TiltParams(tilt, h)
        spec = DistortionSpec(tilt_rad=tilt, sensor_height_m=h)
        truth = CaptureSequence(
            (SkeletonFrame(0, tuple(Point3(0.0, y, z) for _ in range(JOINT_COUNT))),),
            GaitDirection.VERTICAL,
        )
        back = tilt_correct_sequence(distort_tilt(truth, spec), params)
        got = back.frames[0].joints[0]
        assert got.y == pytest.approx(y, abs=1e-9)
        assert got.z == pytest.approx(z, abs=1e-9)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            TiltParams(math.pi / 2, 0.0)
        with pytest.raises(ValueError):
            TiltParams(0.0, -0.1)


class TestTiltCorrectSequence:
    def test_zero_params_preserve_sequence(self, truth_walk):
        out = tilt_correct_sequence(truth_walk, TiltParams(0.0, 0.0))
        assert out.frames == truth_walk.frames
        assert out.direction is truth_walk.direction

    def test_single_frame_structure_preserved(self):
        frame = frame_with_tilt(7, 0.05)
        seq = CaptureSequence((frame,), GaitDirection.HORIZONTAL, 25.0, "one")
        out = tilt_correct_sequence(seq, TiltParams(0.1, 0.4))
        assert len(out.frames) == 1
        assert out.frames[0].frame_index == 7
        assert out.nominal_fps == 25.0
        assert out.label == "one"

    def test_recovers_truth_from_shear_distortion(self, truth_walk):
        params = TiltParams(math.radians(7), 0.75)
        raw = distort_tilt(
            truth_walk,
            DistortionSpec(tilt_rad=params.tilt_rad, sensor_height_m=params.sensor_height_m),
        )
        back = tilt_correct_sequence(raw, params)
        worst = max(
            max(abs(a.x - b.x), abs(a.y - b.y), abs(a.z - b.z))
            for fa, fb in zip(back.frames, truth_walk.frames)
            for a, b in zip(fa.joints, fb.joints)
        )
        assert worst <= 1e-9


class TestRotationModelRecovery:
    def test_inclination_recovered_within_quarter_degree(self, truth_walk):
        for deg in (1, 2, 5, 7, 10):
            tilt = math.radians(deg)
            raw = distort_tilt(
                truth_walk,
                DistortionSpec(tilt_model=TiltModel.ROTATION, tilt_rad=tilt, sensor_height_m=0.75),
            )
            estimate = gait_inclination(raw).mean_rad
            assert abs(estimate - tilt) <= math.radians(0.25)

    def test_upright_truth_frames_estimate_zero(self, truth_walk):
        for frame in truth_walk.frames[::10]:
            assert abs(frame_inclination(frame)) <= 1e-12
