"""Command-line interface: synthesize fixtures, calibrate, apply, diagnose.

Angles cross the CLI boundary in degrees for human convenience; profile files
and all internal computation use radians. Every subcommand exits nonzero on
error, printing the structured error to stderr and never to the data output.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import fileio
from .diagnostics import bone_length_stability, y_diff_to_last
from .errors import CalibrationError
from .perspective import DEFAULT_BETA_JOINTS
from .pipeline import PipelineConfig, apply_profile, calibrate
from .numerics import Polynomial
from .skeleton import GaitDirection, JointIndex
from .synthetic import (
    DistortionSpec,
    TiltModel,
    apply_distortion,
    default_template,
    generate_truth_capture,
)


def _direction(value: str) -> GaitDirection:
    return GaitDirection(value)


def _beta_poly_from_degrees(text: str) -> Polynomial:
    try:
        coeffs = tuple(math.radians(float(v)) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad coefficient list '{text}': {exc}")
    return Polynomial(coeffs)


def _joint_list(text: str) -> tuple[JointIndex, ...]:
    try:
        return tuple(JointIndex(int(v)) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad joint list '{text}': {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skelcal",
        description="Calibrate depth-sensor skeleton captures: estimate sensor tilt "
        "and height-dependent perspective distortion from recorded walks, correct "
        "captures, and report consistency diagnostics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic truth capture and its distorted raw twin")
    p.add_argument("--direction", type=_direction, choices=list(GaitDirection), default=GaitDirection.VERTICAL)
    p.add_argument("--frames", type=int, default=90)
    p.add_argument("--z-start", type=float, default=4.5, help="walk start depth, m")
    p.add_argument("--z-end", type=float, default=1.5, help="walk end depth, m")
    p.add_argument("--tilt-deg", type=float, default=0.0, help="injected sensor tilt, degrees")
    p.add_argument("--tilt-model", choices=["shear", "rotation"], default="shear")
    p.add_argument("--sensor-height", type=float, default=0.0, help="sensor height above ground, m")
    p.add_argument(
        "--beta-coeffs",
        type=_beta_poly_from_degrees,
        default=Polynomial((0.0,)),
        metavar="c0,c1,...",
        help="perspective polynomial in height (degrees per m^k), ascending",
    )
    p.add_argument("--noise-std", type=float, default=0.0, help="Gaussian noise std, m")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-truth", type=Path, required=True)
    p.add_argument("--out-raw", type=Path, required=True)
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("calibrate", help="estimate a calibration profile from vertical gait captures")
    p.add_argument("captures", nargs="+", type=Path, metavar="CAPTURE")
    p.add_argument("--sensor-height", type=float, required=True, help="measured sensor height, m")
    p.add_argument("--degree", type=int, default=2, help="perspective polynomial degree (1-6)")
    p.add_argument("--joints", type=_joint_list, default=DEFAULT_BETA_JOINTS,
                   metavar="J0,J1,...", help="joint indices for perspective estimation")
    p.add_argument("--label", default="", help="free-text provenance label")
    p.add_argument("--out-profile", type=Path, required=True)
    p.set_defaults(handler=cmd_calibrate)

    p = sub.add_parser("apply", help="apply a calibration profile to a capture")
    p.add_argument("--profile", type=Path, required=True)
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--direction", type=_direction, choices=list(GaitDirection), default=GaitDirection.VERTICAL)
    p.set_defaults(handler=cmd_apply)

    p = sub.add_parser("diagnose", help="emit plot-ready consistency reports for a capture")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--profile", type=Path, help="correct with this profile before reporting")
    p.add_argument("--report", choices=["ydiff", "bones", "both"], default="ydiff")
    p.add_argument("--joints", type=_joint_list, default=DEFAULT_BETA_JOINTS,
                   metavar="J0,J1,...", help="joints for the ydiff report")
    p.add_argument("--direction", type=_direction, choices=list(GaitDirection), default=GaitDirection.VERTICAL)
    p.add_argument("--out", type=Path, required=True,
                   help="output CSV; with --report both, writes <out>_ydiff.csv and <out>_bones.csv")
    p.set_defaults(handler=cmd_diagnose)

    return parser


def cmd_synth(args) -> int:
    truth = generate_truth_capture(
        default_template(), args.direction, args.frames, args.z_start, args.z_end
    )
    spec = DistortionSpec(
        tilt_model=TiltModel.SHEAR_INVERSE if args.tilt_model == "shear" else TiltModel.ROTATION,
        tilt_rad=math.radians(args.tilt_deg),
        sensor_height_m=args.sensor_height,
        beta_poly=args.beta_coeffs,
        noise_std_m=args.noise_std,
        seed=args.seed,
    )
    raw = apply_distortion(truth, spec)
    fileio.write_capture(truth, args.out_truth)
    fileio.write_capture(raw, args.out_raw)
    print(f"wrote {args.out_truth} and {args.out_raw} ({args.frames} frames)", file=sys.stderr)
    return 0


def cmd_calibrate(args) -> int:
    gaits = [fileio.read_capture(path, GaitDirection.VERTICAL) for path in args.captures]
    config = PipelineConfig(beta_degree=args.degree, beta_joints=args.joints)
    profile = calibrate(gaits, args.sensor_height, config, created_label=args.label)
    fileio.write_profile(profile, args.out_profile)
    print(
        f"profile: tilt {math.degrees(profile.tilt.tilt_rad):.4f} deg, "
        f"sensor height {profile.tilt.sensor_height_m:.3f} m, "
        f"{profile.gait_count} gaits -> {args.out_profile}",
        file=sys.stderr,
    )
    return 0


def cmd_apply(args) -> int:
    if "calibrated" in args.input.stem:
        print(
            f"warning: {args.input} looks already calibrated; "
            "applying a profile twice re-adds the sensor height",
            file=sys.stderr,
        )
    profile = fileio.read_profile(args.profile)
    seq = fileio.read_capture(args.input, args.direction)
    fileio.write_capture(apply_profile(seq, profile), args.out)
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


def cmd_diagnose(args) -> int:
    seq = fileio.read_capture(args.input, args.direction)
    if args.profile is not None:
        seq = apply_profile(seq, fileio.read_profile(args.profile))

    def write_ydiff(path: Path):
        series = y_diff_to_last(seq, args.joints)
        names = [s.joint.name.lower() for s in series]
        lines = ["frame," + ",".join(names)]
        for k, frame in enumerate(seq.frames):
            row = [str(frame.frame_index)] + [f"{s.per_frame_diff[k]:.9f}" for s in series]
            lines.append(",".join(row))
        fileio._atomic_write(path, "\n".join(lines) + "\n")
        worst = max(s.max_abs for s in series)
        print(f"ydiff report -> {path} (max |y - y_last| = {worst:.4f} m)", file=sys.stderr)

    def write_bones(path: Path):
        report = bone_length_stability(seq)
        lines = ["parent,child,parent_name,child_name,mean_m,std_m,max_abs_dev_m"]
        for e in report.per_edge:
            lines.append(
                f"{int(e.edge.parent)},{int(e.edge.child)},"
                f"{e.edge.parent.name.lower()},{e.edge.child.name.lower()},"
                f"{e.mean_length_m:.9f},{e.std_length_m:.9f},{e.max_abs_dev_m:.9f}"
            )
        fileio._atomic_write(path, "\n".join(lines) + "\n")
        print(f"bone report -> {path} (max std = {report.max_std_m:.6f} m)", file=sys.stderr)

    if args.report == "ydiff":
        write_ydiff(args.out)
    elif args.report == "bones":
        write_bones(args.out)
    else:
        stem = args.out.with_suffix("")
        write_ydiff(Path(f"{stem}_ydiff.csv"))
        write_bones(Path(f"{stem}_bones.csv"))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except CalibrationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
