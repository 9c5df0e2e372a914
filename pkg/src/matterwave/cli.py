"""Command-line surface: scene in, numbers out.

Subcommands::

    phase      two-beam phase difference of the scene
    sagnac     rotation phase by loop integral and by area formula, compared
    translate  open-loop translational phase of the scene
    sweep      phase versus speed grid with the one-fringe speed
    fringes    fringe readings over a phase-offset grid around the scene phase
    verify     randomized self-check suite, deterministic by seed

Results go to stdout unless ``--out`` names a file. Exit codes: 0 success,
1 input error, 2 verification failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import asdict

from .experiment import (
    SweepResult,
    VerifyReport,
    fringe_reading,
    sensitivity_sweep,
    verify_suite,
)
from .kinematics import circulation, enclosed_area_vector
from .model import MatterWaveError, PhaseResult
from .phase import (
    TWO_PI,
    interference_loop,
    open_loop_phase,
    sagnac_area_phase,
    translation_opening,
    two_path_difference,
)
from .scene import SceneError, config_from_scene, parse_scene

PROG = "matterwave"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Replace argparse's sys.exit(2) with a catchable error so run_command
    # can keep the documented exit-code contract.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(f"{message}\n{self.format_usage()}")


def _float_repr(x: float) -> str:
    return repr(float(x))


def _csv_lines(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_float_repr(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _json_text(payload) -> str:
    import json

    return json.dumps(payload, indent=2) + "\n"


def _phase_payload(result: PhaseResult, breakdown: bool) -> dict:
    payload = {
        "total_phase_rad": result.total_phase_rad,
        "fringe_count": result.total_phase_rad / TWO_PI,
        "v_lambda_m2ps": result.v_lambda,
        "samples_per_segment": result.samples_per_segment,
    }
    if breakdown:
        payload["per_segment"] = [
            {"path_id": c.path_id, "segment_index": c.segment_index, "phase_rad": c.phase_rad}
            for c in result.per_segment
        ]
    return payload


def emit_results(result, fmt: str, breakdown: bool = False) -> bytes:
    """Serialize a result to CSV or JSON bytes (LF line endings, '.' decimals)."""
    if fmt not in ("csv", "json"):
        raise MatterWaveError(f"unknown output format {fmt!r}")

    if isinstance(result, SweepResult):
        if fmt == "csv":
            rows = [[r.V_mps, r.phase_rad, r.fringe_count] for r in result.rows]
            return _csv_lines(["V_mps", "phase_rad", "fringe_count"], rows).encode()
        payload = {
            "rows": [asdict(r) for r in result.rows],
            "v_full_fringe_mps": result.v_full_fringe_mps,
            "bracket_mps": list(result.bracket) if result.bracket else None,
            "opening_m": list(result.opening_m.as_tuple()),
            "cos_theta": result.cos_theta,
            "v_lambda_m2ps": result.v_lambda,
        }
        return _json_text(payload).encode()

    if isinstance(result, PhaseResult):
        payload = _phase_payload(result, breakdown)
        if fmt == "csv":
            rows = [[k, v] for k, v in payload.items() if not isinstance(v, list)]
            if breakdown:
                rows += [
                    [f"per_segment.{c['path_id']}.{c['segment_index']}", c["phase_rad"]]
                    for c in payload.get("per_segment", [])
                ]
            return _csv_lines(["quantity", "value"], rows).encode()
        return _json_text(payload).encode()

    if isinstance(result, VerifyReport):
        payload = {
            "seed": result.seed,
            "passed": result.passed,
            "checks": [asdict(c) for c in result.checks],
        }
        if fmt == "csv":
            rows = [
                [c.name, c.samples, c.max_violation, c.tolerance, str(c.passed).lower()]
                for c in result.checks
            ]
            return _csv_lines(
                ["check", "samples", "max_violation", "tolerance", "passed"], rows
            ).encode()
        return _json_text(payload).encode()

    if isinstance(result, dict):
        if fmt == "csv":
            if "rows" in result:
                header = list(result["rows"][0].keys())
                rows = [[row[k] for k in header] for row in result["rows"]]
                return _csv_lines(header, rows).encode()
            rows = [[k, v] for k, v in result.items() if isinstance(v, (int, float))]
            return _csv_lines(["quantity", "value"], rows).encode()
        return _json_text(result).encode()

    raise MatterWaveError(f"cannot serialize {type(result).__name__}")


def _build_parser() -> _Parser:
    parser = _Parser(prog=PROG, description="moving-segment interferometer phase calculator")
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add(name: str, help_text: str, scene: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if scene:
            p.add_argument("--scene", required=True, help="scene file (JSON)")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        return p

    p = add("phase", "two-beam phase difference of the scene")
    p.add_argument("--breakdown", action="store_true", help="include per-segment contributions")

    add("sagnac", "rotation phase: loop integral vs area formula")
    add("translate", "open-loop translational phase")

    p = add("sweep", "phase versus apparatus speed")
    p.add_argument("--vmin", type=float, default=0.0, help="lowest speed, m/s")
    p.add_argument("--vmax", type=float, required=True, help="highest speed, m/s")
    p.add_argument("--steps", type=int, default=21)

    p = add("fringes", "fringe readings over a phase-offset grid")
    p.add_argument("--steps", type=int, default=9)

    p = add("verify", "randomized self-check suite", scene=False)
    p.add_argument("--seed", type=int, default=0)

    return parser


def _load_config(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SceneError(f"cannot read scene file {path!r}: {exc}") from exc
    doc = parse_scene(text)
    return doc, config_from_scene(doc)


def _write(data: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.write(data.decode())
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def run_command(argv: list[str]) -> int:
    """Run one CLI invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"{PROG}: error: {exc}\n")
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    if args.command is None:
        sys.stderr.write(parser.format_usage())
        return 1

    try:
        if args.command == "verify":
            report = verify_suite(seed=args.seed)
            _write(emit_results(report, args.format or "json"), args.out)
            return 0 if report.passed else 2

        doc, config = _load_config(args.scene)
        fmt = args.format or doc.output.format

        if args.command == "phase":
            breakdown = args.breakdown or doc.output.breakdown
            result = two_path_difference(config)
            _write(emit_results(result, fmt, breakdown=breakdown), args.out)
            return 0

        if args.command == "sagnac":
            loop = interference_loop(config)
            loop_integral = (TWO_PI / config.wave.v_lambda) * circulation(config.motion, loop)
            area_form = sagnac_area_phase(config.wave, loop, config.motion)
            denom = max(abs(loop_integral), abs(area_form))
            payload = {
                "loop_integral_phase_rad": loop_integral,
                "area_formula_phase_rad": area_form,
                "relative_difference": (
                    abs(loop_integral - area_form) / denom if denom > 0.0 else 0.0
                ),
                "enclosed_area_m2": list(enclosed_area_vector(loop).as_tuple()),
                "v_lambda_m2ps": config.wave.v_lambda,
            }
            _write(emit_results(payload, fmt), args.out)
            return 0

        if args.command == "translate":
            opening = translation_opening(config)
            velocity = config.motion.translation
            phase = open_loop_phase(config.wave, opening, velocity)
            cos_theta = (
                velocity.unit().dot(opening.unit()) if velocity.norm() > 0.0 else None
            )
            payload = {
                "phase_rad": phase,
                "fringe_count": phase / TWO_PI,
                "opening_m": list(opening.as_tuple()),
                "opening_magnitude_m": opening.norm(),
                "translation_mps": list(velocity.as_tuple()),
                "cos_theta": cos_theta,
                "v_lambda_m2ps": config.wave.v_lambda,
            }
            _write(emit_results(payload, fmt), args.out)
            return 0

        if args.command == "sweep":
            sweep = sensitivity_sweep(config, args.vmin, args.vmax, args.steps)
            _write(emit_results(sweep, fmt), args.out)
            return 0

        if args.command == "fringes":
            if args.steps < 2:
                raise MatterWaveError(f"--steps must be at least 2, got {args.steps}")
            base = two_path_difference(config).total_phase_rad
            rows = []
            for i in range(args.steps):
                offset = TWO_PI * i / (args.steps - 1)
                reading = fringe_reading(base + offset)
                rows.append(
                    {
                        "offset_rad": offset,
                        "phase_rad": reading.phase_rad,
                        "normalized_intensity": reading.normalized_intensity,
                        "fringe_count": reading.fringe_count,
                    }
                )
            _write(emit_results({"base_phase_rad": base, "rows": rows}, fmt), args.out)
            return 0

        raise MatterWaveError(f"unknown subcommand {args.command!r}")
    except MatterWaveError as exc:
        sys.stderr.write(f"{PROG}: error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
