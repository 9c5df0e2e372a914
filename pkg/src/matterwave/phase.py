"""Phase laws for interferometers with moving segments.

The per-segment law: a segment of oriented length dL moving with velocity V
shifts the accumulated phase by (2*pi / v*lambda) * (V . dL), where v is the
particle speed and lambda the wavelength at rest. Everything else in this
module is an aggregate or a special case of that law:

  * summing over a closed loop under rigid rotation gives the Sagnac phase
    (4*pi / v*lambda) * (Omega . A),
  * summing over a closed two-path loop under uniform translation gives
    exactly zero,
  * a two-path layout whose starts are separated by an opening D retains
    (2*pi / v*lambda) * (V . D) under uniform translation.

Velocities are sampled at segment midpoints, which makes each per-segment
dot product exact for the rigid (affine) fields in scope. Phases are kept
unwrapped; fringe reduction happens in the experiment module.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .kinematics import enclosed_area_vector, velocity_at
from .model import (
    C_LIGHT,
    BeamPath,
    BoostDomainError,
    ConfigKind,
    GeometryError,
    InterferometerConfig,
    MotionField,
    ParticleWave,
    PhaseResult,
    Segment,
    SegmentContribution,
    Vec3,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SegmentPhase:
    """Rest phase, moving phase, and their difference for one segment."""

    rest_phase_rad: float
    moving_phase_rad: float
    increment_rad: float


def rest_phase(wave: ParticleWave, length: float) -> float:
    """Phase accumulated along a segment at rest: 2*pi * length / lambda."""
    if length < 0.0 or not math.isfinite(length):
        raise GeometryError(f"length must be non-negative, got {length!r}")
    return TWO_PI * length / wave.wavelength_lambda


def boost_factor(wave: ParticleWave, speed_parallel: float) -> float:
    """Wavelength-compression factor 1 + V_parallel / v for a moving segment.

    ``speed_parallel`` is the component of the segment velocity along the
    beam direction (V*cos(theta)). Raises when the factor is not positive:
    the slow-motion model does not cover a segment receding as fast as the
    particles travel.
    """
    factor = 1.0 + speed_parallel / wave.speed_v
    if factor <= 0.0:
        raise BoostDomainError(
            f"segment speed along the beam ({speed_parallel!r} m/s) cancels or exceeds "
            f"the particle speed ({wave.speed_v!r} m/s); phase model does not apply"
        )
    return factor


def boosted_wavelength(wave: ParticleWave, speed_V: float, cos_theta: float) -> float:
    """Wavelength seen in a segment moving with speed V at angle theta.

    lambda' = lambda / (1 + V*cos(theta)/v): the particles entering the
    moving segment are faster or slower by the segment's velocity component
    along the beam, and the frequency is unchanged.
    """
    if abs(cos_theta) > 1.0 or not math.isfinite(cos_theta):
        raise GeometryError(f"cos_theta must lie in [-1, 1], got {cos_theta!r}")
    return wave.wavelength_lambda / boost_factor(wave, speed_V * cos_theta)


def moving_phase(wave: ParticleWave, length: float, speed_V: float, cos_theta: float) -> float:
    """Phase accumulated along a moving segment: 2*pi*(length/lambda) * boost."""
    if abs(cos_theta) > 1.0 or not math.isfinite(cos_theta):
        raise GeometryError(f"cos_theta must lie in [-1, 1], got {cos_theta!r}")
    return rest_phase(wave, length) * boost_factor(wave, speed_V * cos_theta)


def segment_phase_increment(
    wave: ParticleWave, segment: Segment, field: MotionField
) -> SegmentPhase:
    """Phase increment of one moving segment over the same segment at rest.

    The increment is (2*pi / v*lambda) * (V . dL) with V evaluated at the
    segment midpoint; the rest and moving phases are reported alongside.
    Reversing the segment orientation flips the increment's sign.
    """
    v_mid = velocity_at(field, segment.midpoint)
    length = segment.length
    v_parallel = v_mid.dot(segment.direction)
    rest = rest_phase(wave, length)
    moving = rest * boost_factor(wave, v_parallel)
    increment = (TWO_PI / wave.v_lambda) * v_mid.dot(segment.delta)
    return SegmentPhase(rest_phase_rad=rest, moving_phase_rad=moving, increment_rad=increment)


def path_phase(
    wave: ParticleWave,
    path: BeamPath,
    field: MotionField,
    *,
    path_id: str = "I",
) -> PhaseResult:
    """Summed per-segment increments along a beam path, with breakdown.

    Equals (2*pi / v*lambda) times the line integral of V along the path.
    ``path_id`` is only a label recorded in the breakdown entries.
    """
    contribs = []
    for index, seg in enumerate(path.segments):
        inc = segment_phase_increment(wave, seg, field).increment_rad
        contribs.append(SegmentContribution(segment_index=index, path_id=path_id, phase_rad=inc))
    total = math.fsum(c.phase_rad for c in contribs)
    return PhaseResult(
        total_phase_rad=total,
        per_segment=tuple(contribs),
        v_lambda=wave.v_lambda,
    )


def two_path_difference(config: InterferometerConfig) -> PhaseResult:
    """Phase difference between the two beams: beam II minus beam I.

    The merged breakdown keeps each contribution with the sign it enters
    the difference (beam II positive, beam I negated), so the entries
    still sum to the total.
    """
    result_ii = path_phase(config.wave, config.path_II, config.motion, path_id="II")
    result_i = path_phase(config.wave, config.path_I, config.motion, path_id="I")
    merged = list(result_ii.per_segment) + [
        SegmentContribution(c.segment_index, c.path_id, -c.phase_rad)
        for c in result_i.per_segment
    ]
    total = math.fsum(c.phase_rad for c in merged)
    return PhaseResult(
        total_phase_rad=total,
        per_segment=tuple(merged),
        v_lambda=config.wave.v_lambda,
    )


def interference_loop(config: InterferometerConfig) -> BeamPath:
    """The closed contour beam II forward then beam I backward.

    The circulation around this contour carries the same sign as
    ``two_path_difference``, which subtracts beam I from beam II.
    """
    if config.kind is not ConfigKind.CLOSED_LOOP:
        raise GeometryError("only closed-loop configurations define an interference loop")
    back = tuple(reversed(config.path_I.vertices))
    return BeamPath(config.path_II.vertices + back[1:])


def sagnac_area_phase(wave: ParticleWave, loop: BeamPath, field: MotionField) -> float:
    """Rotation phase from the area form: (4*pi / v*lambda) * (Omega . A).

    A is the signed vector area of the closed loop. Any uniform translation
    part of the field contributes nothing around a closed loop and is
    ignored here by construction.
    """
    if not loop.closed():
        raise GeometryError("the area form requires a closed loop")
    area = enclosed_area_vector(loop)
    return (4.0 * math.pi / wave.v_lambda) * field.omega.dot(area)


def open_loop_phase(wave: ParticleWave, opening_D: Vec3, velocity_V: Vec3) -> float:
    """Translational phase of an open two-beam layout: (2*pi / v*lambda) * (V . D).

    D is the displacement between the two beam starting points, oriented so
    that it matches the beam-II-minus-beam-I difference convention (see
    ``translation_opening``). Only the opening survives: the shared arm
    geometry cancels segment by segment.
    """
    if opening_D.norm() == 0.0:
        raise GeometryError("open-loop phase requires a nonzero opening")
    return (TWO_PI / wave.v_lambda) * velocity_V.dot(opening_D)


def translation_opening(config: InterferometerConfig) -> Vec3:
    """Opening displacement that multiplies V in the open-loop phase law.

    Because the two beams share their endpoint, the two-path difference
    under uniform translation reduces to (2*pi / v*lambda) * V . (start_I -
    start_II); this function returns that surviving vector. It points from
    beam II's start to beam I's start, i.e. opposite to ``opening_vector``.
    """
    if config.kind is ConfigKind.CLOSED_LOOP:
        raise GeometryError("a closed-loop configuration has no opening")
    return config.path_I.start - config.path_II.start


def gse_light_phase(wavelength: float, segment_V: Vec3, delta_L: Vec3) -> float:
    """Light-wave counterpart for a counter-propagating loop segment.

    A waveguide segment dL moving with velocity V shifts the phase between
    the two counter-propagating beams by (4*pi / c*lambda) * (V . dL); the
    factor is doubled relative to the single-beam matter-wave law because
    both directions around the loop contribute.
    """
    if not (wavelength > 0.0 and math.isfinite(wavelength)):
        raise GeometryError(f"wavelength must be positive, got {wavelength!r}")
    return (4.0 * math.pi / (C_LIGHT * wavelength)) * segment_V.dot(delta_L)
