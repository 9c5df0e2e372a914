"""Core domain types, unit conventions, and physical constants.

Everything is strict SI (m, s, kg, rad); no unit conversion happens inside
the engine. All types are immutable after construction and safe to share
between concurrent tasks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

# Physical constants (exact SI values where defined exact).
H_PLANCK = 6.62607015e-34      # J*s, exact by SI definition
HBAR = H_PLANCK / (2.0 * math.pi)
C_LIGHT = 2.99792458e8         # m/s, exact by SI definition

# CODATA-2018 particle masses, kg.
PARTICLE_MASSES_KG = {
    "electron": 9.1093837015e-31,
    "proton": 1.67262192369e-27,
    "neutron": 1.67492749804e-27,
}

# Geometric coincidence tolerance. Far below any physical scale in use,
# so ideal-geometry checks never bite on real configurations.
ENDPOINT_TOL = 1e-12  # m

# Relative mismatch allowed between a user-supplied wavelength and the
# de Broglie wavelength implied by mass and speed.
WAVE_CONSISTENCY_RTOL = 1e-9


class MatterWaveError(Exception):
    """Base class for every error raised by this package."""


class WaveError(MatterWaveError):
    """Invalid particle-wave parameters."""


class GeometryError(MatterWaveError):
    """Degenerate or inconsistent geometry."""


class BoostDomainError(MatterWaveError):
    """Segment speed drives the wavelength-compression factor to zero or below.

    The slow-segment model assumes the segment speed component along the
    beam stays above -v; outside that regime the formulas do not apply and
    the engine fails loudly instead of extrapolating.
    """


def _require_finite(name: str, value: float) -> float:
    if not math.isfinite(value):
        raise GeometryError(f"{name} must be finite, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class Vec3:
    """Immutable 3-vector. Units depend on context (m, m/s, or rad/s)."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", _require_finite("x", self.x))
        object.__setattr__(self, "y", _require_finite("y", self.y))
        object.__setattr__(self, "z", _require_finite("z", self.z))

    @classmethod
    def zero(cls) -> "Vec3":
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def from_iterable(cls, xyz) -> "Vec3":
        vals = list(xyz)
        if len(vals) != 3:
            raise GeometryError(f"expected 3 components, got {len(vals)}")
        return cls(*(float(v) for v in vals))

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def __mul__(self, scalar: float) -> "Vec3":
        return Vec3(self.x * scalar, self.y * scalar, self.z * scalar)

    __rmul__ = __mul__

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3") -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def unit(self) -> "Vec3":
        n = self.norm()
        if n == 0.0:
            raise GeometryError("cannot normalize a zero vector")
        return Vec3(self.x / n, self.y / n, self.z / n)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class ParticleWave:
    """Particle species and wave parameters.

    ``v_lambda`` is the product of particle speed and wavelength, the single
    combination every phase formula depends on. When a mass is recorded,
    the wavelength satisfies the de Broglie relation lambda = h/(m*v), so
    v_lambda = h/m.
    """

    speed_v: float                 # m/s
    wavelength_lambda: float       # m
    mass: float | None = None      # kg
    v_lambda: float = field(init=False)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.speed_v) and self.speed_v > 0.0):
            raise WaveError(f"speed_v must be positive and finite, got {self.speed_v!r}")
        if not (math.isfinite(self.wavelength_lambda) and self.wavelength_lambda > 0.0):
            raise WaveError(
                f"wavelength_lambda must be positive and finite, got {self.wavelength_lambda!r}"
            )
        if self.mass is not None:
            if not (math.isfinite(self.mass) and self.mass > 0.0):
                raise WaveError(f"mass must be positive and finite, got {self.mass!r}")
            implied = H_PLANCK / (self.mass * self.speed_v)
            rel = abs(self.wavelength_lambda - implied) / implied
            if rel > WAVE_CONSISTENCY_RTOL:
                raise WaveError(
                    "wavelength inconsistent with de Broglie relation: "
                    f"given {self.wavelength_lambda!r}, h/(m*v) = {implied!r} "
                    f"(relative mismatch {rel:.3e})"
                )
        object.__setattr__(self, "v_lambda", self.speed_v * self.wavelength_lambda)


def make_particle_wave(
    speed_v: float,
    *,
    mass: float | None = None,
    wavelength: float | None = None,
) -> ParticleWave:
    """Build a ParticleWave from speed plus mass and/or wavelength.

    If the wavelength is omitted it is computed from the de Broglie
    relation h/(mass*speed). If both mass and wavelength are given they
    must agree to 1e-9 relative; the stored wavelength is then recomputed
    from the mass so the de Broglie relation holds exactly as stored.
    """
    if mass is None and wavelength is None:
        raise WaveError("at least one of mass or wavelength is required")
    if mass is not None:
        if not (math.isfinite(mass) and mass > 0.0):
            raise WaveError(f"mass must be positive and finite, got {mass!r}")
        if not (math.isfinite(speed_v) and speed_v > 0.0):
            raise WaveError(f"speed_v must be positive and finite, got {speed_v!r}")
        implied = H_PLANCK / (mass * speed_v)
        if wavelength is not None:
            if wavelength <= 0.0 or not math.isfinite(wavelength):
                raise WaveError(f"wavelength must be positive and finite, got {wavelength!r}")
            rel = abs(wavelength - implied) / implied
            if rel > WAVE_CONSISTENCY_RTOL:
                raise WaveError(
                    "mass and wavelength are inconsistent: "
                    f"h/(m*v) = {implied!r} but wavelength = {wavelength!r} "
                    f"(relative mismatch {rel:.3e})"
                )
        wavelength = implied
    return ParticleWave(speed_v=speed_v, wavelength_lambda=wavelength, mass=mass)


@dataclass(frozen=True)
class Segment:
    """Oriented straight segment; direction is the beam propagation direction."""

    start: Vec3  # m
    end: Vec3    # m

    def __post_init__(self) -> None:
        if self.length == 0.0:
            raise GeometryError(f"segment endpoints coincide: {self.start}")

    @property
    def delta(self) -> Vec3:
        return self.end - self.start

    @property
    def length(self) -> float:
        return self.delta.norm()

    @property
    def direction(self) -> Vec3:
        return self.delta.unit()

    @property
    def midpoint(self) -> Vec3:
        return Vec3(
            0.5 * (self.start.x + self.end.x),
            0.5 * (self.start.y + self.end.y),
            0.5 * (self.start.z + self.end.z),
        )

    def reversed(self) -> "Segment":
        return Segment(self.end, self.start)


@dataclass(frozen=True)
class BeamPath:
    """Oriented polyline of straight segments traversed start to end."""

    vertices: tuple[Vec3, ...]

    def __post_init__(self) -> None:
        verts = tuple(self.vertices)
        if len(verts) < 2:
            raise GeometryError("a beam path needs at least 2 vertices")
        for i in range(len(verts) - 1):
            if (verts[i + 1] - verts[i]).norm() == 0.0:
                raise GeometryError(f"consecutive vertices {i} and {i + 1} coincide")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_points(cls, points) -> "BeamPath":
        return cls(tuple(p if isinstance(p, Vec3) else Vec3.from_iterable(p) for p in points))

    @property
    def start(self) -> Vec3:
        return self.vertices[0]

    @property
    def end(self) -> Vec3:
        return self.vertices[-1]

    @property
    def segments(self) -> tuple[Segment, ...]:
        v = self.vertices
        return tuple(Segment(v[i], v[i + 1]) for i in range(len(v) - 1))

    def closed(self) -> bool:
        return (self.end - self.start).norm() <= ENDPOINT_TOL

    def reversed(self) -> "BeamPath":
        return BeamPath(tuple(reversed(self.vertices)))


@dataclass(frozen=True)
class MotionField:
    """Rigid-motion velocity field V(r) = translation + omega x (r - pivot)."""

    translation: Vec3 = Vec3(0.0, 0.0, 0.0)  # m/s
    omega: Vec3 = Vec3(0.0, 0.0, 0.0)        # rad/s
    pivot: Vec3 = Vec3(0.0, 0.0, 0.0)        # m

    def __add__(self, other: "MotionField") -> "MotionField":
        # Sum of two rigid fields is rigid: fold each pivot into the
        # uniform part (V - omega x pivot) and add angular rates.
        base_self = self.translation - self.omega.cross(self.pivot)
        base_other = other.translation - other.omega.cross(other.pivot)
        return MotionField(
            translation=base_self + base_other,
            omega=self.omega + other.omega,
            pivot=Vec3.zero(),
        )

    def scaled(self, factor: float) -> "MotionField":
        return MotionField(
            translation=self.translation * factor,
            omega=self.omega * factor,
            pivot=self.pivot,
        )


class ConfigKind(Enum):
    """Interferometer archetypes.

    CLOSED_LOOP: both beams share start and end (Mach-Zehnder style loop).
    OPEN_LOOP: beam starts separated by an opening, common endpoint.
    INDEPENDENT_BEAMS: open loop realized by two independent sources.
    EXTRACTED_BEAMS: open loop realized by extracting two narrow beams
    from one wide beam.

    The last three share the same phase model; the distinction is carried
    as metadata for reporting only.
    """

    CLOSED_LOOP = "ClosedLoop"
    OPEN_LOOP = "OpenLoop"
    INDEPENDENT_BEAMS = "IndependentBeams"
    EXTRACTED_BEAMS = "ExtractedBeams"


OPEN_KINDS = (ConfigKind.OPEN_LOOP, ConfigKind.INDEPENDENT_BEAMS, ConfigKind.EXTRACTED_BEAMS)


@dataclass(frozen=True)
class InterferometerConfig:
    """Two beam paths, the wave they carry, and the motion of the apparatus."""

    path_I: BeamPath
    path_II: BeamPath
    wave: ParticleWave
    motion: MotionField
    kind: ConfigKind

    def __post_init__(self) -> None:
        end_gap = (self.path_I.end - self.path_II.end).norm()
        if end_gap > ENDPOINT_TOL:
            raise GeometryError(
                f"beam paths must share their endpoint, gap is {end_gap:.3e} m"
            )
        start_gap = (self.path_II.start - self.path_I.start).norm()
        if self.kind is ConfigKind.CLOSED_LOOP:
            if start_gap > ENDPOINT_TOL:
                raise GeometryError(
                    f"closed-loop beams must share their start, gap is {start_gap:.3e} m"
                )
        else:
            if start_gap <= ENDPOINT_TOL:
                raise GeometryError(
                    f"{self.kind.value} requires a nonzero opening between beam starts"
                )


def opening_vector(config: InterferometerConfig) -> Vec3:
    """Displacement from beam I's start to beam II's start.

    Only defined for open configurations; the magnitude is the opening
    distance between the two beam starting points.
    """
    if config.kind is ConfigKind.CLOSED_LOOP:
        raise GeometryError("a closed-loop configuration has no opening")
    return config.path_II.start - config.path_I.start


@dataclass(frozen=True)
class SegmentContribution:
    """Signed phase contribution of one segment as it enters a total."""

    segment_index: int
    path_id: str
    phase_rad: float


@dataclass(frozen=True)
class PhaseResult:
    """Phase difference in radians with a per-segment breakdown.

    ``total_phase_rad`` is the exact (fsum) signed sum of the per-segment
    contributions. Phases are unwrapped full radians, never reduced mod 2*pi.
    """

    total_phase_rad: float
    per_segment: tuple[SegmentContribution, ...]
    v_lambda: float
    samples_per_segment: int = 1
