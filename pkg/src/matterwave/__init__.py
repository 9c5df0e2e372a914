"""Phase simulation for matter-wave interferometers with moving segments.

The package computes the phase difference between two beam paths when the
apparatus translates, rotates, or both, from the per-segment law
(2*pi / v*lambda) * (V . dL), and cross-checks the rotational (Sagnac) and
open-loop translational consequences against independent numerical oracles.
"""
from .experiment import (
    FigureKind,
    FringeReading,
    PropertyCheck,
    SweepResult,
    SweepRow,
    VerifyReport,
    build_config,
    fringe_reading,
    sensitivity_sweep,
    verify_suite,
)
from .kinematics import (
    CurlEstimate,
    circulation,
    curl_fd,
    enclosed_area_vector,
    velocity_at,
)
from .model import (
    C_LIGHT,
    H_PLANCK,
    HBAR,
    PARTICLE_MASSES_KG,
    BeamPath,
    BoostDomainError,
    ConfigKind,
    GeometryError,
    InterferometerConfig,
    MatterWaveError,
    MotionField,
    ParticleWave,
    PhaseResult,
    Segment,
    SegmentContribution,
    Vec3,
    WaveError,
    make_particle_wave,
    opening_vector,
)
from .phase import (
    SegmentPhase,
    boosted_wavelength,
    gse_light_phase,
    interference_loop,
    moving_phase,
    open_loop_phase,
    path_phase,
    rest_phase,
    sagnac_area_phase,
    segment_phase_increment,
    translation_opening,
    two_path_difference,
)
from .scene import (
    SceneDocument,
    SceneError,
    config_from_scene,
    parse_scene,
    serialize_scene,
)

__version__ = "0.1.0"

__all__ = [
    "BeamPath",
    "BoostDomainError",
    "C_LIGHT",
    "ConfigKind",
    "CurlEstimate",
    "FigureKind",
    "FringeReading",
    "GeometryError",
    "H_PLANCK",
    "HBAR",
    "InterferometerConfig",
    "MatterWaveError",
    "MotionField",
    "PARTICLE_MASSES_KG",
    "ParticleWave",
    "PhaseResult",
    "PropertyCheck",
    "SceneDocument",
    "SceneError",
    "Segment",
    "SegmentContribution",
    "SegmentPhase",
    "SweepResult",
    "SweepRow",
    "Vec3",
    "VerifyReport",
    "WaveError",
    "boosted_wavelength",
    "build_config",
    "circulation",
    "config_from_scene",
    "curl_fd",
    "enclosed_area_vector",
    "fringe_reading",
    "gse_light_phase",
    "interference_loop",
    "make_particle_wave",
    "moving_phase",
    "open_loop_phase",
    "opening_vector",
    "parse_scene",
    "path_phase",
    "rest_phase",
    "sagnac_area_phase",
    "segment_phase_increment",
    "sensitivity_sweep",
    "serialize_scene",
    "translation_opening",
    "two_path_difference",
    "velocity_at",
    "verify_suite",
]
