"""Domain types: construction, invariants, and rejection of bad inputs."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from matterwave import (
    H_PLANCK,
    HBAR,
    PARTICLE_MASSES_KG,
    BeamPath,
    ConfigKind,
    GeometryError,
    InterferometerConfig,
    MotionField,
    ParticleWave,
    Segment,
    Vec3,
    WaveError,
    make_particle_wave,
    opening_vector,
)

NEUTRON = PARTICLE_MASSES_KG["neutron"]

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


class TestConstants:
    def test_hbar_is_h_over_two_pi(self):
        assert HBAR == H_PLANCK / (2.0 * math.pi)

    def test_exact_si_values(self):
        assert H_PLANCK == 6.62607015e-34


class TestVec3:
    def test_arithmetic(self):
        a = Vec3(1.0, 2.0, 3.0)
        b = Vec3(-1.0, 0.5, 2.0)
        assert a + b == Vec3(0.0, 2.5, 5.0)
        assert a - b == Vec3(2.0, 1.5, 1.0)
        assert 2.0 * a == Vec3(2.0, 4.0, 6.0)
        assert a.dot(b) == 1.0 * -1.0 + 2.0 * 0.5 + 3.0 * 2.0

    def test_cross_right_handed(self):
        assert Vec3(1, 0, 0).cross(Vec3(0, 1, 0)) == Vec3(0, 0, 1)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf"), -float("inf")])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(GeometryError):
            Vec3(0.0, bad, 0.0)

    def test_unit_of_zero_vector_fails(self):
        with pytest.raises(GeometryError):
            Vec3(0.0, 0.0, 0.0).unit()


class TestParticleWave:
    def test_neutron_wavelength_from_mass(self):
        # Independent oracle: one-line arithmetic with CODATA-2018 neutron
        # mass and the exact SI Planck constant.
        wave = make_particle_wave(2200.0, mass=NEUTRON)
        expected = 6.62607015e-34 / (1.67492749804e-27 * 2200.0)
        assert wave.wavelength_lambda == pytest.approx(expected, rel=1e-15)
        assert wave.wavelength_lambda == pytest.approx(1.798e-10, rel=1e-3)

    def test_slow_atom_v_lambda(self):
        wave = make_particle_wave(1.0, wavelength=1e-8)
        assert wave.v_lambda == 1e-8
        assert wave.mass is None

    def test_unit_mass_unit_speed_gives_planck(self):
        wave = make_particle_wave(1.0, mass=1.0, wavelength=H_PLANCK)
        assert wave.v_lambda == H_PLANCK

    def test_v_lambda_is_exact_product(self):
        wave = make_particle_wave(3.0, wavelength=2e-9)
        assert wave.v_lambda == 3.0 * 2e-9

    def test_mass_times_v_lambda_is_h(self):
        for name, mass in PARTICLE_MASSES_KG.items():
            wave = make_particle_wave(137.0, mass=mass)
            assert wave.v_lambda * mass == pytest.approx(H_PLANCK, rel=1e-12), name

    def test_consistent_pair_accepted_and_canonicalized(self):
        lam = H_PLANCK / (NEUTRON * 2200.0)
        wave = make_particle_wave(2200.0, mass=NEUTRON, wavelength=lam * (1 + 1e-10))
        assert wave.wavelength_lambda == pytest.approx(lam, rel=1e-15)

    def test_inconsistent_pair_rejected(self):
        with pytest.raises(WaveError):
            make_particle_wave(2200.0, mass=NEUTRON, wavelength=2e-10)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(speed=0.0, wavelength=1e-8),
            dict(speed=-1.0, wavelength=1e-8),
            dict(speed=1.0, wavelength=-1e-8),
            dict(speed=1.0, mass=-1.0),
            dict(speed=1.0),
            dict(speed=float("nan"), wavelength=1e-8),
            dict(speed=1.0, wavelength=float("inf")),
            dict(speed=1.0, mass=float("nan")),
        ],
    )
    def test_bad_inputs_rejected(self, kwargs):
        speed = kwargs.pop("speed")
        with pytest.raises(WaveError):
            make_particle_wave(speed, **kwargs)

    @given(
        speed=st.floats(min_value=1e-3, max_value=1e6),
        mass=st.floats(min_value=1e-30, max_value=1.0),
    )
    def test_de_broglie_consistency_property(self, speed, mass):
        wave = make_particle_wave(speed, mass=mass)
        assert abs(wave.v_lambda * mass - H_PLANCK) / H_PLANCK <= 1e-12

    def test_direct_construction_enforces_de_broglie(self):
        with pytest.raises(WaveError):
            ParticleWave(speed_v=2200.0, wavelength_lambda=1e-10, mass=NEUTRON)


class TestSegment:
    def test_length_and_direction(self):
        seg = Segment(Vec3(0, 0, 0), Vec3(3.0, 4.0, 0.0))
        assert seg.length == 5.0
        assert seg.direction == Vec3(0.6, 0.8, 0.0)
        assert seg.midpoint == Vec3(1.5, 2.0, 0.0)

    def test_zero_length_rejected(self):
        with pytest.raises(GeometryError):
            Segment(Vec3(1, 1, 1), Vec3(1, 1, 1))


class TestBeamPath:
    def test_segments_and_endpoints(self):
        path = BeamPath((Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0)))
        assert len(path.segments) == 2
        assert path.start == Vec3(0, 0, 0)
        assert path.end == Vec3(1, 1, 0)
        assert not path.closed()

    def test_closed_within_tolerance(self):
        path = BeamPath((Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1e-13, 0)))
        assert path.closed()

    def test_too_few_vertices(self):
        with pytest.raises(GeometryError):
            BeamPath((Vec3(0, 0, 0),))

    def test_repeated_vertex_rejected(self):
        with pytest.raises(GeometryError):
            BeamPath((Vec3(0, 0, 0), Vec3(0, 0, 0), Vec3(1, 0, 0)))

    def test_reversed(self):
        path = BeamPath((Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0)))
        assert path.reversed().vertices == tuple(reversed(path.vertices))


class TestMotionField:
    def test_sum_preserves_velocity_field(self, rng):
        f1 = MotionField(Vec3(0.1, -0.2, 0.3), Vec3(0.5, 0.0, 1.0), Vec3(1.0, 2.0, -1.0))
        f2 = MotionField(Vec3(-0.4, 0.0, 0.1), Vec3(0.0, -0.3, 0.2), Vec3(0.0, 1.0, 0.5))
        from matterwave import velocity_at

        total = f1 + f2
        for _ in range(20):
            r = Vec3(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2))
            direct = velocity_at(f1, r) + velocity_at(f2, r)
            combined = velocity_at(total, r)
            assert (combined - direct).norm() < 1e-14


def _square_paths():
    a, b, c, d = Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)
    return BeamPath((a, d, c)), BeamPath((a, b, c))


class TestInterferometerConfig:
    def test_closed_loop_valid(self, unit_wave):
        path_i, path_ii = _square_paths()
        config = InterferometerConfig(path_i, path_ii, unit_wave, MotionField(), ConfigKind.CLOSED_LOOP)
        assert config.kind is ConfigKind.CLOSED_LOOP

    def test_closed_loop_rejects_separated_starts(self, unit_wave):
        path_i = BeamPath((Vec3(0, 1e-6, 0), Vec3(1, 1, 0)))
        path_ii = BeamPath((Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0)))
        with pytest.raises(GeometryError):
            InterferometerConfig(path_i, path_ii, unit_wave, MotionField(), ConfigKind.CLOSED_LOOP)

    def test_open_loop_requires_opening(self, unit_wave):
        path_i, path_ii = _square_paths()
        with pytest.raises(GeometryError):
            InterferometerConfig(path_i, path_ii, unit_wave, MotionField(), ConfigKind.OPEN_LOOP)

    def test_endpoint_mismatch_rejected(self, unit_wave):
        path_i = BeamPath((Vec3(0, 0, 0), Vec3(1, 1, 0)))
        path_ii = BeamPath((Vec3(0, 0, 0), Vec3(1, 0, 0)))
        with pytest.raises(GeometryError):
            InterferometerConfig(path_i, path_ii, unit_wave, MotionField(), ConfigKind.CLOSED_LOOP)

    def test_endpoint_check_symmetric_in_path_order(self, unit_wave):
        path_i, path_ii = _square_paths()
        first = InterferometerConfig(path_i, path_ii, unit_wave, MotionField(), ConfigKind.CLOSED_LOOP)
        swapped = InterferometerConfig(path_ii, path_i, unit_wave, MotionField(), ConfigKind.CLOSED_LOOP)
        assert first.kind is swapped.kind


class TestOpeningVector:
    def _open_config(self, unit_wave, start_ii):
        end = Vec3(1.0, 0.5, 0.0)
        path_i = BeamPath((Vec3(0, 0, 0), end))
        path_ii = BeamPath((start_ii, end))
        return InterferometerConfig(path_i, path_ii, unit_wave, MotionField(), ConfigKind.OPEN_LOOP)

    def test_definition(self, unit_wave):
        config = self._open_config(unit_wave, Vec3(1e-4, 0, 0))
        assert opening_vector(config) == Vec3(1e-4, 0.0, 0.0)

    def test_other_direction(self, unit_wave):
        config = self._open_config(unit_wave, Vec3(0, 1e-4, 0))
        assert opening_vector(config) == Vec3(0.0, 1e-4, 0.0)
        assert opening_vector(config).norm() == 1e-4

    def test_closed_loop_has_no_opening(self, unit_wave):
        path_i, path_ii = _square_paths()
        config = InterferometerConfig(path_i, path_ii, unit_wave, MotionField(), ConfigKind.CLOSED_LOOP)
        with pytest.raises(GeometryError):
            opening_vector(config)

    def test_identical_starts_rejected_for_open_kind(self, unit_wave):
        with pytest.raises(GeometryError):
            self._open_config(unit_wave, Vec3(0.0, 0.0, 0.0))
