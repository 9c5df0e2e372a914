"""Scene parsing, validation errors, serialization round-trips."""

import json

import pytest

from matterwave import (
    ConfigKind,
    SceneError,
    Vec3,
    config_from_scene,
    parse_scene,
    serialize_scene,
)

MINIMAL = """
{
  "particle": {"speed_mps": 1.0, "wavelength_m": 1e-8},
  "geometry": {"kind": "Fig3bOpen", "opening_m": 1e-4}
}
"""


class TestParseScene:
    def test_minimal_scene(self):
        doc = parse_scene(MINIMAL)
        assert doc.particle.speed_mps == 1.0
        assert doc.particle.wavelength_m == 1e-8
        assert doc.geometry.kind == "Fig3bOpen"
        assert doc.output.format == "json"
        wave_product = doc.particle.speed_mps * doc.particle.wavelength_m
        assert wave_product == 1e-8

    def test_missing_speed_names_field(self):
        with pytest.raises(SceneError, match=r"particle\.speed_mps"):
            parse_scene('{"particle": {"wavelength_m": 1e-8}, "geometry": {"kind": "Fig3bOpen", "opening_m": 1e-4}}')

    def test_unknown_geometry_kind(self):
        with pytest.raises(SceneError, match="Fig9"):
            parse_scene('{"particle": {"speed_mps": 1.0, "wavelength_m": 1e-8}, "geometry": {"kind": "Fig9"}}')

    def test_unknown_key_rejected_with_path(self):
        bad = '{"particle": {"speed_mps": 1.0, "wavelength_m": 1e-8, "speed_kmh": 3.6}, "geometry": {"kind": "Fig3bOpen", "opening_m": 1e-4}}'
        with pytest.raises(SceneError, match=r"particle\.speed_kmh"):
            parse_scene(bad)

    def test_syntax_error_reports_position(self):
        with pytest.raises(SceneError, match=r"line \d+, column \d+"):
            parse_scene('{"particle": ')

    def test_motion_defaults_to_rest(self):
        doc = parse_scene(MINIMAL)
        assert doc.motion.translation_mps == Vec3(0.0, 0.0, 0.0)
        assert doc.motion.omega_radps == Vec3(0.0, 0.0, 0.0)

    def test_vector_fields_validated(self):
        bad = '{"particle": {"speed_mps": 1.0, "wavelength_m": 1e-8}, "motion": {"translation_mps": [1, 2]}, "geometry": {"kind": "Fig3bOpen", "opening_m": 1e-4}}'
        with pytest.raises(SceneError, match=r"motion\.translation_mps"):
            parse_scene(bad)

    def test_output_format_checked(self):
        bad = '{"particle": {"speed_mps": 1.0, "wavelength_m": 1e-8}, "geometry": {"kind": "Fig3bOpen", "opening_m": 1e-4}, "output": {"format": "xml"}}'
        with pytest.raises(SceneError, match=r"output\.format"):
            parse_scene(bad)

    def test_particle_needs_mass_or_wavelength(self):
        with pytest.raises(SceneError, match="mass_kg or wavelength_m"):
            parse_scene('{"particle": {"speed_mps": 1.0}, "geometry": {"kind": "Fig3bOpen", "opening_m": 1e-4}}')

    def test_explicit_paths_parsed(self, data_dir):
        doc = parse_scene((data_dir / "explicit_triangle.json").read_text())
        assert doc.geometry.path_I_m is not None
        assert len(doc.geometry.path_II_m) == 3

    def test_explicit_paths_require_both(self):
        bad = '{"particle": {"speed_mps": 1.0, "wavelength_m": 1e-8}, "geometry": {"path_I_m": [[0,0,0],[1,0,0]]}}'
        with pytest.raises(SceneError, match=r"geometry\.path_II_m"):
            parse_scene(bad)

    def test_explicit_and_kind_cannot_mix(self):
        bad = (
            '{"particle": {"speed_mps": 1.0, "wavelength_m": 1e-8},'
            ' "geometry": {"kind": "Fig3bOpen", "path_I_m": [[0,0,0],[1,0,0]],'
            ' "path_II_m": [[0,1,0],[1,0,0]]}}'
        )
        with pytest.raises(SceneError, match=r"geometry\.kind"):
            parse_scene(bad)


class TestRoundTrip:
    @pytest.mark.parametrize(
        "name",
        ["slow_atom_open.json", "earth_rotation_square.json", "closed_translation.json", "explicit_triangle.json"],
    )
    def test_golden_scene_round_trip(self, data_dir, name):
        text = (data_dir / name).read_text()
        doc = parse_scene(text)
        again = parse_scene(serialize_scene(doc))
        assert again == doc

    def test_serialized_form_is_stable(self):
        doc = parse_scene(MINIMAL)
        assert serialize_scene(doc) == serialize_scene(parse_scene(serialize_scene(doc)))

    def test_serialized_is_valid_json(self):
        payload = json.loads(serialize_scene(parse_scene(MINIMAL)))
        assert payload["particle"]["speed_mps"] == 1.0


class TestConfigFromScene:
    def test_builder_scene(self, data_dir):
        doc = parse_scene((data_dir / "slow_atom_open.json").read_text())
        config = config_from_scene(doc)
        assert config.kind is ConfigKind.OPEN_LOOP
        assert config.wave.v_lambda == 1e-8

    def test_explicit_closed_inferred(self, data_dir):
        doc = parse_scene((data_dir / "explicit_triangle.json").read_text())
        config = config_from_scene(doc)
        assert config.kind is ConfigKind.CLOSED_LOOP

    def test_explicit_open_inferred(self):
        text = (
            '{"particle": {"speed_mps": 1.0, "wavelength_m": 1e-8},'
            ' "geometry": {"path_I_m": [[0.0001, 0, 0], [0.01, 0, 0]],'
            ' "path_II_m": [[0, 0, 0], [0.005, -0.002, 0], [0.01, 0, 0]]}}'
        )
        config = config_from_scene(parse_scene(text))
        assert config.kind is ConfigKind.OPEN_LOOP

    def test_mass_scene_gets_de_broglie_wavelength(self, data_dir):
        doc = parse_scene((data_dir / "earth_rotation_square.json").read_text())
        config = config_from_scene(doc)
        assert config.wave.wavelength_lambda == pytest.approx(1.798e-10, rel=1e-3)
