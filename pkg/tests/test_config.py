"""Configuration and grid file parsing."""

import pytest

from springleg import (
    CompressionPolicy,
    ConfigurationError,
    config_from_values,
    parse_config,
    parse_config_text,
    parse_grid,
    values_from_config,
)

from conftest import CONFIG_DIR

MINIMAL = """
mass_kg = 70.0
gravity_mps2 = 9.80665
segment_length_m = 0.205
standing_length_m = 0.32
max_deformation_m = 0.10
spring_stiffness_n_per_m = 900.0
spring_free_length_m = 0.114
spring_solid_length_m = 0.05
initial_spring_position_m = 0.07303125
"""


class TestParseConfig:
    def test_minimal_file_applies_defaults(self):
        config = parse_config_text(MINIMAL)
        assert config.force_cap == pytest.approx(70.0 * 9.80665)
        assert config.loss.efficiency == 1.0
        assert config.loss.ratchet_pitch == 0.0
        assert config.policy is CompressionPolicy.FORCE_LIMITED
        assert config.max_iterations == 100
        assert config.sample_count == 1000
        # derived initial spring length: unloaded spring at standing
        assert config.initial_spring_position / 0.205 * 0.32 == pytest.approx(0.114, rel=1e-9)

    def test_shipped_configs_parse(self):
        for name in ("prototype.cfg", "prototype_trend.cfg", "four_squat_demo.cfg"):
            config = parse_config(CONFIG_DIR / name)
            assert config.spring.stiffness > 0

    def test_comments_and_blanks_ignored(self):
        config = parse_config_text(MINIMAL + "\n# comment\n\nefficiency = 0.9 # loss\n")
        assert config.loss.efficiency == 0.9

    def test_efficiency_bound_named(self):
        with pytest.raises(ConfigurationError, match=r"efficiency.*\(0, 1\]"):
            parse_config_text(MINIMAL + "efficiency = 1.2\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigurationError, match="duplicate key 'mass_kg'"):
            parse_config_text(MINIMAL + "mass_kg = 60\n")

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigurationError, match="unknown key 'spring_rate'"):
            parse_config_text(MINIMAL + "spring_rate = 900\n")

    def test_missing_required_key_rejected(self):
        text = MINIMAL.replace("mass_kg = 70.0", "")
        with pytest.raises(ConfigurationError, match="missing required keys: mass_kg"):
            parse_config_text(text)

    def test_bad_number_rejected(self):
        with pytest.raises(ConfigurationError, match="mass_kg"):
            parse_config_text(MINIMAL.replace("70.0", "seventy"))

    def test_bad_policy_rejected(self):
        with pytest.raises(ConfigurationError, match="policy"):
            parse_config_text(MINIMAL + "policy = unlimited\n")

    def test_slack_initial_position_rejected(self):
        with pytest.raises(ConfigurationError, match="slack"):
            parse_config_text(MINIMAL.replace("0.07303125", "0.09"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError, match="cannot read"):
            parse_config(tmp_path / "nope.cfg")

    def test_non_integer_iterations_rejected(self):
        with pytest.raises(ConfigurationError, match="max_iterations"):
            parse_config_text(MINIMAL + "max_iterations = 2.5\n")


class TestValuesRoundTrip:
    def test_config_to_values_to_config(self):
        config = parse_config(CONFIG_DIR / "prototype_trend.cfg")
        values = values_from_config(config)
        rebuilt = config_from_values(values)
        assert rebuilt == config

    def test_unknown_value_key_rejected(self):
        values = values_from_config(parse_config(CONFIG_DIR / "prototype.cfg"))
        values["typo"] = 1.0
        with pytest.raises(ConfigurationError, match="unknown keys: typo"):
            config_from_values(values)


class TestParseGrid:
    def test_cartesian_product_last_key_fastest(self, tmp_path):
        grid = tmp_path / "grid.txt"
        grid.write_text("force_cap_n = 10, 20\nefficiency = 0.8, 0.9, 1.0\n")
        points = parse_grid(grid)
        assert len(points) == 6
        assert points[0] == {"force_cap_n": 10.0, "efficiency": 0.8}
        assert points[1] == {"force_cap_n": 10.0, "efficiency": 0.9}
        assert points[3] == {"force_cap_n": 20.0, "efficiency": 0.8}
        assert list(points[0].keys()) == ["force_cap_n", "efficiency"]

    def test_unknown_key_rejected(self, tmp_path):
        grid = tmp_path / "grid.txt"
        grid.write_text("bogus = 1, 2\n")
        with pytest.raises(ConfigurationError, match="unknown key 'bogus'"):
            parse_grid(grid)

    def test_empty_grid_rejected(self, tmp_path):
        grid = tmp_path / "grid.txt"
        grid.write_text("# nothing here\n")
        with pytest.raises(ConfigurationError, match="empty grid"):
            parse_grid(grid)
