"""Unit tests for configuration loading."""

import pytest
import yaml

from ergobot.exceptions import ConfigError
from ergobot.utils.config import ConfigManager, RunConfig, load_config


def write_yaml(path, data) -> str:
    path.write_text(yaml.safe_dump(data))
    return str(path)


class TestConfigManager:
    """Test cases for ConfigManager."""

    def test_defaults(self):
        """Test defaults without any file."""
        config = ConfigManager(use_default_locations=False).get_config()
        assert config.planner.hold_time_s == 1.0
        assert config.planner.settle_time_s == 3.0
        assert config.simulation.rate_hz == 30.0
        assert config.scoring.lower_band == [60.0, 100.0]

    def test_file_overrides(self, temp_dir):
        """Test a YAML file overrides individual keys and drops unknown sections."""
        # Arrange
        path = write_yaml(
            temp_dir / "ergobot.yaml",
            {"planner": {"gain": 0.5}, "simulation": {"v_max": 0.2}, "output_dir": "out"},
        )

        # Act
        config = load_config(path)

        # Assert
        assert config.planner.gain == 0.5
        assert config.planner.hold_time_s == 1.0
        assert config.simulation.v_max == 0.2
        assert not hasattr(config, "output_dir")

    def test_missing_file(self, temp_dir):
        """Test an explicit missing file is an error."""
        with pytest.raises(ConfigError, match="not found"):
            ConfigManager(str(temp_dir / "absent.yaml"))

    def test_non_mapping(self, temp_dir):
        """Test the top level must be a mapping."""
        path = temp_dir / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError, match="mapping"):
            ConfigManager(str(path))

    @pytest.mark.parametrize(
        "data,message",
        [
            ({"planner": {"trigger_score": 1}}, "trigger_score"),
            ({"planner": {"gain": 1.5}}, "gain"),
            ({"planner": {"hold_time_s": 0}}, "hold_time_s"),
            ({"scoring": {"wrist_band": -1}}, "wrist_band"),
            ({"scoring": {"lower_band": [100, 60]}}, "lower_band"),
        ],
    )
    def test_invalid_values(self, temp_dir, data, message):
        """Test contract-breaking values are rejected."""
        path = write_yaml(temp_dir / "bad.yaml", data)
        with pytest.raises(ConfigError, match=message):
            ConfigManager(path)

    def test_invalid_rate_falls_back(self, temp_dir):
        """Test a non-positive rate is replaced by the default."""
        path = write_yaml(temp_dir / "rate.yaml", {"simulation": {"rate_hz": 0}})
        assert ConfigManager(path).get_config().simulation.rate_hz == 30.0

    def test_save_and_reload(self, temp_dir):
        """Test a saved configuration loads back unchanged."""
        # Arrange
        manager = ConfigManager(use_default_locations=False)
        manager.get_config().planner.gain = 0.75
        path = temp_dir / "saved.yaml"

        # Act
        manager.save_config(str(path))
        reloaded = load_config(str(path))

        # Assert
        assert reloaded.to_dict() == manager.get_config().to_dict()

    def test_to_dict_sections(self):
        """Test the dictionary view has every section."""
        assert set(RunConfig().to_dict()) == {
            "scoring",
            "planner",
            "calibration",
            "simulation",
            "logging",
            "metrics",
        }
