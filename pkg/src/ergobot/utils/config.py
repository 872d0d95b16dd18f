"""Configuration management for Ergobot Core."""

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any

import yaml

from ergobot.exceptions import ConfigError
from ergobot.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass
class ScoringConfig:
    """RULA worksheet thresholds, in degrees."""

    upper_sagittal_band: float = 20.0
    upper_mid: float = 45.0
    upper_high: float = 90.0
    abduction_threshold: float = 10.0
    lower_band: list[float] = field(default_factory=lambda: [60.0, 100.0])
    transversal_threshold: float = 10.0
    wrist_band: float = 15.0
    wrist_deadband: float = 5.0
    wrist_trigger: float = 10.0
    coronal_trigger: float = 10.0
    upper_trigger: float = 20.0


@dataclass
class PlannerConfig:
    """Response planner configuration."""

    trigger_score: int = 2
    hold_time_s: float = 1.0
    settle_time_s: float = 3.0
    gain: float = 1.0
    tool_length_m: float = 0.25


@dataclass
class CalibrationConfig:
    """Calibration window configuration."""

    min_window_s: float = 1.0
    max_spread_deg: float = 5.0
    abduction_factor: float = 1.15


@dataclass
class SimulationConfig:
    """Closed-loop simulator configuration."""

    rate_hz: float = 30.0
    dwell_s: float = 20.0
    max_reach_phase_s: float = 20.0
    v_max: float = 0.1  # m/s
    omega_max: float = 30.0  # deg/s
    position_tolerance_m: float = 1e-3
    yaw_tolerance_deg: float = 0.1
    workspace_min: list[float] = field(default_factory=lambda: [-0.9, -0.2, 0.2])
    workspace_max: list[float] = field(default_factory=lambda: [0.9, 1.4, 2.2])
    upper_arm_m: float = 0.30
    forearm_m: float = 0.25
    shoulder_height_m: float = 1.45


@dataclass
class LoggingConfig:
    """Logging configuration."""

    level: str = "INFO"
    format: str = "json"
    file: str | None = None


@dataclass
class MetricsConfig:
    """Metrics configuration."""

    enabled: bool = True
    namespace: str = "ergobot"


@dataclass
class RunConfig:
    """Main Ergobot configuration."""

    scoring: ScoringConfig = field(default_factory=ScoringConfig)
    planner: PlannerConfig = field(default_factory=PlannerConfig)
    calibration: CalibrationConfig = field(default_factory=CalibrationConfig)
    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)
    metrics: MetricsConfig = field(default_factory=MetricsConfig)

    def to_dict(self) -> dict[str, Any]:
        """Plain dictionary view, used for YAML output and report echoes."""
        return asdict(self)


_SECTIONS = ("scoring", "planner", "calibration", "simulation", "logging", "metrics")


class ConfigManager:
    """Manages configuration loading and validation."""

    def __init__(self, config_file: str | None = None, use_default_locations: bool = True):
        self.config_file = config_file
        self.use_default_locations = use_default_locations
        self.config: RunConfig | None = None
        self._load_config()

    def _load_config(self) -> None:
        """Load configuration from defaults, then files."""
        self.config = RunConfig()

        if self.config_file:
            if not Path(self.config_file).exists():
                raise ConfigError(
                    f"Configuration file not found: {self.config_file}",
                    {"path": self.config_file},
                )
            self._load_from_file(self.config_file)
        elif self.use_default_locations:
            self._load_from_default_locations()

        self._validate_config()

        logger.debug("Configuration loaded", source=self.config_file or "defaults")

    def _load_from_file(self, config_file: str) -> None:
        """Load configuration from YAML file."""
        try:
            with open(config_file) as f:
                config_data = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            raise ConfigError(
                f"Failed to load config file {config_file}: {e}",
                {"path": config_file},
            ) from e

        if config_data:
            if not isinstance(config_data, dict):
                raise ConfigError(
                    f"Config file {config_file} must contain a mapping",
                    {"path": config_file},
                )
            self._merge_config(config_data)
            logger.info("Loaded configuration", path=config_file)

    def _load_from_default_locations(self) -> None:
        """Load configuration from default locations."""
        default_locations = [
            "ergobot.yaml",
            "ergobot.yml",
            "config/ergobot.yaml",
            "config/ergobot.yml",
        ]

        for location in default_locations:
            config_path = Path(location).expanduser()
            if config_path.exists():
                self._load_from_file(str(config_path))
                break

    def _merge_config(self, config_data: dict[str, Any]) -> None:
        """Merge configuration data into current config."""
        assert self.config is not None

        for section_name in _SECTIONS:
            section_data = config_data.get(section_name)
            if not section_data:
                continue
            section = getattr(self.config, section_name)
            for key, value in section_data.items():
                if hasattr(section, key):
                    setattr(section, key, value)
                else:
                    logger.warning(
                        "Unknown configuration key ignored",
                        section=section_name,
                        key=key,
                    )

        for name in sorted(config_data.keys() - set(_SECTIONS)):
            logger.warning("Unknown configuration section ignored", section=name)

    def _validate_config(self) -> None:
        """Validate configuration settings."""
        assert self.config is not None
        scoring = self.config.scoring
        planner = self.config.planner

        if not 2 <= int(planner.trigger_score) <= 9:
            raise ConfigError(
                "trigger_score must lie in [2, 9]",
                {"field": "planner.trigger_score", "value": planner.trigger_score},
            )

        for item in fields(ScoringConfig):
            value = getattr(scoring, item.name)
            values = value if isinstance(value, list) else [value]
            if any(float(v) <= 0 for v in values):
                raise ConfigError(
                    f"Scoring threshold {item.name} must be positive",
                    {"field": f"scoring.{item.name}", "value": value},
                )

        lower_band = scoring.lower_band
        if len(lower_band) != 2 or lower_band[0] >= lower_band[1]:
            raise ConfigError(
                "lower_band must be an increasing pair",
                {"field": "scoring.lower_band", "value": lower_band},
            )

        if not 0 < planner.gain <= 1:
            raise ConfigError(
                "gain must lie in (0, 1]",
                {"field": "planner.gain", "value": planner.gain},
            )

        for name in ("hold_time_s", "settle_time_s", "tool_length_m"):
            if getattr(planner, name) <= 0:
                raise ConfigError(
                    f"{name} must be positive",
                    {"field": f"planner.{name}", "value": getattr(planner, name)},
                )

        simulation = self.config.simulation
        if simulation.rate_hz <= 0:
            logger.warning("Simulation rate must be positive, using default")
            simulation.rate_hz = 30.0

        if simulation.v_max <= 0 or simulation.omega_max <= 0:
            logger.warning("Workpiece rate limits must be positive, using defaults")
            simulation.v_max = 0.1
            simulation.omega_max = 30.0

        valid_log_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if self.config.logging.level.upper() not in valid_log_levels:
            logger.warning("Invalid log level, using INFO", level=self.config.logging.level)
            self.config.logging.level = "INFO"

    def get_config(self) -> RunConfig:
        """Get the current configuration."""
        if self.config is None:
            raise RuntimeError("Configuration not loaded")
        return self.config

    def save_config(self, output_file: str) -> None:
        """Save current configuration to file."""
        assert self.config is not None

        try:
            with open(output_file, "w") as f:
                yaml.dump(
                    self.config.to_dict(), f, default_flow_style=False, indent=2
                )
        except OSError as e:
            logger.error("Failed to save configuration", path=output_file, error=str(e))
            raise ConfigError(f"Failed to save configuration: {e}") from e

        logger.info("Configuration saved", path=output_file)


def load_config(config_file: str | None = None) -> RunConfig:
    """Load a RunConfig from an explicit file or the default locations."""
    return ConfigManager(config_file).get_config()


# Global config manager instance
_config_manager: ConfigManager | None = None


def get_config_manager() -> ConfigManager:
    """Get the global configuration manager."""
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager()
    return _config_manager


def get_config() -> RunConfig:
    """Get the current configuration."""
    return get_config_manager().get_config()
