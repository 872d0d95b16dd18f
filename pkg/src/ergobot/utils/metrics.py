"""Prometheus metrics collection for Ergobot Core."""

from prometheus_client import CollectorRegistry, Counter, Gauge, Histogram, generate_latest

from ergobot.utils.logging import get_logger

logger = get_logger(__name__)


class MetricsCollector:
    """Collects and exposes Prometheus metrics for Ergobot Core."""

    def __init__(self, registry: CollectorRegistry | None = None, namespace: str = "ergobot"):
        self.registry = registry or CollectorRegistry()
        self.namespace = namespace
        self._setup_metrics()

    def _setup_metrics(self) -> None:
        """Set up Prometheus metrics."""
        ns = self.namespace

        self.frames_scored_total = Counter(
            f"{ns}_frames_scored_total",
            "Total number of sensor frames scored",
            ["source"],
            registry=self.registry,
        )

        self.arm_score = Histogram(
            f"{ns}_rula_arm_score",
            "RULA Table A arm score per scored frame",
            ["source"],
            buckets=[1, 2, 3, 4, 5, 6, 7, 8, 9],
            registry=self.registry,
        )

        self.commands_total = Counter(
            f"{ns}_response_commands_total",
            "Total number of workpiece response commands emitted",
            ["cause"],
            registry=self.registry,
        )

        self.workpiece_clamps_total = Counter(
            f"{ns}_workpiece_clamps_total",
            "Workpiece moves clamped to the workspace box",
            registry=self.registry,
        )

        self.scenario_duration = Histogram(
            f"{ns}_scenario_duration_seconds",
            "Wall-clock time spent simulating one scenario",
            ["mode"],
            buckets=[0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 60.0],
            registry=self.registry,
        )

        self.last_arm_score = Gauge(
            f"{ns}_last_arm_score",
            "Most recent RULA arm score",
            ["source"],
            registry=self.registry,
        )

    def record_score(self, arm_score: int, source: str = "replay") -> None:
        """Record metrics for one scored frame."""
        self.frames_scored_total.labels(source=source).inc()
        self.arm_score.labels(source=source).observe(arm_score)
        self.last_arm_score.labels(source=source).set(arm_score)

    def record_command(self, cause: str) -> None:
        """Record an emitted response command."""
        self.commands_total.labels(cause=cause).inc()
        logger.debug("Recorded command metrics", cause=cause)

    def record_clamp(self) -> None:
        """Record a workpiece move clamped to the workspace box."""
        self.workpiece_clamps_total.inc()

    def record_scenario(self, mode: str, duration: float) -> None:
        """Record wall-clock duration of a simulated scenario."""
        self.scenario_duration.labels(mode=mode).observe(duration)
        logger.debug("Recorded scenario metrics", mode=mode, duration=duration)

    def get_metrics(self) -> str:
        """Get metrics in Prometheus text format."""
        metrics_bytes: bytes = generate_latest(self.registry)
        return metrics_bytes.decode("utf-8")
