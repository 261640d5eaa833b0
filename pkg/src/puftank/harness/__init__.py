"""Scenario orchestration: config, tick loop, metrics, gateway, CLI."""

from .logio import LOG_HEADER, LogRow, read_log, write_log
from .loop import SimRun, run_enrollment, run_scenario
from .metrics import RunMetrics, compute_metrics, event_spans, temporal_ok
from .scenario import (
    EnrollmentPlan,
    PufPlan,
    ScenarioConfig,
    load_scenario,
    replace_lut_path,
    resolve_puf,
    scenario_from_doc,
    scenario_to_doc,
)

__all__ = [
    "EnrollmentPlan",
    "LOG_HEADER",
    "LogRow",
    "PufPlan",
    "RunMetrics",
    "ScenarioConfig",
    "SimRun",
    "compute_metrics",
    "event_spans",
    "load_scenario",
    "read_log",
    "replace_lut_path",
    "resolve_puf",
    "run_enrollment",
    "run_scenario",
    "scenario_from_doc",
    "scenario_to_doc",
    "temporal_ok",
    "write_log",
]
