"""
Command-line orchestrator: configuration, file I/O and the subcommands of the pipeline.
"""

from .config import PipelineConfig, parse_config_text, resolve_config
from .main import build_parser, main
from .pipeline import compare_asymptotics, decay_slope, dedupe_times, leading_error

__all__ = [
    "PipelineConfig",
    "build_parser",
    "compare_asymptotics",
    "decay_slope",
    "dedupe_times",
    "leading_error",
    "main",
    "parse_config_text",
    "resolve_config",
]
