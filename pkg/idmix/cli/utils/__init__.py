"""CLI utilities package."""

from idmix.cli.utils.config import load_run_config, load_run_dataset, output_dir, run_options
from idmix.cli.utils.display import (
    display_probe_report,
    display_run_info,
    display_trace_summary,
    print_sweep_table,
    print_table,
    print_trace_table,
)
from idmix.cli.utils.errors import exit_on_error

__all__ = [
    "load_run_config",
    "load_run_dataset",
    "output_dir",
    "run_options",
    "display_probe_report",
    "display_run_info",
    "display_trace_summary",
    "print_sweep_table",
    "print_table",
    "print_trace_table",
    "exit_on_error",
]
