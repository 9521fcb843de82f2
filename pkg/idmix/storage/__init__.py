"""Trace files, parameter checkpoints and run reports."""

from idmix.storage.trace import TRACE_HEADER, read_trace, write_trace
from idmix.storage.checkpoint import checkpoint_epoch, load_checkpoint, save_checkpoint
from idmix.storage.report_generator import ReportGenerator, build_report, build_sweep_report

__all__ = [
    "TRACE_HEADER",
    "read_trace",
    "write_trace",
    "checkpoint_epoch",
    "load_checkpoint",
    "save_checkpoint",
    "ReportGenerator",
    "build_report",
    "build_sweep_report",
]
