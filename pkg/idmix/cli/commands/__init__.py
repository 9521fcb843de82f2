"""CLI commands package."""

from idmix.cli.commands.pretrain import pretrain
from idmix.cli.commands.probe import probe
from idmix.cli.commands.metrics import metrics
from idmix.cli.commands.gradcheck import gradcheck
from idmix.cli.commands.gen_synthetic import gen_synthetic
from idmix.cli.commands.sweep import sweep
from idmix.cli.commands.init import init
from idmix.cli.commands.validate import validate
from idmix.cli.commands.version import version

__all__ = [
    "pretrain",
    "probe",
    "metrics",
    "gradcheck",
    "gen_synthetic",
    "sweep",
    "init",
    "validate",
    "version",
]
