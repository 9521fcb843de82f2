"""
Command-line interface for the ID-MixGCL engine.

Provides commands for pretraining, probing, metric recomputation, gradient
checking, synthetic data generation and sweeps.
"""

import sys

import click
from loguru import logger

from idmix.errors import USAGE_EXIT

LOG_FORMAT = "<level>{level: <8}</level> | <cyan>{message}</cyan>"

# Configure loguru
logger.remove()  # Remove default handler
logger.add(sys.stderr, format=LOG_FORMAT, colorize=True)


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Route loguru to stderr at DEBUG, ERROR or INFO level."""
    logger.remove()
    if verbose:
        logger.add(sys.stderr, level="DEBUG", format=LOG_FORMAT, colorize=True)
    elif quiet:
        logger.add(sys.stderr, level="ERROR", format="<level>{message}</level>", colorize=False)
    else:
        logger.add(sys.stderr, level="INFO", format="<level>{message}</level>", colorize=False)


class IdMixGroup(click.Group):
    """Click group whose usage errors exit with code 1."""

    def make_context(self, *args, **kwargs):
        try:
            return super().make_context(*args, **kwargs)
        except click.UsageError as e:
            e.exit_code = USAGE_EXIT
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = USAGE_EXIT
            raise


@click.group(cls=IdMixGroup)
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose output")
@click.option("--quiet", "-q", is_flag=True, help="Suppress non-error output")
@click.pass_context
def cli(ctx, verbose, quiet):
    """
    ID-MixGCL - 图对比学习预训练与评估工具

    在无标签图上以身份标签混合的对比目标预训练 GCN 编码器，并用线性探针评估冻结的表示。
    """
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["quiet"] = quiet
    configure_logging(verbose, quiet)


# Import commands
from idmix.cli.commands import (  # noqa: E402
    gen_synthetic,
    gradcheck,
    init,
    metrics,
    pretrain,
    probe,
    sweep,
    validate,
    version,
)

# Add commands to CLI group
cli.add_command(pretrain, "pretrain")
cli.add_command(probe, "probe")
cli.add_command(metrics, "metrics")
cli.add_command(gradcheck, "gradcheck")
cli.add_command(gen_synthetic, "gen-synthetic")
cli.add_command(sweep, "sweep")
cli.add_command(init, "init")
cli.add_command(validate, "validate")
cli.add_command(version, "version")


def main():
    """Entry point for CLI."""
    cli(obj={})


if __name__ == "__main__":
    main()
