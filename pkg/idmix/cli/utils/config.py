"""Configuration loading utilities for CLI."""

from pathlib import Path
from typing import Optional, Sequence

import click

from idmix.config.loader import ConfigLoader
from idmix.config.models import RunConfig
from idmix.datasets.base import Dataset
from idmix.datasets.factory import load_dataset


def run_options(command):
    """Attach the shared ``--config/--set/--seed/--dataset/--output-dir`` options."""
    options = [
        click.option(
            "--config", "-c", type=click.Path(exists=True), help="配置文件路径 (YAML/JSON)"
        ),
        click.option(
            "--set",
            "overrides",
            multiple=True,
            metavar="KEY=VALUE",
            help="覆盖配置项，例如 train.epochs=50（可重复）",
        ),
        click.option("--seed", type=int, help="覆盖 train.seed"),
        click.option("--dataset", "-d", type=click.Path(), help="数据集目录（覆盖 dataset）"),
        click.option("--output-dir", "-o", "out_dir", type=click.Path(), help="输出目录（覆盖 output_dir）"),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def load_run_config(
    config: Optional[str],
    overrides: Sequence[str] = (),
    seed: Optional[int] = None,
    dataset: Optional[str] = None,
    output_dir: Optional[str] = None,
) -> RunConfig:
    """Resolve file + ``--set`` overrides + dedicated flags into a RunConfig."""
    literals = {"dataset": dataset, "output_dir": output_dir}
    return ConfigLoader.load(
        config, overrides, seed, {k: v for k, v in literals.items() if v is not None}
    )


def load_run_dataset(cfg: RunConfig) -> Dataset:
    """Load the configured dataset; a missing path is a usage error."""
    if not cfg.dataset:
        raise click.UsageError("必须指定数据集：--dataset 或配置项 dataset")
    return load_dataset(cfg.dataset, cfg.task)


def output_dir(cfg: RunConfig) -> Path:
    path = Path(cfg.output_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path
