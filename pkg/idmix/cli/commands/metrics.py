"""Metrics command for recomputing alignment and uniformity on checkpoints."""

from pathlib import Path

import click
from loguru import logger

from idmix.cli.utils.config import load_run_config, load_run_dataset, output_dir, run_options
from idmix.cli.utils.errors import exit_on_error
from idmix.errors import SchemaError
from idmix.pipeline.trainer import checkpoint_trace, training_data
from idmix.storage.checkpoint import checkpoint_epoch, load_checkpoint
from idmix.storage.trace import write_trace


@click.command()
@run_options
@click.option(
    "--checkpoints",
    "checkpoint_dir",
    type=click.Path(),
    help="检查点目录（默认 <输出目录>/checkpoints）",
)
@click.pass_context
def metrics(ctx, config, overrides, seed, dataset, out_dir, checkpoint_dir):
    """
    在已保存的检查点上重新计算对齐度与均匀度

    结果写入 metrics.csv，表头与 trace.csv 相同，loss 列为 nan。

    示例：
        idmix metrics --config run.yaml
    """
    with exit_on_error(ctx):
        cfg = load_run_config(config, overrides, seed, dataset, out_dir)
        data = load_run_dataset(cfg)
        out = output_dir(cfg)

        directory = Path(checkpoint_dir) if checkpoint_dir else out / "checkpoints"
        files = [p for p in directory.glob("epoch_*.npz") if checkpoint_epoch(p) is not None]
        if not files:
            raise SchemaError("no epoch_XXXX.npz checkpoints found", directory)
        files.sort(key=checkpoint_epoch)
        logger.info(f"找到 {len(files)} 个检查点")

        trace = checkpoint_trace(
            training_data(data),
            cfg.train,
            ((checkpoint_epoch(p), load_checkpoint(p)) for p in files),
        )
        write_trace(trace, out / "metrics.csv")

        if not ctx.obj["quiet"]:
            from idmix.cli.utils.display import print_trace_table

            print_trace_table(trace)

        logger.success(f"指标已保存: {out / 'metrics.csv'}")
