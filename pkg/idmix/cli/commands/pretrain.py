"""Pretrain command for self-supervised encoder training."""

import click
from loguru import logger

from idmix.cli.utils.config import load_run_config, load_run_dataset, output_dir, run_options
from idmix.cli.utils.errors import exit_on_error
from idmix.config.loader import ConfigLoader
from idmix.pipeline.trainer import pretrain as run_pretrain
from idmix.pipeline.trainer import training_data
from idmix.storage.checkpoint import save_checkpoint
from idmix.storage.trace import write_trace


def checkpoint_name(epoch: int) -> str:
    return f"epoch_{epoch:04d}.npz"


@click.command()
@run_options
@click.pass_context
def pretrain(ctx, config, overrides, seed, dataset, out_dir):
    """
    预训练编码器与投影头

    输出目录中写入 params.npz、trace.csv、resolved_config.yaml，
    以及按 train.checkpoint_every 保存的 checkpoints/epoch_XXXX.npz。

    示例：
        idmix pretrain --config run.yaml
        idmix pretrain -d data/sbm -o runs/sbm --seed 1 --set train.epochs=50
    """
    with exit_on_error(ctx):
        cfg = load_run_config(config, overrides, seed, dataset, out_dir)
        data = load_run_dataset(cfg)
        out = output_dir(cfg)

        if not ctx.obj["quiet"]:
            from idmix.cli.utils.display import display_run_info

            display_run_info(cfg)

        ConfigLoader.dump(cfg, out / "resolved_config.yaml")

        every = cfg.train.checkpoint_every

        def on_epoch(epoch, params):
            if every > 0 and epoch % every == 0:
                path = save_checkpoint(params, out / "checkpoints" / checkpoint_name(epoch), epoch)
                logger.debug(f"检查点已保存: {path}")

        logger.info("执行预训练...")
        params, trace = run_pretrain(training_data(data), cfg.train, on_epoch)
        logger.info("预训练完成")

        save_checkpoint(params, out / "params.npz", cfg.train.epochs)
        write_trace(trace, out / "trace.csv")

        if not ctx.obj["quiet"]:
            from idmix.cli.utils.display import display_trace_summary

            display_trace_summary(trace)

        logger.success(f"参数已保存: {out / 'params.npz'}")
        logger.success(f"训练轨迹已保存: {out / 'trace.csv'}")
