"""Validate command for checking configuration files."""

import sys

import click
from loguru import logger

from idmix.config.loader import ConfigLoader
from idmix.errors import SchemaError


@click.command()
@click.option(
    "--config", "-c", type=click.Path(exists=True), required=True, help="配置文件路径"
)
@click.option("--set", "overrides", multiple=True, metavar="KEY=VALUE", help="覆盖配置项（可重复）")
def validate(config, overrides):
    """
    验证配置文件

    示例：
        idmix validate --config run.yaml
    """
    try:
        cfg = ConfigLoader.load(config, overrides)

        logger.success("配置文件验证通过")
        logger.info(f"任务类型: {cfg.task.value}")
        logger.info(f"数据集: {cfg.dataset}")
        logger.info(f"混合策略: {cfg.train.mixup.strategy.value}")
        logger.info(f"编码器层数: {cfg.train.encoder.layers}")
        logger.info(f"训练轮数: {cfg.train.epochs}")

    except SchemaError as e:
        logger.error("配置文件验证失败")
        logger.error(f"{e}")
        sys.exit(e.exit_code)
