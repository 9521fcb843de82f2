"""Gradcheck command for verifying analytic gradients."""

import sys

import click
from loguru import logger

from idmix.cli.utils.errors import exit_on_error
from idmix.errors import NUMERIC_EXIT
from idmix.pipeline.oracle import GRADCHECK_NODES, gradient_check


@click.command()
@click.option("--seed", type=int, default=7, show_default=True, help="随机种子")
@click.option("--eps", type=float, default=1e-5, show_default=True, help="中心差分步长")
@click.option("--tolerance", type=float, default=1e-4, show_default=True, help="最大相对误差阈值")
@click.pass_context
def gradcheck(ctx, seed, eps, tolerance):
    """
    用中心有限差分检查完整损失的解析梯度

    在带种子的 12 节点随机图上执行一次训练步，打印最大相对误差；
    误差不小于阈值时以退出码 3 结束。

    示例：
        idmix gradcheck --seed 7
    """
    with exit_on_error(ctx):
        logger.info(f"梯度检查: {GRADCHECK_NODES} 个节点, seed={seed}, eps={eps:g}")
        error = gradient_check(seed=seed, eps=eps)
        click.echo(f"{error:.6e}")

        if error < tolerance:
            logger.success(f"梯度检查通过: 最大相对误差 {error:.3e} < {tolerance:g}")
        else:
            logger.error(f"梯度检查失败: 最大相对误差 {error:.3e} >= {tolerance:g}")
            sys.exit(NUMERIC_EXIT)
