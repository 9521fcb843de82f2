"""Gen-synthetic command for writing stochastic block model datasets."""

import click
from loguru import logger

from idmix.cli.utils.errors import exit_on_error
from idmix.datasets.base import NodeDataset
from idmix.datasets.node_format import save_node_dataset
from idmix.graphdata.synthetic import FEATURE_MODES, random_split, sbm_generate
from idmix.numcore.rng import Rng


def parse_blocks(ctx, param, value):
    try:
        blocks = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter(f"应为逗号分隔的整数，得到 '{value}'")
    if not blocks or min(blocks) < 1:
        raise click.BadParameter("每个社区至少包含一个节点")
    return blocks


@click.command("gen-synthetic")
@click.option(
    "--blocks",
    callback=parse_blocks,
    default="150,150,150",
    show_default=True,
    help="各社区节点数，逗号分隔",
)
@click.option("--p-in", type=float, default=0.3, show_default=True, help="社区内连边概率")
@click.option("--p-out", type=float, default=0.01, show_default=True, help="社区间连边概率")
@click.option("--seed", type=int, default=0, show_default=True, help="随机种子")
@click.option(
    "--feature-mode",
    type=click.Choice(FEATURE_MODES),
    default=FEATURE_MODES[0],
    show_default=True,
    help="节点特征生成方式",
)
@click.option("--train-fraction", type=float, default=0.1, show_default=True, help="训练集比例")
@click.option("--test-fraction", type=float, default=0.8, show_default=True, help="测试集比例")
@click.option("--output", "-o", type=click.Path(), required=True, help="数据集输出目录")
@click.pass_context
def gen_synthetic(ctx, blocks, p_in, p_out, seed, feature_mode, train_fraction, test_fraction, output):
    """
    生成随机块模型 (SBM) 节点分类数据集

    写入 edges.tsv、features.csv、labels.csv 和 split.json。

    示例：
        idmix gen-synthetic --blocks 150,150,150 --p-in 0.3 --p-out 0.01 --seed 1 -o data/sbm
    """
    with exit_on_error(ctx):
        rng = Rng(seed)
        graph = sbm_generate(blocks, p_in, p_out, feature_mode, rng.split("sbm"))
        split = random_split(graph.n, rng.split("split"), train_fraction, test_fraction)
        path = save_node_dataset(NodeDataset(graph, split, name="sbm"), output)

        logger.info(f"节点数: {graph.n}, 边数: {graph.num_edges}, 特征维度: {graph.d}")
        logger.success(f"数据集已生成: {path}")
