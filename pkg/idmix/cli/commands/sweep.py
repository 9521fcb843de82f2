"""Sweep command for one-axis hyperparameter studies."""

import click
import yaml
from loguru import logger

from idmix.cli.utils.config import load_run_config, load_run_dataset, output_dir, run_options
from idmix.cli.utils.errors import exit_on_error
from idmix.config.loader import ConfigLoader
from idmix.pipeline.sweep import SWEEP_AXES, run_sweep
from idmix.storage.report_generator import ReportGenerator, build_sweep_report


def parse_list(ctx, param, value):
    """Split a comma list; items follow YAML scalar rules."""
    items = [part.strip() for part in value.split(",") if part.strip()]
    if not items:
        raise click.BadParameter("至少需要一个取值")
    try:
        return [yaml.safe_load(item) for item in items]
    except yaml.YAMLError as e:
        raise click.BadParameter(f"无法解析取值: {e}")


def parse_seeds(ctx, param, value):
    seeds = parse_list(ctx, param, value)
    if not all(isinstance(s, int) and not isinstance(s, bool) for s in seeds):
        raise click.BadParameter("种子必须为整数")
    return seeds


@click.command()
@run_options
@click.option("--axis", type=click.Choice(sorted(SWEEP_AXES)), required=True, help="扫描的配置轴")
@click.option("--values", callback=parse_list, required=True, help="轴取值，逗号分隔，例如 0.1,0.5,0.9")
@click.option(
    "--seeds", callback=parse_seeds, default="0,1,2,3,4", show_default=True, help="训练种子，逗号分隔"
)
@click.option("--no-html", is_flag=True, help="不生成 HTML 报告")
@click.pass_context
def sweep(ctx, config, overrides, seed, dataset, out_dir, axis, values, seeds, no_html):
    """
    沿单个配置轴扫描并比较探针准确率

    每个取值与种子组合执行一次完整的预训练与评估，结果写入 sweep.json 与 sweep.html。

    示例：
        idmix sweep -c run.yaml --axis lambda --values 0.1,0.3,0.5,0.7,0.9
        idmix sweep -c run.yaml --axis view_mode --values single,multi --seeds 0,1,2
    """
    with exit_on_error(ctx):
        cfg = load_run_config(config, overrides, seed, dataset, out_dir)
        data = load_run_dataset(cfg)
        out = output_dir(cfg)
        ConfigLoader.dump(cfg, out / "resolved_config.yaml")

        logger.info(f"扫描 {axis}: {len(values)} 个取值 × {len(seeds)} 个种子")
        result = run_sweep(cfg, axis, values, seeds, data)

        if not ctx.obj["quiet"]:
            from idmix.cli.utils.display import print_sweep_table

            print_sweep_table(result)

        generator = ReportGenerator()
        report_data = build_sweep_report(cfg, result)
        generator.generate_json(report_data, out / "sweep.json")
        logger.success(f"报告已生成: {out / 'sweep.json'}")
        if not no_html:
            generator.generate_html(report_data, out / "sweep.html")
            logger.success(f"报告已生成: {out / 'sweep.html'}")
