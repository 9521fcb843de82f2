"""Probe command for evaluating frozen embeddings."""

from pathlib import Path

import click
from loguru import logger

from idmix.cli.utils.config import load_run_config, load_run_dataset, output_dir, run_options
from idmix.cli.utils.errors import exit_on_error
from idmix.pipeline.probe import evaluate
from idmix.storage.checkpoint import load_checkpoint
from idmix.storage.report_generator import ReportGenerator, build_report
from idmix.storage.trace import read_trace


@click.command()
@run_options
@click.option("--params", "-p", "params_path", type=click.Path(), help="参数文件（默认 <输出目录>/params.npz）")
@click.option("--no-html", is_flag=True, help="不生成 HTML 报告")
@click.pass_context
def probe(ctx, config, overrides, seed, dataset, out_dir, params_path, no_html):
    """
    用线性探针评估冻结的表示

    节点任务使用数据集自带划分（或随机 10%/10%/80% 划分）重复训练逻辑回归；
    图任务使用分层 k 折交叉验证。结果写入 report.json 与 report.html。

    示例：
        idmix probe --config run.yaml
        idmix probe -d data/sbm -o runs/sbm -p runs/sbm/params.npz
    """
    with exit_on_error(ctx):
        cfg = load_run_config(config, overrides, seed, dataset, out_dir)
        data = load_run_dataset(cfg)
        out = output_dir(cfg)

        path = Path(params_path) if params_path else out / "params.npz"
        params = load_checkpoint(path)
        logger.info(f"已加载参数: {path}")

        logger.info("执行线性探针评估...")
        report = evaluate(params, data, cfg.probe, cfg.train.seed)

        if not ctx.obj["quiet"]:
            from idmix.cli.utils.display import display_probe_report

            display_probe_report(report)

        generator = ReportGenerator()
        report_data = build_report(cfg, report)
        generator.generate_json(report_data, out / "report.json")
        logger.success(f"报告已生成: {out / 'report.json'}")

        if not no_html:
            trace_path = out / "trace.csv"
            trace = read_trace(trace_path) if trace_path.exists() else None
            generator.generate_html(report_data, out / "report.html", trace)
            logger.success(f"报告已生成: {out / 'report.html'}")
