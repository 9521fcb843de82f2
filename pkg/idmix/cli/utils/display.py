"""Display utilities for CLI output formatting."""

from typing import List, Optional

from loguru import logger

from idmix.config.models import RunConfig
from idmix.pipeline.probe import ProbeReport
from idmix.pipeline.sweep import SweepResult
from idmix.pipeline.trainer import TrainTrace


def display_run_info(cfg: RunConfig):
    """Display the main settings of a run."""
    train = cfg.train
    logger.info("运行配置:")
    logger.info(f"  任务类型: {cfg.task.value}")
    logger.info(f"  数据集: {cfg.dataset}")
    logger.info(f"  输出目录: {cfg.output_dir}")
    logger.info(f"  随机种子: {train.seed}")
    logger.info(f"  训练轮数: {train.epochs}")
    logger.info(f"  混合策略: {train.mixup.strategy.value}")
    logger.info(f"  视图模式: {train.view_mode.value}")


def display_trace_summary(trace: TrainTrace):
    """Display first and last epoch diagnostics."""
    if not len(trace):
        logger.info("无数据")
        return
    records = list(trace)
    logger.info("=" * 40)
    logger.info("训练统计")
    logger.info("=" * 40)
    first, last = records[0], records[-1]
    logger.info(f"  轮数: {len(records)}")
    logger.info(f"  损失: {first.loss:.6g} -> {last.loss:.6g}")
    logger.info(f"  对齐度: {first.align:.4f} -> {last.align:.4f}")
    logger.info(f"  均匀度: {first.uniform:.4f} -> {last.uniform:.4f}")
    logger.info("=" * 40)


def display_probe_report(report: ProbeReport):
    """Display linear-probe accuracy statistics."""
    logger.info("=" * 40)
    logger.info("线性探针评估")
    logger.info("=" * 40)
    logger.info(f"  准确率: {report.mean:.4f} ± {report.std:.4f}")
    logger.info(f"  重复次数: {report.runs}")
    if report.folds:
        logger.info(f"  折数: {report.folds}")
    logger.info("=" * 40)


def print_trace_table(trace: TrainTrace):
    """Print a trace as a plain text table."""
    headers = ["epoch", "loss", "align", "uniform"]
    alignments = [">", ">", ">", ">"]
    rows = [
        [str(r.epoch), f"{r.loss:.6g}", f"{r.align:.4f}", f"{r.uniform:.4f}"] for r in trace
    ]
    print_table(headers, rows, alignments)


def print_sweep_table(result: SweepResult):
    """Print per-value sweep accuracies."""
    headers = [result.axis, "种子数", "均值", "标准差"]
    alignments = ["<", ">", ">", ">"]
    rows = [
        [str(p.value), str(len(p.seeds)), f"{p.mean:.4f}", f"{p.std:.4f}"]
        for p in result.points
    ]
    print_table(headers, rows, alignments)


def print_table(
    headers: List[str],
    rows: List[List[str]],
    alignments: Optional[List[str]] = None,
    padding: int = 2,
):
    """Print a formatted table using plain text."""
    if not rows:
        logger.info("无数据")
        return

    if alignments is None:
        alignments = ["<"] * len(headers)

    col_widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            col_widths[i] = max(col_widths[i], len(str(cell)))

    separator = "+" + "+".join("-" * (w + 2 * padding) for w in col_widths) + "+"

    def render(cells: List[str]) -> str:
        parts = []
        for i, cell in enumerate(cells):
            text = str(cell)
            if alignments[i] == "<":
                text = text.ljust(col_widths[i])
            elif alignments[i] == ">":
                text = text.rjust(col_widths[i])
            else:
                text = text.center(col_widths[i])
            parts.append(" " * padding + text + " " * padding)
        return "|" + "|".join(parts) + "|"

    print()
    print(separator)
    print(render(headers))
    print(separator)
    for row in rows:
        print(render(row))
    print(separator)
    print()
