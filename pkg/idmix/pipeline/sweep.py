"""
Single experiments and one-axis sweeps over them.

An experiment is pretrain + probe for one resolved configuration. A sweep
repeats it for each value of one axis and each seed.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from idmix.config.loader import ConfigLoader, apply_override
from idmix.config.models import RunConfig
from idmix.datasets.base import Dataset
from idmix.encoder.model import ModelParams
from idmix.errors import SchemaError
from idmix.pipeline.probe import ProbeReport, evaluate
from idmix.pipeline.trainer import EpochCallback, TrainTrace, pretrain, training_data

SWEEP_AXES: Dict[str, str] = {
    "lambda": "train.mixup.fixed_lambda",
    "strategy": "train.mixup.strategy",
    "layers": "train.encoder.layers",
    "view_mode": "train.view_mode",
}


@dataclass
class ExperimentResult:
    params: ModelParams
    trace: TrainTrace
    report: ProbeReport


def run_experiment(
    cfg: RunConfig, dataset: Dataset, on_epoch: Optional[EpochCallback] = None
) -> ExperimentResult:
    """Pretrain on ``dataset`` and probe the frozen embeddings."""
    params, trace = pretrain(training_data(dataset), cfg.train, on_epoch)
    report = evaluate(params, dataset, cfg.probe, cfg.train.seed)
    return ExperimentResult(params, trace, report)


@dataclass
class SweepPoint:
    """Probe accuracy of one axis value, one entry per seed."""

    value: Any
    seeds: List[int]
    accuracies: List[float] = field(default_factory=list)

    @property
    def mean(self) -> float:
        return float(np.mean(self.accuracies))

    @property
    def std(self) -> float:
        return float(np.std(self.accuracies))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "seeds": self.seeds,
            "accuracies": self.accuracies,
            "accuracy_mean": self.mean,
            "accuracy_std": self.std,
        }


@dataclass
class SweepResult:
    axis: str
    points: List[SweepPoint] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {"axis": self.axis, "points": [p.to_dict() for p in self.points]}


def sweep_config(base: RunConfig, axis: str, value: Any, seed: int) -> RunConfig:
    """
    Copy of ``base`` with one axis value and seed applied.

    Raises:
        SchemaError: If the axis is unknown or the value invalid for it
    """
    if axis not in SWEEP_AXES:
        raise SchemaError(f"unknown sweep axis '{axis}', expected one of {list(SWEEP_AXES)}")
    data = base.model_dump(mode="json")
    apply_override(data, f"{SWEEP_AXES[axis]}={value}")
    apply_override(data, f"train.seed={seed}")
    return ConfigLoader.load_from_dict(data)


def run_sweep(
    base: RunConfig,
    axis: str,
    values: Sequence[Any],
    seeds: Sequence[int],
    dataset: Dataset,
) -> SweepResult:
    """
    Pretrain and probe for every (value, seed) pair.

    Each run's accuracy is the probe mean for that seed.

    Args:
        base: Configuration the axis value is applied to
        axis: One of ``lambda``, ``strategy``, ``layers``, ``view_mode``
        values: Axis values
        seeds: Training seeds
        dataset: Data to pretrain and probe on

    Returns:
        SweepResult with one point per value
    """
    if not values or not seeds:
        raise SchemaError("run_sweep: need at least one value and one seed")
    configs = {v: [sweep_config(base, axis, v, s) for s in seeds] for v in values}

    result = SweepResult(axis)
    for value in values:
        point = SweepPoint(value, [int(s) for s in seeds])
        for cfg in configs[value]:
            logger.info(f"扫描 {axis}={value}, seed={cfg.train.seed}")
            point.accuracies.append(run_experiment(cfg, dataset).report.mean)
        logger.info(f"{axis}={value}: 准确率 {point.mean:.4f} ± {point.std:.4f}")
        result.points.append(point)
    return result
