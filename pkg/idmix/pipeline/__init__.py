"""Pretraining, embedding extraction, probing and sweeps."""

from idmix.pipeline.step import StepResult, training_step
from idmix.pipeline.trainer import (
    EpochRecord,
    MetricProbe,
    TrainTrace,
    checkpoint_trace,
    pretrain,
    training_data,
)
from idmix.pipeline.embed import embed
from idmix.pipeline.probe import (
    ProbeReport,
    evaluate,
    fit_predict,
    kfold_graph_probe,
    linear_probe,
    stratified_folds,
)
from idmix.pipeline.sweep import (
    SWEEP_AXES,
    ExperimentResult,
    SweepPoint,
    SweepResult,
    run_experiment,
    run_sweep,
    sweep_config,
)
from idmix.pipeline.oracle import gradcheck_config, gradient_check

__all__ = [
    "StepResult",
    "training_step",
    "EpochRecord",
    "MetricProbe",
    "TrainTrace",
    "pretrain",
    "training_data",
    "checkpoint_trace",
    "embed",
    "ProbeReport",
    "evaluate",
    "fit_predict",
    "kfold_graph_probe",
    "linear_probe",
    "stratified_folds",
    "SWEEP_AXES",
    "ExperimentResult",
    "SweepPoint",
    "SweepResult",
    "run_experiment",
    "run_sweep",
    "sweep_config",
    "gradcheck_config",
    "gradient_check",
]
