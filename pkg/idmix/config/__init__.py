"""Configuration module for run, training, augmentation and probe settings."""

from idmix.config.models import (
    Activation,
    AugmentConfig,
    CutLabelMode,
    EncoderConfig,
    FeatureGranularity,
    LossConfig,
    MetricConfig,
    MixupConfig,
    MixupStrategyName,
    ProbeConfig,
    Reduction,
    RunConfig,
    Similarity,
    Task,
    TrainConfig,
    ViewMode,
)
from idmix.config.loader import ConfigLoader

__all__ = [
    "Activation",
    "AugmentConfig",
    "CutLabelMode",
    "EncoderConfig",
    "FeatureGranularity",
    "LossConfig",
    "MetricConfig",
    "MixupConfig",
    "MixupStrategyName",
    "ProbeConfig",
    "Reduction",
    "RunConfig",
    "Similarity",
    "Task",
    "TrainConfig",
    "ViewMode",
    "ConfigLoader",
]
