"""
Configuration data models using Pydantic for validation.

This module defines all configuration objects used throughout the engine.
Unknown keys are rejected everywhere; missing keys take the documented
defaults.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", validate_assignment=True)


class FeatureGranularity(str, Enum):
    """How attribute masks are drawn."""

    PER_DIMENSION = "per_dimension"
    PER_ENTRY = "per_entry"


class MixupStrategyName(str, Enum):
    """Embedding-space mixup strategy."""

    RANDOM = "random"
    CUT = "cut"
    LOCAL = "local"
    NONE = "none"


class CutLabelMode(str, Enum):
    """Label weight recorded by CutMixup."""

    NOMINAL = "nominal"
    REALIZED = "realized"


class Similarity(str, Enum):
    DOT = "dot"
    COSINE = "cosine"


class Activation(str, Enum):
    RELU = "relu"
    LEAKY_RELU = "leaky_relu"
    IDENTITY = "identity"


class ViewMode(str, Enum):
    """Multi-view augments both branches; single-view leaves view A untouched."""

    MULTI = "multi"
    SINGLE = "single"


class Reduction(str, Enum):
    SUM = "sum"
    MEAN = "mean"


class Task(str, Enum):
    NODE = "node"
    GRAPH = "graph"


class AugmentConfig(_Strict):
    """Edge dropping and attribute masking probabilities for one view."""

    p_edge: float = Field(default=0.2, description="Probability of dropping an edge")
    p_feat: float = Field(
        default=0.3, description="Probability of masking a feature dimension/entry"
    )
    feat_granularity: FeatureGranularity = Field(
        default=FeatureGranularity.PER_ENTRY,
        description="Mask whole columns (per_dimension) or single cells (per_entry)",
    )

    @field_validator("p_edge", "p_feat")
    @classmethod
    def validate_probability(cls, v: float) -> float:
        """Probabilities must lie in [0, 1)."""
        if not 0.0 <= v < 1.0:
            raise ValueError(f"probability must be in [0, 1), got {v}")
        return v


class MixupConfig(_Strict):
    """Mixing-ratio distribution and partner selection strategy."""

    strategy: MixupStrategyName = Field(
        default=MixupStrategyName.RANDOM, description="Partner selection strategy"
    )
    beta_alpha: float = Field(default=1.0, gt=0, description="Beta(alpha, beta) shape alpha")
    beta_beta: float = Field(default=1.0, gt=0, description="Beta(alpha, beta) shape beta")
    fold_lambda: bool = Field(default=True, description="Apply lam = max(lam, 1 - lam)")
    fixed_lambda: Optional[float] = Field(
        default=None, description="Use this lam for every batch instead of sampling"
    )
    cut_label_mode: CutLabelMode = Field(
        default=CutLabelMode.NOMINAL,
        description="CutMixup label weight: nominal lam or realized kept fraction",
    )

    @field_validator("fixed_lambda")
    @classmethod
    def validate_fixed_lambda(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and not 0.0 <= v <= 1.0:
            raise ValueError(f"fixed_lambda must be in [0, 1], got {v}")
        return v


class LossConfig(_Strict):
    """Temperature and similarity of the mixed N-pair loss."""

    tau: float = Field(default=0.2, gt=0, description="Softmax temperature")
    similarity: Similarity = Field(default=Similarity.DOT, description="dot or cosine")


class MetricConfig(_Strict):
    """Alignment / uniformity diagnostics."""

    align_alpha: float = Field(default=2.0, gt=0, description="Alignment exponent")
    uniform_t: float = Field(default=2.0, gt=0, description="Uniformity scale t")
    normalize_first: bool = Field(
        default=True, description="L2-normalize embeddings before measuring"
    )


class EncoderConfig(_Strict):
    """GCN encoder and projection head layout."""

    layers: int = Field(default=2, ge=1, description="Number of GCN layers")
    hidden_dim: int = Field(default=128, ge=1, description="Hidden GCN width")
    out_dim: int = Field(default=128, ge=1, description="Encoder output width")
    proj_hidden_dim: int = Field(default=128, ge=1, description="Projection hidden width")
    proj_out_dim: int = Field(default=128, ge=1, description="Projection output width")
    activation: Activation = Field(default=Activation.RELU, description="Nonlinearity")
    activate_last: bool = Field(
        default=True, description="Apply the activation after the final GCN layer"
    )

    def widths(self, in_dim: int) -> list[int]:
        """Layer widths from the input width to the output width."""
        return [in_dim] + [self.hidden_dim] * (self.layers - 1) + [self.out_dim]


class TrainConfig(_Strict):
    """Everything the pretraining loop needs."""

    epochs: int = Field(default=200, ge=1, description="Training epochs")
    batch_size: int = Field(
        default=128, ge=1, description="Graphs per batch (graph task only)"
    )
    lr: float = Field(default=5e-4, gt=0, description="Adam learning rate")
    weight_decay: float = Field(default=1e-5, ge=0, description="L2 weight decay")
    seed: int = Field(default=0, description="Root random seed")
    view_mode: ViewMode = Field(default=ViewMode.MULTI, description="multi or single view")
    reduction: Reduction = Field(default=Reduction.SUM, description="Loss reduction over anchors")
    augment_a: AugmentConfig = Field(default_factory=AugmentConfig)
    augment_b: AugmentConfig = Field(default_factory=AugmentConfig)
    mixup: MixupConfig = Field(default_factory=MixupConfig)
    loss: LossConfig = Field(default_factory=LossConfig)
    metrics: MetricConfig = Field(default_factory=MetricConfig)
    encoder: EncoderConfig = Field(default_factory=EncoderConfig)
    checkpoint_every: int = Field(
        default=0, ge=0, description="Save parameters every N epochs (0 = only at the end)"
    )
    record_wall_time: bool = Field(
        default=False,
        description="Record epoch wall time in the trace (breaks byte-identical reruns)",
    )

    @property
    def tau(self) -> float:
        return self.loss.tau


class ProbeConfig(_Strict):
    """Downstream linear-probe evaluation."""

    runs: int = Field(default=20, ge=1, description="Probe runs with fresh initialization (node task)")
    folds: int = Field(default=10, ge=2, description="Cross-validation folds (graph task)")
    graph_runs: int = Field(default=5, ge=1, description="Cross-validation repeats (graph task)")
    l2: float = Field(default=1e-4, ge=0, description="L2 penalty on probe weights")
    train_fraction: float = Field(
        default=0.1, gt=0, lt=1, description="Train share of a generated node split"
    )
    test_fraction: float = Field(
        default=0.8, gt=0, lt=1, description="Test share of a generated node split"
    )
    workers: int = Field(default=1, ge=1, description="Parallel probe workers")

    @model_validator(mode="after")
    def validate_fractions(self) -> "ProbeConfig":
        if self.train_fraction + self.test_fraction > 1.0:
            raise ValueError("train_fraction + test_fraction must not exceed 1")
        return self


class RunConfig(_Strict):
    """Root configuration object for one engine run."""

    task: Task = Field(default=Task.NODE, description="node or graph classification")
    dataset: Optional[str] = Field(default=None, description="Dataset directory")
    output_dir: str = Field(default="runs/default", description="Where artifacts are written")
    train: TrainConfig = Field(default_factory=TrainConfig)
    probe: ProbeConfig = Field(default_factory=ProbeConfig)
