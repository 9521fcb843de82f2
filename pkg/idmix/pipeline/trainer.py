"""
Self-supervised pretraining loop.

Random streams below the root seed:
    init                         parameter initialization
    metrics                      fixed views for the per-epoch diagnostics
    train/epoch{e}/shuffle       graph order (graph task)
    train/epoch{e}/step{s}       views, lambda and mixup of one step
"""

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from idmix.augment.views import make_views
from idmix.config.models import TrainConfig, ViewMode
from idmix.datasets.base import Dataset, NodeDataset
from idmix.encoder.gcn import encode
from idmix.encoder.model import ModelParams
from idmix.errors import DimensionError, NumericError, SchemaError
from idmix.graphdata.batching import disjoint_union
from idmix.graphdata.graph import Graph
from idmix.graphdata.propagation import normalized_adjacency
from idmix.mixup.factory import MixupStrategyFactory
from idmix.numcore.matrix import Matrix
from idmix.numcore.optim import AdamState, adam_step
from idmix.numcore.rng import Rng
from idmix.objective.metrics import alignment, uniformity
from idmix.pipeline.step import training_step

TrainData = Union[Graph, Sequence[Graph]]
EpochCallback = Callable[[int, ModelParams], None]

# Rows sampled for the per-epoch diagnostics on large inputs.
METRIC_MAX_ROWS = 2048


@dataclass
class EpochRecord:
    """Diagnostics of one epoch."""

    epoch: int
    loss: float
    align: float
    uniform: float
    seconds: float = 0.0


@dataclass
class TrainTrace:
    """One record per completed epoch."""

    records: List[EpochRecord] = field(default_factory=list)

    def append(self, record: EpochRecord) -> None:
        self.records.append(record)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def losses(self) -> List[float]:
        return [r.loss for r in self.records]


def _as_graph(data: TrainData) -> Graph:
    """The single graph behind node-task data, or the union of all graphs."""
    if isinstance(data, Graph):
        return data
    return disjoint_union(list(data)).graph


class MetricProbe:
    """
    Alignment and uniformity of encoder outputs on fixed views.

    Views and the row sample are drawn once, so successive epochs are
    measured on identical inputs. Rows that encode to all zeros have no
    direction and are left out.
    """

    def __init__(self, graph: Graph, cfg: TrainConfig, rng: Rng):
        self.cfg = cfg
        self.graph = graph
        self.views = make_views(
            graph, cfg.augment_a, cfg.augment_b, rng.split("views"),
            single_view=cfg.view_mode == ViewMode.SINGLE,
        )
        self.rows: Optional[np.ndarray] = None
        if graph.n > METRIC_MAX_ROWS:
            self.rows = np.sort(rng.split("rows").permutation(graph.n)[:METRIC_MAX_ROWS])
        self._ops = {
            "source": normalized_adjacency(graph),
            "a": normalized_adjacency(self.views.view_a),
            "b": normalized_adjacency(self.views.view_b),
        }

    def _encode(self, key: str, features: Matrix, params: ModelParams) -> Matrix:
        h = encode(self._ops[key], features, params.encoder)[0]
        return h if self.rows is None else h[self.rows]

    def measure(self, params: ModelParams) -> tuple[float, float]:
        metric_cfg = self.cfg.metrics
        h_a = self._encode("a", self.views.view_a.features, params)
        h_b = self._encode("b", self.views.view_b.features, params)
        h = self._encode("source", self.graph.features, params)

        pair_ok = (np.linalg.norm(h_a, axis=1) > 0) & (np.linalg.norm(h_b, axis=1) > 0)
        align = alignment(h_a[pair_ok], h_b[pair_ok], metric_cfg) if pair_ok.any() else float("nan")
        row_ok = np.linalg.norm(h, axis=1) > 0
        uniform = uniformity(h[row_ok], metric_cfg) if row_ok.sum() >= 2 else float("nan")
        return align, uniform


def pretrain(
    data: TrainData,
    cfg: TrainConfig,
    on_epoch: Optional[EpochCallback] = None,
) -> tuple[ModelParams, TrainTrace]:
    """
    Pretrain encoder and head on unlabeled data.

    A single graph is trained full-batch, one step per epoch. A sequence of
    graphs is shuffled every epoch and cut into batches of
    ``cfg.batch_size`` graphs; each batch is contrasted as one disjoint
    union.

    Args:
        data: One graph (node task) or a sequence of graphs (graph task)
        cfg: Training configuration
        on_epoch: Called with ``(epoch, params)`` after each epoch

    Returns:
        Tuple of (trained parameters, per-epoch trace)

    Raises:
        SchemaError: If there is nothing to train on
        NumericError: If a loss or gradient becomes non-finite, with epoch and
            step context
    """
    graphs: Optional[List[Graph]] = None if isinstance(data, Graph) else list(data)
    if graphs is not None and not graphs:
        raise SchemaError("pretrain: no graphs given")
    full = _as_graph(data)
    if full.n == 0:
        raise SchemaError("pretrain: graph has no nodes")

    root = Rng(cfg.seed)
    params = ModelParams.init(full.d, cfg.encoder, root.split("init"))
    if params.encoder.widths[0] != full.d:
        raise DimensionError(
            f"pretrain: feature width {full.d} != encoder input {params.encoder.widths[0]}"
        )
    state = AdamState(lr=cfg.lr, weight_decay=cfg.weight_decay)
    strategy = MixupStrategyFactory.from_config(cfg.mixup)
    probe = MetricProbe(full, cfg, root.split("metrics"))
    train_rng = root.split("train")
    trace = TrainTrace()

    logger.info(
        f"开始预训练: {full.n} 个节点, {cfg.epochs} 轮, 混合策略 {cfg.mixup.strategy.value}, "
        f"视图模式 {cfg.view_mode.value}"
    )
    for epoch in range(1, cfg.epochs + 1):
        started = time.perf_counter()
        epoch_rng = train_rng.split(f"epoch{epoch}")
        if graphs is None:
            batches = [full]
        else:
            order = epoch_rng.split("shuffle").permutation(len(graphs))
            batches = [
                disjoint_union([graphs[i] for i in order[s : s + cfg.batch_size]]).graph
                for s in range(0, len(graphs), cfg.batch_size)
            ]

        losses = []
        for step, batch in enumerate(batches):
            try:
                result = training_step(batch, params, cfg, epoch_rng.split(f"step{step}"), strategy)
                adam_step(params.parameters(), state)
            except NumericError as e:
                raise NumericError(f"epoch {epoch} step {step}: {e}") from e
            losses.append(result.loss)

        align, uniform = probe.measure(params)
        seconds = time.perf_counter() - started if cfg.record_wall_time else 0.0
        record = EpochRecord(epoch, float(np.mean(losses)), align, uniform, seconds)
        trace.append(record)
        logger.info(
            f"epoch {epoch:4d} | loss {record.loss:.6g} | align {align:.4f} | "
            f"uniform {uniform:.4f} | {seconds:.2f}s"
        )
        if on_epoch is not None:
            on_epoch(epoch, params)

    return params, trace


def training_data(dataset: Dataset) -> TrainData:
    return dataset.graph if isinstance(dataset, NodeDataset) else dataset.graphs


def checkpoint_trace(
    data: TrainData,
    cfg: TrainConfig,
    checkpoints: Iterable[Tuple[int, ModelParams]],
) -> TrainTrace:
    """
    Recompute alignment and uniformity for saved parameters.

    Uses the same ``metrics`` stream as ``pretrain``, so values agree with
    the training trace for the same epochs. Losses are not recomputed and are
    reported as NaN.
    """
    probe = MetricProbe(_as_graph(data), cfg, Rng(cfg.seed).split("metrics"))
    trace = TrainTrace()
    for epoch, params in checkpoints:
        align, uniform = probe.measure(params)
        trace.append(EpochRecord(epoch, float("nan"), align, uniform))
        logger.debug(f"checkpoint epoch {epoch}: align {align:.4f} | uniform {uniform:.4f}")
    return trace
