"""
Linear-probe evaluation of frozen embeddings.

The probe is multinomial logistic regression trained full-batch with Adam for
a fixed number of iterations, with an L2 penalty on the weights (not the
bias). Features are standardized with training-set statistics.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from idmix.config.models import ProbeConfig
from idmix.datasets.base import Dataset, NodeDataset
from idmix.datasets.node_format import check_split
from idmix.encoder.model import ModelParams
from idmix.errors import DegenerateLabelError, DimensionError, SchemaError
from idmix.graphdata.synthetic import random_split
from idmix.numcore.matrix import Matrix, softmax_rows
from idmix.numcore.optim import AdamState, adam_step
from idmix.numcore.params import ParamTensor, glorot_init
from idmix.numcore.rng import Rng
from idmix.pipeline.embed import embed
from idmix.utils.concurrent import parallel_map

PROBE_ITERATIONS = 300
PROBE_LR = 0.01


@dataclass
class ProbeReport:
    """
    Accuracy statistics over probe runs or folds.

    ``accuracies`` is sorted so the report does not depend on execution
    order; ``std`` is the population standard deviation.
    """

    mean: float
    std: float
    accuracies: List[float] = field(default_factory=list)
    runs: int = 1
    folds: Optional[int] = None

    @classmethod
    def from_accuracies(
        cls, accuracies: Sequence[float], runs: int, folds: Optional[int] = None
    ) -> "ProbeReport":
        values = sorted(float(a) for a in accuracies)
        return cls(float(np.mean(values)), float(np.std(values)), values, runs, folds)

    def to_dict(self) -> Dict[str, object]:
        return {
            "accuracy_mean": self.mean,
            "accuracy_std": self.std,
            "accuracies": self.accuracies,
            "runs": self.runs,
            "folds": self.folds,
        }


def fit_predict(
    x_train: Matrix,
    y_train: np.ndarray,
    x_test: Matrix,
    y_test: np.ndarray,
    l2: float,
    rng: Rng,
) -> float:
    """
    Train one logistic probe and return its test accuracy.

    Labels must already be contiguous class indices.

    Raises:
        DegenerateLabelError: If the training labels hold a single class
    """
    classes = np.unique(y_train)
    if classes.size < 2:
        raise DegenerateLabelError(
            f"probe training split has a single class ({int(classes[0])})"
        )
    n_classes = int(max(y_train.max(), y_test.max())) + 1

    mu = x_train.mean(axis=0)
    sigma = x_train.std(axis=0)
    sigma[sigma == 0.0] = 1.0
    xs_train = (x_train - mu) / sigma
    xs_test = (x_test - mu) / sigma

    w = ParamTensor("probe.W", glorot_init(x_train.shape[1], n_classes, rng))
    b = ParamTensor("probe.b", np.zeros((1, n_classes)))
    state = AdamState(lr=PROBE_LR)
    targets = np.zeros((y_train.size, n_classes))
    targets[np.arange(y_train.size), y_train] = 1.0

    for _ in range(PROBE_ITERATIONS):
        probs = softmax_rows(xs_train @ w.value + b.value)
        delta = (probs - targets) / y_train.size
        w.grad = xs_train.T @ delta + l2 * w.value
        b.grad = delta.sum(axis=0, keepdims=True)
        adam_step([w, b], state)

    predicted = np.argmax(xs_test @ w.value + b.value, axis=1)
    return float(np.mean(predicted == y_test))


def _encode_labels(labels: np.ndarray) -> np.ndarray:
    return np.unique(labels, return_inverse=True)[1].astype(np.int64)


def linear_probe(
    embeddings: Matrix,
    labels: np.ndarray,
    split: Dict[str, np.ndarray],
    l2: float = 1e-4,
    runs: int = 20,
    rng: Optional[Rng] = None,
    workers: int = 1,
) -> ProbeReport:
    """
    Evaluate embeddings on a fixed train/test split.

    Each run re-initializes the probe from its own child stream ``run{r}``.

    Args:
        embeddings: N x d frozen embeddings
        labels: N class ids
        split: Index arrays ``train`` and ``test`` (``val`` ignored)
        l2: Weight penalty
        runs: Number of probe runs
        rng: Random stream, seed 0 when omitted
        workers: Parallel runs

    Returns:
        ProbeReport over ``runs`` test accuracies

    Raises:
        DimensionError: If labels do not cover every row
        SchemaError: If the split is missing a part or parts overlap
        DegenerateLabelError: If the training split holds one class
    """
    labels = np.asarray(labels)
    if labels.shape != (embeddings.shape[0],):
        raise DimensionError(
            f"linear_probe: {labels.size} labels for {embeddings.shape[0]} embeddings"
        )
    for key in ("train", "test"):
        if key not in split or len(split[key]) == 0:
            raise SchemaError(f"linear_probe: split needs a non-empty '{key}' part")
    check_split({k: split[k] for k in ("train", "test")})

    y = _encode_labels(labels)
    train, test = np.asarray(split["train"]), np.asarray(split["test"])
    rng = rng or Rng(0)

    def run(r: int) -> float:
        acc = fit_predict(embeddings[train], y[train], embeddings[test], y[test], l2, rng.split(f"run{r}"))
        logger.debug(f"probe run {r}: accuracy {acc:.4f}")
        return acc

    accuracies = parallel_map(run, list(range(runs)), max_workers=workers, task_name="probe")
    report = ProbeReport.from_accuracies(accuracies, runs)
    logger.info(f"线性探针: 准确率 {report.mean:.4f} ± {report.std:.4f} ({runs} 次)")
    return report


def stratified_folds(labels: np.ndarray, k: int, rng: Rng) -> np.ndarray:
    """
    Fold index of each sample, balancing every class across folds.

    Samples are shuffled within each class and dealt round-robin, continuing
    the deal across classes so fold sizes differ by at most one.
    """
    folds = np.empty(labels.size, dtype=np.int64)
    position = 0
    for c in np.unique(labels):
        members = np.flatnonzero(labels == c)
        members = members[rng.split(f"class{int(c)}").permutation(members.size)]
        folds[members] = (position + np.arange(members.size)) % k
        position += members.size
    return folds


def kfold_graph_probe(
    graph_embeddings: Matrix,
    labels: np.ndarray,
    k: int = 10,
    runs: int = 5,
    rng: Optional[Rng] = None,
    l2: float = 1e-4,
    workers: int = 1,
) -> ProbeReport:
    """
    Repeated stratified k-fold evaluation of pooled graph embeddings.

    Returns:
        ProbeReport over ``k * runs`` fold accuracies

    Raises:
        SchemaError: If ``k`` exceeds the number of graphs or is below 2
    """
    labels = np.asarray(labels)
    n = graph_embeddings.shape[0]
    if labels.shape != (n,):
        raise DimensionError(f"kfold_graph_probe: {labels.size} labels for {n} graphs")
    if not 2 <= k <= n:
        raise SchemaError(f"kfold_graph_probe: k={k} must be in [2, {n}]")

    y = _encode_labels(labels)
    rng = rng or Rng(0)
    tasks: List[Tuple[int, int, np.ndarray]] = []
    for r in range(runs):
        folds = stratified_folds(y, k, rng.split(f"repeat{r}"))
        tasks.extend((r, f, folds) for f in range(k))

    def run(task: Tuple[int, int, np.ndarray]) -> float:
        r, f, folds = task
        test = folds == f
        return fit_predict(
            graph_embeddings[~test], y[~test], graph_embeddings[test], y[test],
            l2, rng.split(f"repeat{r}.fold{f}"),
        )

    accuracies = parallel_map(run, tasks, max_workers=workers, task_name="kfold probe")
    report = ProbeReport.from_accuracies(accuracies, runs, k)
    logger.info(
        f"{k} 折交叉验证: 准确率 {report.mean:.4f} ± {report.std:.4f} ({runs} 次重复)"
    )
    return report


def evaluate(
    params: ModelParams, dataset: Dataset, cfg: ProbeConfig, seed: int = 0
) -> ProbeReport:
    """
    Embed a dataset with frozen parameters and probe it.

    Node datasets use their stored split, or a random split drawn from the
    ``split`` stream of ``seed`` when none is stored. Graph datasets use
    repeated k-fold cross-validation.

    Raises:
        SchemaError: If the dataset carries no labels
    """
    root = Rng(seed)
    if isinstance(dataset, NodeDataset):
        labels = dataset.labels
        if labels is None:
            raise SchemaError("probe: node dataset has no labels")
        split = dataset.split
        if split is None:
            split = random_split(
                dataset.graph.n, root.split("split"), cfg.train_fraction, cfg.test_fraction
            )
        return linear_probe(
            embed(dataset.graph, params), labels, split, cfg.l2, cfg.runs,
            root.split("probe"), cfg.workers,
        )

    labels = dataset.labels
    if labels is None:
        raise SchemaError("probe: graph dataset has graphs without labels")
    return kfold_graph_probe(
        embed(dataset.graphs, params), labels, cfg.folds, cfg.graph_runs,
        root.split("probe"), cfg.l2, cfg.workers,
    )
