"""
Tests for the training step, pretraining loop, embedding extraction, linear
probes, sweeps and the gradient oracle.
"""

import math

import numpy as np
import pytest

from idmix.config.models import (
    EncoderConfig,
    MixupConfig,
    ProbeConfig,
    RunConfig,
    TrainConfig,
)
from idmix.datasets.base import GraphDataset, NodeDataset
from idmix.encoder.gcn import EncoderParams
from idmix.encoder.model import ModelParams
from idmix.encoder.projection import ProjectionParams
from idmix.errors import DegenerateLabelError, SchemaError
from idmix.graphdata.graph import Graph
from idmix.graphdata.synthetic import random_split, sbm_generate
from idmix.numcore.rng import Rng
from idmix.pipeline.embed import embed
from idmix.pipeline.oracle import gradcheck_config, gradient_check
from idmix.pipeline.probe import (
    ProbeReport,
    evaluate,
    fit_predict,
    kfold_graph_probe,
    linear_probe,
    stratified_folds,
)
from idmix.pipeline.step import training_step
from idmix.pipeline.sweep import run_experiment, sweep_config
from idmix.pipeline.trainer import checkpoint_trace, pretrain, training_data


def small_train_config(**updates) -> TrainConfig:
    base = dict(
        epochs=3,
        lr=1e-2,
        encoder=EncoderConfig(hidden_dim=16, out_dim=16, proj_hidden_dim=16, proj_out_dim=16),
    )
    base.update(updates)
    return TrainConfig(**base)


def copy_params(params: ModelParams) -> ModelParams:
    encoder = EncoderParams(
        [w.copy() for w in params.encoder.weights],
        params.encoder.activation,
        params.encoder.activate_last,
    )
    head = ProjectionParams(params.head.w1.copy(), params.head.w2.copy(), params.head.activation)
    return ModelParams(encoder, head)


def separable_embeddings(n_per_class: int, rng: Rng):
    centers = np.array([[4.0, 0.0], [-4.0, 0.0], [0.0, 4.0]])
    labels = np.repeat(np.arange(3), n_per_class)
    x = centers[labels] + 0.3 * rng.normal(size=(labels.size, 2))
    return x, labels


class TestTrainingStep:
    """Test one contrastive step."""

    def setup_method(self):
        """Set up a small SBM graph and model."""
        self.graph = sbm_generate([8, 8], 0.5, 0.05, "onehot_block_noisy", Rng(0))
        self.cfg = small_train_config()
        self.params = ModelParams.init(self.graph.d, self.cfg.encoder, Rng(1))

    def test_loss_and_gradients(self):
        """Test the step returns a finite loss and fills every gradient."""
        result = training_step(self.graph, self.params, self.cfg, Rng(2))

        assert math.isfinite(result.loss)
        assert 0.5 <= result.lam <= 1.0
        for p in self.params.parameters():
            assert np.any(p.grad != 0.0)

    def test_deterministic(self):
        """Test the same stream reproduces loss and gradients."""
        first = training_step(self.graph, self.params, self.cfg, Rng(2))
        grads = [p.grad.copy() for p in self.params.parameters()]
        second = training_step(self.graph, self.params, self.cfg, Rng(2))

        assert first.loss == second.loss
        for p, g in zip(self.params.parameters(), grads):
            assert np.array_equal(p.grad, g)

    def test_no_backward_leaves_gradients(self):
        """Test backward=False does not touch gradients."""
        for p in self.params.parameters():
            p.grad[...] = 5.0
        training_step(self.graph, self.params, self.cfg, Rng(2), backward=False)

        assert all(np.all(p.grad == 5.0) for p in self.params.parameters())

    def test_mixup_off_is_identity_target(self):
        """Test the none strategy and lam fixed at 1 give the same loss."""
        off = small_train_config(mixup=MixupConfig(strategy="none"))
        fixed = small_train_config(mixup=MixupConfig(strategy="random", fixed_lambda=1.0))

        a = training_step(self.graph, self.params, off, Rng(3))
        b = training_step(self.graph, self.params, fixed, Rng(3))

        assert np.array_equal(a.h_mixed, a.h_a)
        assert np.array_equal(b.h_mixed, b.h_a)
        assert abs(a.loss - b.loss) < 1e-9

    def test_single_view_mode(self):
        """Test single-view mode contrasts the source graph itself."""
        cfg = small_train_config(view_mode="single")
        result = training_step(self.graph, self.params, cfg, Rng(4))

        assert result.views.view_a.edge_set() == self.graph.edge_set()


class TestGradientOracle:
    """Test the analytic gradient of the full loss."""

    def test_seeded_instance(self):
        """Test the seed-7 instance is within 1e-4 relative error."""
        assert gradient_check(seed=7) < 1e-4

    @pytest.mark.parametrize("strategy", ["cut", "local", "none"])
    def test_other_strategies(self, strategy):
        """Test gradients through the other partner strategies."""
        cfg = gradcheck_config(3)
        cfg = cfg.model_copy(
            update={
                "mixup": MixupConfig(strategy=strategy, fixed_lambda=0.7, fold_lambda=False),
                "encoder": cfg.encoder.model_copy(update={"activation": "leaky_relu"}),
            }
        )
        assert gradient_check(seed=3, cfg=cfg) < 1e-4

    def test_cosine_mean_reduction(self):
        """Test gradients with cosine similarity and mean reduction."""
        cfg = gradcheck_config(5)
        cfg = cfg.model_copy(
            update={
                "reduction": "mean",
                "loss": cfg.loss.model_copy(update={"similarity": "cosine"}),
                "encoder": cfg.encoder.model_copy(update={"activation": "leaky_relu"}),
            }
        )
        assert gradient_check(seed=5, cfg=cfg) < 1e-4


class TestPretrain:
    """Test the pretraining loop."""

    def setup_method(self):
        """Set up a small SBM graph."""
        self.graph = sbm_generate([10, 10], 0.5, 0.05, "onehot_block_noisy", Rng(0))

    def test_trace_per_epoch(self):
        """Test one finite record per epoch and zero wall time by default."""
        params, trace = pretrain(self.graph, small_train_config())

        assert [r.epoch for r in trace] == [1, 2, 3]
        assert all(math.isfinite(r.loss) for r in trace)
        assert all(r.seconds == 0.0 for r in trace)
        assert params.encoder.widths[0] == self.graph.d

    def test_deterministic(self):
        """Test identical seeds give identical traces and weights."""
        p1, t1 = pretrain(self.graph, small_train_config(seed=4))
        p2, t2 = pretrain(self.graph, small_train_config(seed=4))

        assert [(r.loss, r.align, r.uniform) for r in t1] == [(r.loss, r.align, r.uniform) for r in t2]
        for a, b in zip(p1.parameters(), p2.parameters()):
            assert np.array_equal(a.value, b.value)

    def test_callback_and_checkpoint_trace(self):
        """Test recomputed checkpoint metrics agree with the trace."""
        saved = []
        cfg = small_train_config()
        _, trace = pretrain(self.graph, cfg, lambda epoch, p: saved.append((epoch, copy_params(p))))

        assert [e for e, _ in saved] == [1, 2, 3]
        recomputed = checkpoint_trace(self.graph, cfg, saved)
        for original, again in zip(trace, recomputed):
            assert again.align == original.align
            assert again.uniform == original.uniform
            assert math.isnan(again.loss)

    def test_graph_task_batches(self):
        """Test pretraining on a graph collection in mini-batches."""
        graphs = [
            sbm_generate([3, 3], 0.6, 0.2, "random", Rng(10 + i)) for i in range(7)
        ]
        _, trace = pretrain(graphs, small_train_config(epochs=2, batch_size=3))

        assert len(trace) == 2

    def test_empty_collection(self):
        """Test an empty graph collection is rejected."""
        with pytest.raises(SchemaError):
            pretrain([], small_train_config())


class TestEmbed:
    """Test frozen embedding extraction."""

    def test_node_and_graph_shapes(self):
        """Test node rows for one graph and pooled rows for a collection."""
        cfg = EncoderConfig(hidden_dim=4, out_dim=3)
        g1 = Graph.from_edges(np.ones((3, 2)), [(0, 1), (1, 2)])
        g2 = Graph.from_edges(np.ones((2, 2)), [(0, 1)])
        params = ModelParams.init(2, cfg, Rng(0))

        assert embed(g1, params).shape == (3, 3)
        pooled = embed([g1, g2], params)
        assert pooled.shape == (2, 3)
        assert np.allclose(pooled[0], embed(g1, params).mean(axis=0))


class TestProbe:
    """Test linear probes."""

    def test_separable_node_probe(self):
        """Test well separated classes are classified perfectly."""
        rng = Rng(0)
        x, y = separable_embeddings(30, rng)
        split = random_split(y.size, rng.split("split"), 0.3, 0.5)
        report = linear_probe(x, y, split, runs=3, rng=rng.split("probe"))

        assert report.mean == 1.0
        assert report.runs == 3
        assert len(report.accuracies) == 3

    def test_probe_invariant_to_embedding_scale(self):
        """Test training-split standardization makes the scale of embeddings irrelevant."""
        x, y = separable_embeddings(20, Rng(7))
        train, test = np.arange(0, y.size, 2), np.arange(1, y.size, 2)

        small = fit_predict(x[train], y[train], x[test], y[test], 1e-4, Rng(8))
        large = fit_predict(1e4 * x[train], y[train], 1e4 * x[test], y[test], 1e-4, Rng(8))
        assert small == large == 1.0

    def test_single_class_training_split(self):
        """Test a training split with one class is degenerate."""
        x = np.arange(12, dtype=np.float64).reshape(6, 2)
        y = np.array([0, 0, 0, 1, 1, 1])
        split = {"train": np.array([0, 1]), "test": np.array([3, 4])}

        with pytest.raises(DegenerateLabelError):
            linear_probe(x, y, split, runs=1)

    def test_overlapping_split(self):
        """Test overlapping train and test indices are rejected."""
        x, y = separable_embeddings(5, Rng(0))
        with pytest.raises(SchemaError):
            linear_probe(x, y, {"train": np.array([0, 5, 10]), "test": np.array([0, 1])}, runs=1)

    def test_parallel_matches_serial(self):
        """Test worker count does not change the report."""
        rng = Rng(1)
        x, y = separable_embeddings(20, rng)
        x = x + rng.split("noise").normal(scale=3.0, size=x.shape)
        split = random_split(y.size, rng.split("split"))

        serial = linear_probe(x, y, split, runs=4, rng=Rng(9), workers=1)
        threaded = linear_probe(x, y, split, runs=4, rng=Rng(9), workers=4)
        assert serial.accuracies == threaded.accuracies

    def test_stratified_folds_balanced(self):
        """Test every fold gets each class in near-equal share."""
        y = np.repeat([0, 1], [20, 10])
        folds = stratified_folds(y, 5, Rng(2))

        for f in range(5):
            assert np.sum((folds == f) & (y == 0)) == 4
            assert np.sum((folds == f) & (y == 1)) == 2

    def test_kfold_separable(self):
        """Test k-fold accuracy on separable graph embeddings."""
        x, y = separable_embeddings(10, Rng(3))
        report = kfold_graph_probe(x, y, k=5, runs=2, rng=Rng(4))

        assert report.mean == 1.0
        assert report.folds == 5
        assert len(report.accuracies) == 10

    def test_kfold_too_many_folds(self):
        """Test k larger than the number of graphs."""
        x, y = separable_embeddings(1, Rng(3))
        with pytest.raises(SchemaError):
            kfold_graph_probe(x, y, k=10)

    def test_report_statistics(self):
        """Test sorted accuracies and population standard deviation."""
        report = ProbeReport.from_accuracies([0.9, 0.7, 0.8], runs=3)

        assert report.accuracies == [0.7, 0.8, 0.9]
        assert report.mean == pytest.approx(0.8)
        assert report.std == pytest.approx(np.sqrt(2.0 / 300.0))
        assert set(report.to_dict()) == {"accuracy_mean", "accuracy_std", "accuracies", "runs", "folds"}

    def test_evaluate_without_stored_split(self):
        """Test node datasets without a split fall back to a random split."""
        graph = sbm_generate([15, 15], 0.5, 0.02, "onehot_block_noisy", Rng(5))
        params = ModelParams.init(graph.d, EncoderConfig(hidden_dim=8, out_dim=8), Rng(6))
        probe_cfg = ProbeConfig(runs=2, train_fraction=0.5, test_fraction=0.4)
        report = evaluate(params, NodeDataset(graph), probe_cfg, seed=0)

        assert report.runs == 2
        assert 0.0 <= report.mean <= 1.0

    def test_evaluate_requires_labels(self):
        """Test unlabeled datasets cannot be probed."""
        graph = Graph.from_edges(np.ones((4, 2)), [(0, 1)])
        params = ModelParams.init(2, EncoderConfig(hidden_dim=4, out_dim=4), Rng(0))
        with pytest.raises(SchemaError):
            evaluate(params, NodeDataset(graph), ProbeConfig(runs=1))


class TestSweep:
    """Test experiment and sweep helpers."""

    def test_sweep_config_applies_axis(self):
        """Test an axis value and seed land in the resolved config."""
        base = RunConfig()

        assert sweep_config(base, "lambda", 0.3, 2).train.mixup.fixed_lambda == 0.3
        assert sweep_config(base, "strategy", "local", 0).train.mixup.strategy.value == "local"
        assert sweep_config(base, "layers", 3, 0).train.encoder.layers == 3
        cfg = sweep_config(base, "view_mode", "single", 5)
        assert cfg.train.view_mode.value == "single"
        assert cfg.train.seed == 5

    def test_unknown_axis(self):
        """Test unknown axes are schema errors."""
        with pytest.raises(SchemaError):
            sweep_config(RunConfig(), "tau", 0.5, 0)

    def test_invalid_axis_value(self):
        """Test values the configuration rejects."""
        with pytest.raises(SchemaError):
            sweep_config(RunConfig(), "lambda", 1.5, 0)

    def test_graph_experiment(self):
        """Test pretrain plus k-fold probe on a labeled graph collection."""
        graphs = []
        for i in range(12):
            g = sbm_generate([3, 3], 0.7, 0.1, "onehot_block_noisy", Rng(i))
            graphs.append(Graph(g.features, g.edges, graph_label=i % 2))
        cfg = RunConfig(
            task="graph",
            train=small_train_config(epochs=2, batch_size=4),
            probe=ProbeConfig(folds=3, graph_runs=1),
        )
        result = run_experiment(cfg, GraphDataset(graphs))

        assert len(result.trace) == 2
        assert result.report.folds == 3
        assert len(result.report.accuracies) == 3
        assert training_data(GraphDataset(graphs)) == graphs


@pytest.mark.slow
class TestSBMAcceptance:
    """End-to-end pretraining on the three-block SBM."""

    SEEDS = [0, 1, 2, 3, 4]

    def setup_method(self):
        """Set up the 450-node SBM dataset."""
        rng = Rng(1)
        graph = sbm_generate([150, 150, 150], 0.3, 0.01, "onehot_block_noisy", rng.split("sbm"))
        self.dataset = NodeDataset(graph, random_split(graph.n, rng.split("split")))

    def _run(self, seed: int, view_mode: str = "multi"):
        cfg = RunConfig(train=TrainConfig(seed=seed, view_mode=view_mode))
        return run_experiment(cfg, self.dataset)

    def test_accuracy_and_geometry(self):
        """Test probe accuracy and that alignment and uniformity both improve."""
        accuracies = []
        for seed in self.SEEDS:
            result = self._run(seed)
            records = list(result.trace)
            assert records[-1].align < records[0].align
            assert records[-1].uniform < records[0].uniform
            accuracies.append(result.report.mean)

        assert np.mean(accuracies) >= 0.95

    def test_multi_view_not_worse(self):
        """Test multi-view accuracy is at least single-view minus one point."""
        multi = np.mean([self._run(s, "multi").report.mean for s in self.SEEDS])
        single = np.mean([self._run(s, "single").report.mean for s in self.SEEDS])

        assert multi >= single - 0.01

    def test_lambda_half_not_worse_than_ninety(self):
        """Test a fixed ratio of 0.5 scores at least a fixed 0.9 minus two points."""
        base = RunConfig()
        means = {}
        for lam in (0.5, 0.9):
            means[lam] = np.mean([
                run_experiment(sweep_config(base, "lambda", lam, s), self.dataset).report.mean
                for s in self.SEEDS
            ])

        assert means[0.5] >= means[0.9] - 0.02


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
