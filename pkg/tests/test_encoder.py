"""
Tests for the GCN encoder, projection head and model container.
"""

import numpy as np
import pytest

from idmix.config.models import Activation, EncoderConfig
from idmix.encoder.gcn import EncoderParams, encode, encode_backward
from idmix.encoder.model import ModelParams
from idmix.encoder.projection import ProjectionParams, project, project_backward
from idmix.errors import DimensionError, StateError
from idmix.graphdata.graph import Graph
from idmix.graphdata.propagation import normalized_adjacency
from idmix.graphdata.synthetic import sbm_generate
from idmix.numcore.gradcheck import finite_diff_check
from idmix.numcore.optim import AdamState, adam_step
from idmix.numcore.rng import Rng


class TestEncoder:
    """Test encoder forward and backward passes."""

    def setup_method(self):
        """Set up a small SBM graph and a 2-layer encoder."""
        self.graph = sbm_generate([5, 5], 0.6, 0.1, "random", Rng(0))
        self.s = normalized_adjacency(self.graph)
        self.params = EncoderParams.init([self.graph.d, 6, 4], Rng(1), Activation.LEAKY_RELU)

    def test_output_shape(self):
        """Test H has one row per node and the last layer width."""
        h, _ = encode(self.s, self.graph.features, self.params)
        assert h.shape == (10, 4)

    def test_permutation_equivariance(self):
        """Test encoding a relabeled graph permutes the output rows."""
        perm = Rng(2).permutation(self.graph.n)
        inverse = np.argsort(perm)
        permuted = Graph.from_edges(self.graph.features[perm], inverse[self.graph.edges])

        h, _ = encode(self.s, self.graph.features, self.params)
        h_perm, _ = encode(normalized_adjacency(permuted), permuted.features, self.params)
        assert np.max(np.abs(h_perm - h[perm])) < 1e-9

    def test_depends_only_on_l_hop_neighbourhood(self):
        """Test perturbing a node leaves rows more than L hops away bit-identical."""
        rng = Rng(3)
        path = [(i, i + 1) for i in range(7)]
        x = rng.normal(size=(8, 3))
        graph = Graph.from_edges(x, path)
        s = normalized_adjacency(graph)
        params = EncoderParams.init([3, 5, 4], rng.split("params"), Activation.LEAKY_RELU)

        h, _ = encode(s, x, params)
        x_moved = x.copy()
        x_moved[7] += 10.0 * rng.split("shift").normal(size=3)
        h_moved, _ = encode(s, x_moved, params)

        assert np.array_equal(h[:5], h_moved[:5])
        assert not np.array_equal(h[5:], h_moved[5:])

    def test_feature_width_checked(self):
        """Test features must match the first layer."""
        with pytest.raises(DimensionError):
            encode(self.s, np.ones((10, 3)), self.params)

    def test_backward_matches_finite_differences(self):
        """Test weight gradients of a linear functional of H."""
        target = Rng(3).normal(size=(10, 4))

        def loss_fn(_):
            for w in self.params.weights:
                w.zero_grad()
            h, cache = encode(self.s, self.graph.features, self.params)
            encode_backward(target, cache)
            return float(np.sum(h * target))

        assert finite_diff_check(loss_fn, self.params.weights) < 1e-6

    def test_cache_consumed_once(self):
        """Test a cache cannot be backpropagated twice."""
        h, cache = encode(self.s, self.graph.features, self.params)
        encode_backward(np.ones_like(h), cache)

        with pytest.raises(StateError):
            encode_backward(np.ones_like(h), cache)

    def test_stale_cache_after_update(self):
        """Test a cache taken before an optimizer step is rejected."""
        h, cache = encode(self.s, self.graph.features, self.params)
        for w in self.params.weights:
            w.grad[...] = 1.0
        adam_step(self.params.weights, AdamState())

        with pytest.raises(StateError):
            encode_backward(np.ones_like(h), cache)

    def test_identity_last_layer(self):
        """Test activate_last=False leaves the final layer linear."""
        params = EncoderParams.init([self.graph.d, 6, 4], Rng(1), Activation.RELU, activate_last=False)
        h, _ = encode(self.s, self.graph.features, params)

        assert params.layer_activation(1) == Activation.IDENTITY
        assert np.any(h < 0.0)

    def test_widths_must_chain(self):
        """Test mismatched consecutive layers are rejected."""
        good = EncoderParams.init([4, 3, 2], Rng(0))
        with pytest.raises(DimensionError):
            EncoderParams([good.weights[1], good.weights[0]])


class TestProjection:
    """Test the projection head."""

    def test_backward_matches_finite_differences(self):
        """Test head weight gradients and the input gradient path."""
        rng = Rng(5)
        head = ProjectionParams.init(4, 5, 3, rng, Activation.LEAKY_RELU)
        h = rng.split("h").normal(size=(7, 4))
        target = rng.split("t").normal(size=(7, 3))

        def loss_fn(_):
            head.w1.zero_grad()
            head.w2.zero_grad()
            z, cache = project(h, head)
            project_backward(target, cache)
            return float(np.sum(z * target))

        assert finite_diff_check(loss_fn, [head.w1, head.w2]) < 1e-6

    def test_input_width_checked(self):
        """Test H must match W1."""
        head = ProjectionParams.init(4, 5, 3, Rng(0))
        with pytest.raises(DimensionError):
            project(np.ones((2, 6)), head)


class TestModelParams:
    """Test the model container."""

    def test_init_from_config(self):
        """Test widths and parameter names follow the configuration."""
        cfg = EncoderConfig(layers=3, hidden_dim=8, out_dim=6, proj_hidden_dim=5, proj_out_dim=4)
        params = ModelParams.init(10, cfg, Rng(0))

        assert params.encoder.widths == [10, 8, 8, 6]
        assert list(params.named()) == [
            "encoder.W0", "encoder.W1", "encoder.W2", "head.W1", "head.W2"
        ]
        assert params.head.w2.shape == (5, 4)

    def test_init_deterministic(self):
        """Test the same stream gives the same weights."""
        cfg = EncoderConfig(hidden_dim=4, out_dim=4, proj_hidden_dim=4, proj_out_dim=4)
        a = ModelParams.init(3, cfg, Rng(9))
        b = ModelParams.init(3, cfg, Rng(9))

        for pa, pb in zip(a.parameters(), b.parameters()):
            assert np.array_equal(pa.value, pb.value)

    def test_layout(self):
        """Test layout metadata used for checkpoints."""
        params = ModelParams.init(3, EncoderConfig(layers=1, out_dim=2), Rng(0))
        assert params.layout() == {"layers": 1, "activation": "relu", "activate_last": True}


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
