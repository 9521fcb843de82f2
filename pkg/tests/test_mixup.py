"""
Tests for mixup strategies, mixing-ratio sampling and mixed identity labels.
"""

import numpy as np
import pytest
from scipy import stats

from idmix.config.models import MixupConfig
from idmix.errors import DegenerateBatchError, DimensionError, SchemaError
from idmix.mixup.base import MixAssignment
from idmix.mixup.factory import MixupStrategyFactory
from idmix.mixup.labels import implied_label_rows, label_matrix, sample_lambda
from idmix.mixup.strategies import (
    CutMixup,
    NoMixup,
    cut_mixup,
    local_mixup,
    random_mixup,
)
from idmix.numcore.rng import Rng


def brute_force_nearest(h: np.ndarray) -> np.ndarray:
    """Nearest other row by explicit loops; ties to the lowest index."""
    n = h.shape[0]
    partner = np.zeros(n, dtype=np.int64)
    for i in range(n):
        best, best_j = np.inf, -1
        for j in range(n):
            if j == i:
                continue
            dist = float(np.sum((h[i] - h[j]) ** 2))
            if dist < best:
                best, best_j = dist, j
        partner[i] = best_j
    return partner


class TestStrategies:
    """Test mixing of embedding rows."""

    def setup_method(self):
        """Set up a random embedding batch."""
        self.h = Rng(0).normal(size=(16, 5))

    @pytest.mark.parametrize("name", ["random", "cut", "local", "none"])
    def test_lambda_one_is_identity(self, name):
        """Test lam=1 leaves H bit-identical for every strategy."""
        strategy = MixupStrategyFactory.create(name)
        mixed, _ = strategy.mix(self.h, 1.0, Rng(1))

        assert np.array_equal(mixed, self.h)

    def test_random_mixup_convex(self):
        """Test random mixup rows are convex combinations with permutation partners."""
        mixed, a = random_mixup(self.h, 0.7, Rng(2))

        assert sorted(a.partner.tolist()) == list(range(16))
        assert np.allclose(mixed, 0.7 * self.h + 0.3 * self.h[a.partner])
        assert a.strategy == "random"

    def test_cut_mixup_splices(self):
        """Test cut mixup takes each coordinate from the row or its partner."""
        mixed, a = cut_mixup(self.h, 0.6, Rng(3))
        expected = np.where(a.cut_masks, self.h, self.h[a.partner])

        assert np.array_equal(mixed, expected)
        assert a.lam_rows is None
        assert a.lam == 0.6

    def test_cut_mixup_realized_labels(self):
        """Test realized label mode weights rows by their kept fraction."""
        _, a = cut_mixup(self.h, 0.6, Rng(3), label_mode="realized")

        assert np.allclose(a.row_weights(), a.cut_masks.mean(axis=1))

    def test_local_matches_brute_force(self):
        """Test nearest-neighbour partners against a loop oracle."""
        rng = Rng(4)
        for trial in range(100):
            n = 2 + int(rng.integers(0, 255))
            h = rng.split(f"batch{trial}").normal(size=(n, 3))
            _, a = local_mixup(h, 0.5)

            assert np.array_equal(a.partner, brute_force_nearest(h))

    def test_local_needs_two_rows(self):
        """Test a single-row batch is degenerate for local mixup."""
        with pytest.raises(DegenerateBatchError):
            local_mixup(np.ones((1, 3)), 0.5)

    def test_empty_batch(self):
        """Test an empty batch is degenerate for random mixup."""
        with pytest.raises(DegenerateBatchError):
            random_mixup(np.zeros((0, 3)), 0.5, Rng(0))

    def test_no_mixup_identity_assignment(self):
        """Test the none strategy returns identity partners and lam=1."""
        mixed, a = NoMixup().mix(self.h, 0.3, Rng(0))

        assert np.array_equal(mixed, self.h)
        assert a.partner.tolist() == list(range(16))
        assert a.lam == 1.0


class TestBackward:
    """Test gradients through mixing."""

    def setup_method(self):
        """Set up embeddings and an upstream gradient."""
        rng = Rng(7)
        self.h = rng.normal(size=(9, 4))
        self.upstream = rng.split("up").normal(size=(9, 4))

    def test_convex_backward(self):
        """Test backward equals the transposed mixing matrix applied upstream."""
        strategy = MixupStrategyFactory.create("random")
        _, a = strategy.mix(self.h, 0.7, Rng(8))
        mix = 0.7 * np.eye(9)
        mix[np.arange(9), a.partner] += 0.3

        assert np.allclose(strategy.backward(self.upstream, a), mix.T @ self.upstream)

    def test_cut_backward(self):
        """Test cut gradients route each coordinate to its source row."""
        strategy = CutMixup()
        _, a = strategy.mix(self.h, 0.5, Rng(9))
        expected = np.zeros_like(self.h)
        for i in range(9):
            for k in range(4):
                src = i if a.cut_masks[i, k] else a.partner[i]
                expected[src, k] += self.upstream[i, k]

        assert np.allclose(strategy.backward(self.upstream, a), expected)

    def test_row_count_checked(self):
        """Test upstream must have one row per partner."""
        strategy = MixupStrategyFactory.create("random")
        _, a = strategy.mix(self.h, 0.7, Rng(8))
        with pytest.raises(DimensionError):
            strategy.backward(self.upstream[:3], a)


class TestLabels:
    """Test mixing ratios and label matrices."""

    def test_fixed_lambda_folded(self):
        """Test a fixed ratio below 0.5 is folded."""
        cfg = MixupConfig(fixed_lambda=0.3)
        assert sample_lambda(cfg, Rng(0)) == pytest.approx(0.7)

    def test_fixed_lambda_unfolded(self):
        """Test folding can be switched off."""
        cfg = MixupConfig(fixed_lambda=0.3, fold_lambda=False)
        assert sample_lambda(cfg, Rng(0)) == pytest.approx(0.3)

    def test_beta_draws_folded(self):
        """Test folded Beta draws lie in [0.5, 1]."""
        draws = sample_lambda(MixupConfig(), Rng(1), size=1000)

        assert draws.shape == (1000,)
        assert np.all((draws >= 0.5) & (draws <= 1.0))

    def test_folded_beta_mean(self):
        """Test folded Beta(1, 1) draws average 3/4."""
        draws = sample_lambda(MixupConfig(), Rng(2), size=100_000)

        assert abs(float(np.mean(draws)) - 0.75) < 0.005

    def test_unfolded_beta_uniform(self):
        """Test unfolded Beta(1, 1) draws are uniform on [0, 1]."""
        draws = sample_lambda(MixupConfig(fold_lambda=False), Rng(3), size=100_000)

        assert stats.kstest(draws, "uniform").statistic < 0.01

    def test_label_rows_sum_to_one(self):
        """Test every mixed label row sums to 1."""
        _, a = random_mixup(Rng(0).normal(size=(12, 3)), 0.8, Rng(5))
        p = label_matrix(a)

        assert np.allclose(p.sum(axis=1), 1.0)
        assert np.allclose(np.diag(p)[a.partner != np.arange(12)], 0.8)

    def test_self_partner_merged(self):
        """Test a row partnered with itself has a single full-weight entry."""
        a = MixAssignment(np.array([0, 2, 1]), 0.6, "random")
        rows = implied_label_rows(a, 3)

        assert rows[0] == [(0, 1.0)]
        assert rows[1] == [(1, 0.6), (2, pytest.approx(0.4))]

    def test_label_rows_size_checked(self):
        """Test asking for the wrong batch size."""
        with pytest.raises(DimensionError):
            implied_label_rows(MixAssignment.identity(3), 4)

    def test_assignment_validation(self):
        """Test partners and lam are range checked."""
        with pytest.raises(SchemaError):
            MixAssignment(np.array([0, 5]), 0.5, "random")
        with pytest.raises(SchemaError):
            MixAssignment(np.array([0, 1]), 1.5, "random")


class TestFactory:
    """Test the strategy registry."""

    def test_create_known(self):
        """Test each registered name builds its strategy."""
        for name in ["random", "cut", "local", "none"]:
            assert MixupStrategyFactory.create(name).name == name

    def test_unknown_strategy(self):
        """Test unknown names raise SchemaError."""
        with pytest.raises(SchemaError):
            MixupStrategyFactory.create("manifold")

    def test_from_config_passes_label_mode(self):
        """Test the cut label mode is taken from the configuration."""
        strategy = MixupStrategyFactory.from_config(
            MixupConfig(strategy="cut", cut_label_mode="realized")
        )
        assert strategy.label_mode.value == "realized"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
