"""
Tests for the dense numerical foundation.

Covers matrix helpers, splittable random streams, Glorot initialization,
the Adam update and the finite-difference oracle.
"""

import math

import numpy as np
import pytest

from idmix.errors import DimensionError, NumericError, SchemaError
from idmix.numcore.gradcheck import finite_diff_check
from idmix.numcore.matrix import (
    as_matrix,
    l2_normalize_rows,
    matmul,
    softmax_rows,
    stable_log_softmax_rows,
)
from idmix.numcore.optim import AdamState, adam_step
from idmix.numcore.params import ParamTensor, glorot_init
from idmix.numcore.rng import Rng
from idmix.utils.concurrent import parallel_map


class TestMatrix:
    """Test matrix helpers."""

    def test_as_matrix_rejects_vectors(self):
        """Test that 1-D input is a dimension error."""
        with pytest.raises(DimensionError):
            as_matrix([1.0, 2.0, 3.0])

    def test_as_matrix_rejects_nan(self):
        """Test that non-finite entries are rejected."""
        with pytest.raises(NumericError):
            as_matrix([[1.0, float("nan")]])

    def test_matmul_shape_mismatch(self):
        """Test that incompatible operands raise DimensionError."""
        with pytest.raises(DimensionError):
            matmul(np.ones((2, 3)), np.ones((2, 3)))

    def test_parallel_matmul_matches_serial(self):
        """Test row-block parallel product equals a single product."""
        rng = Rng(3)
        a = rng.normal(size=(300, 7))
        b = rng.normal(size=(7, 5))

        assert np.allclose(matmul(a, b, workers=4), a @ b, atol=1e-12)

    def test_log_softmax_large_scores(self):
        """Test log-softmax stays finite for scores around 1e3."""
        s = np.array([[1000.0, 999.0, 998.0], [-1000.0, 0.0, 1000.0]])
        out = stable_log_softmax_rows(s)

        assert np.all(np.isfinite(out))
        assert np.allclose(np.exp(out).sum(axis=1), 1.0)
        assert np.allclose(softmax_rows(s), np.exp(out))

    def test_normalize_zero_row(self):
        """Test that a zero row cannot be normalized."""
        with pytest.raises(NumericError):
            l2_normalize_rows(np.array([[1.0, 0.0], [0.0, 0.0]]))

    def test_normalize_unit_rows(self):
        """Test normalized rows have unit norm and norms are returned."""
        z, norms = l2_normalize_rows(np.array([[3.0, 4.0], [0.0, 2.0]]))

        assert np.allclose(norms, [5.0, 2.0])
        assert np.allclose(np.linalg.norm(z, axis=1), 1.0)


class TestRng:
    """Test splittable random streams."""

    def test_same_seed_same_stream(self):
        """Test identical seeds produce identical draws."""
        assert np.array_equal(Rng(11).random(5), Rng(11).random(5))

    def test_split_independent_of_parent_position(self):
        """Test a child stream does not depend on parent consumption."""
        parent = Rng(5)
        before = parent.split("views").random(4)
        parent.random(100)
        after = parent.split("views").random(4)

        assert np.array_equal(before, after)

    def test_split_labels_differ(self):
        """Test distinct labels give distinct streams."""
        root = Rng(5)
        assert not np.array_equal(root.split("a").random(4), root.split("b").random(4))


class TestParams:
    """Test parameter tensors and initialization."""

    def test_glorot_bounds(self):
        """Test Glorot entries lie within sqrt(6/(fan_in+fan_out))."""
        w = glorot_init(30, 20, Rng(0))
        bound = math.sqrt(6.0 / 50)

        assert w.shape == (30, 20)
        assert np.all(np.abs(w) <= bound)

    def test_glorot_variance(self):
        """Test Glorot entries have variance 2 / (fan_in + fan_out)."""
        rng = Rng(1)
        w = np.concatenate([glorot_init(50, 50, rng.split(f"draw{i}")).ravel() for i in range(4)])

        assert w.size == 10_000
        assert abs(float(np.var(w)) - 0.02) < 0.002

    def test_glorot_rejects_zero_dimension(self):
        """Test a zero dimension is rejected."""
        with pytest.raises(DimensionError):
            glorot_init(0, 4, Rng(0))

    def test_grad_shape_checked(self):
        """Test mismatched gradient buffers are rejected."""
        with pytest.raises(DimensionError):
            ParamTensor("w", np.zeros((2, 2)), np.zeros((3, 2)))


class TestAdam:
    """Test the Adam update."""

    def test_first_step_moves_by_lr(self):
        """Test the bias-corrected first step has magnitude lr per coordinate."""
        p = ParamTensor("w", np.array([[1.0, -1.0]]))
        p.grad[...] = [[0.5, -2.0]]
        state = adam_step([p], AdamState(lr=0.1))

        assert state.t == 1
        assert np.allclose(p.value, [[0.9, -0.9]], atol=1e-6)
        assert p.version == 1

    def test_weight_decay_added_to_gradient(self):
        """Test weight decay alone drives the value toward zero."""
        p = ParamTensor("w", np.array([[2.0]]))
        adam_step([p], AdamState(lr=0.1, weight_decay=1.0))

        assert p.value[0, 0] < 2.0

    def test_zero_gradient_fixed_point(self):
        """Test a zero gradient without weight decay never moves the value."""
        p = ParamTensor("w", np.array([[1.5, -0.25]]))
        state = AdamState(lr=0.1, weight_decay=0.0)
        for _ in range(5):
            p.grad[...] = 0.0
            adam_step([p], state)

        assert np.array_equal(p.value, [[1.5, -0.25]])
        assert state.t == 5

    def test_non_finite_gradient(self):
        """Test a NaN gradient aborts before any update."""
        p = ParamTensor("w", np.array([[1.0]]))
        p.grad[...] = np.nan

        with pytest.raises(NumericError):
            adam_step([p], AdamState())
        assert p.value[0, 0] == 1.0

    def test_quadratic_converges(self):
        """Test Adam minimizes a simple quadratic."""
        p = ParamTensor("w", np.array([[3.0, -4.0]]))
        state = AdamState(lr=0.1)
        for _ in range(1000):
            p.grad[...] = 2.0 * p.value
            adam_step([p], state)

        assert np.all(np.abs(p.value) < 5e-2)


class TestFiniteDiff:
    """Test the central finite-difference oracle."""

    def test_exact_gradient_passes(self):
        """Test a correct analytic gradient gives a tiny error."""
        p = ParamTensor("w", Rng(1).normal(size=(3, 2)))

        def loss_fn(params):
            w = params[0]
            w.grad[...] = 2.0 * w.value
            return float(np.sum(w.value**2))

        assert finite_diff_check(loss_fn, [p]) < 1e-7

    def test_wrong_gradient_detected(self):
        """Test a deliberately wrong gradient gives a large error."""
        p = ParamTensor("w", np.ones((2, 2)))

        def loss_fn(params):
            w = params[0]
            w.grad[...] = w.value
            return float(np.sum(w.value**2))

        assert finite_diff_check(loss_fn, [p]) > 0.1

    def test_eps_range(self):
        """Test eps outside [1e-7, 1e-3] is rejected."""
        p = ParamTensor("w", np.ones((1, 1)))
        with pytest.raises(SchemaError):
            finite_diff_check(lambda ps: 0.0, [p], eps=1e-2)

    def test_non_finite_loss(self):
        """Test a NaN loss raises NumericError."""
        p = ParamTensor("w", np.ones((1, 1)))
        with pytest.raises(NumericError):
            finite_diff_check(lambda ps: float("nan"), [p])


class TestParallelMap:
    """Test ordered parallel execution."""

    def test_results_in_input_order(self):
        """Test results follow input order regardless of completion order."""
        assert parallel_map(lambda x: x * x, list(range(20)), max_workers=4) == [
            x * x for x in range(20)
        ]

    def test_engine_errors_pass_through(self):
        """Test IdMixError subclasses are re-raised unchanged."""

        def boom(x):
            raise NumericError(f"bad {x}")

        with pytest.raises(NumericError):
            parallel_map(boom, [1, 2], max_workers=2)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
