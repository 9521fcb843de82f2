"""
Tests for configuration models and the configuration loader.
"""

import json

import pytest
import yaml
from pydantic import ValidationError

from idmix.cli.utils.config import load_run_config
from idmix.config.loader import ConfigLoader, apply_override
from idmix.config.models import (
    AugmentConfig,
    MixupConfig,
    ProbeConfig,
    RunConfig,
    TrainConfig,
)
from idmix.errors import SchemaError


class TestModels:
    """Test defaults and field validation."""

    def test_defaults(self):
        """Test the documented defaults."""
        cfg = RunConfig()

        assert cfg.task.value == "node"
        assert cfg.train.epochs == 200
        assert cfg.train.lr == 5e-4
        assert cfg.train.weight_decay == 1e-5
        assert cfg.train.loss.tau == 0.2
        assert cfg.train.augment_a.p_edge == 0.2
        assert cfg.train.augment_a.p_feat == 0.3
        assert cfg.train.augment_a.feat_granularity.value == "per_entry"
        assert cfg.train.mixup.strategy.value == "random"
        assert cfg.train.mixup.beta_alpha == cfg.train.mixup.beta_beta == 1.0
        assert cfg.train.encoder.layers == 2
        assert cfg.train.reduction.value == "sum"
        assert cfg.probe.runs == 20

    def test_unknown_key_rejected(self):
        """Test unknown keys are errors at every level."""
        with pytest.raises(ValidationError):
            TrainConfig(epoch=3)
        with pytest.raises(ValidationError):
            RunConfig.model_validate({"train": {"mixup": {"alpha": 1.0}}})

    def test_probability_range(self):
        """Test augmentation probabilities must lie in [0, 1)."""
        with pytest.raises(ValidationError):
            AugmentConfig(p_edge=1.0)
        assert AugmentConfig(p_feat=0.0).p_feat == 0.0

    def test_fixed_lambda_range(self):
        """Test fixed_lambda must lie in [0, 1]."""
        with pytest.raises(ValidationError):
            MixupConfig(fixed_lambda=1.2)

    def test_probe_fractions(self):
        """Test train and test fractions may not exceed 1 together."""
        with pytest.raises(ValidationError):
            ProbeConfig(train_fraction=0.5, test_fraction=0.6)

    def test_encoder_widths(self):
        """Test layer widths from input to output."""
        enc = TrainConfig().encoder.model_copy(update={"layers": 3, "hidden_dim": 16, "out_dim": 8})
        assert enc.widths(5) == [5, 16, 16, 8]


class TestConfigLoader:
    """Test loading, overrides and dumping."""

    def test_load_from_dict_schema_error(self):
        """Test invalid dictionaries become schema errors naming the field."""
        with pytest.raises(SchemaError) as exc:
            ConfigLoader.load_from_dict({"train": {"epochs": 0}})
        assert "train.epochs" in str(exc.value)

    def test_load_yaml_with_overrides(self, tmp_path):
        """Test file values, overrides and seed are applied in order."""
        path = tmp_path / "run.yaml"
        path.write_text(yaml.safe_dump({"dataset": "data/x", "train": {"epochs": 10}}), encoding="utf-8")

        cfg = ConfigLoader.load(
            str(path), ["train.epochs=20", "train.mixup.strategy=local", "train.loss.tau=0.5"], seed=9
        )

        assert cfg.dataset == "data/x"
        assert cfg.train.epochs == 20
        assert cfg.train.mixup.strategy.value == "local"
        assert cfg.train.loss.tau == 0.5
        assert cfg.train.seed == 9

    def test_load_json(self, tmp_path):
        """Test JSON configuration files."""
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"task": "graph"}), encoding="utf-8")

        assert ConfigLoader.load(str(path)).task.value == "graph"

    def test_unsupported_format(self, tmp_path):
        """Test unknown file suffixes."""
        path = tmp_path / "run.toml"
        path.write_text("x = 1", encoding="utf-8")

        with pytest.raises(SchemaError):
            ConfigLoader.load(str(path))

    def test_non_mapping_root(self, tmp_path):
        """Test a list document is rejected."""
        path = tmp_path / "run.yaml"
        path.write_text("- 1\n- 2\n", encoding="utf-8")

        with pytest.raises(SchemaError):
            ConfigLoader.load(str(path))

    def test_dump_round_trip(self, tmp_path):
        """Test the resolved configuration reloads to an equal model."""
        cfg = ConfigLoader.load(None, ["train.mixup.fixed_lambda=0.6", "output_dir=runs/a"], seed=3)
        ConfigLoader.dump(cfg, tmp_path / "resolved_config.yaml")

        assert ConfigLoader.load(str(tmp_path / "resolved_config.yaml")) == cfg

    def test_literal_paths_not_parsed(self):
        """Test dataset and output paths that look like YAML scalars stay strings."""
        cfg = load_run_config(None, ["dataset=data/x"], dataset="123", output_dir="true")

        assert cfg.dataset == "123"
        assert cfg.output_dir == "true"
        assert ConfigLoader.load(None, literals={"dataset": "null"}).dataset == "null"

    def test_override_value_types(self):
        """Test override values follow YAML scalar rules."""
        data = {}
        apply_override(data, "train.epochs=5")
        apply_override(data, "train.mixup.fold_lambda=false")
        apply_override(data, "train.mixup.fixed_lambda=null")

        assert data == {"train": {"epochs": 5, "mixup": {"fold_lambda": False, "fixed_lambda": None}}}

    def test_override_errors(self):
        """Test malformed overrides."""
        with pytest.raises(SchemaError):
            apply_override({}, "train.epochs")
        with pytest.raises(SchemaError):
            apply_override({}, "=3")
        with pytest.raises(SchemaError):
            apply_override({"train": 5}, "train.epochs=3")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
