"""
Factory for creating mixup strategies.

Maps strategy names to concrete strategy implementations.
"""

from typing import Dict, Type, Union

from idmix.config.models import CutLabelMode, MixupConfig, MixupStrategyName
from idmix.errors import SchemaError
from idmix.mixup.base import MixupStrategy
from idmix.mixup.strategies import CutMixup, LocalMixup, NoMixup, RandomMixup


class MixupStrategyFactory:
    """Factory for creating mixup strategy instances."""

    _registry: Dict[str, Type[MixupStrategy]] = {
        "random": RandomMixup,
        "cut": CutMixup,
        "local": LocalMixup,
        "none": NoMixup,
    }

    @classmethod
    def create(
        cls,
        strategy_name: Union[MixupStrategyName, str],
        cut_label_mode: Union[CutLabelMode, str] = CutLabelMode.NOMINAL,
    ) -> MixupStrategy:
        """
        Create a mixup strategy instance.

        Args:
            strategy_name: Name of the strategy to use
            cut_label_mode: Label weighting for the cut strategy

        Returns:
            Instantiated strategy

        Raises:
            SchemaError: If strategy name is unknown
        """
        name = strategy_name.value if isinstance(strategy_name, MixupStrategyName) else strategy_name
        strategy_class = cls._registry.get(name)

        if strategy_class is None:
            raise SchemaError(
                f"Unknown mixup strategy: {name}. "
                f"Available strategies: {list(cls._registry.keys())}"
            )

        if strategy_class is CutMixup:
            return CutMixup(cut_label_mode)
        return strategy_class()

    @classmethod
    def from_config(cls, cfg: MixupConfig) -> MixupStrategy:
        return cls.create(cfg.strategy, cfg.cut_label_mode)

    @classmethod
    def register(cls, strategy_name: str, strategy_class: Type[MixupStrategy]):
        """
        Register a custom mixup strategy.

        Args:
            strategy_name: Name to register the strategy under
            strategy_class: Strategy class to register
        """
        cls._registry[strategy_name] = strategy_class
