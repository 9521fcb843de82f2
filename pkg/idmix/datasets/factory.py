"""
Dataset loader factory keyed by task.

Uses registry pattern to support extensibility.
"""

from typing import Dict, Type, Union

from idmix.config.models import Task
from idmix.datasets.base import Dataset, DatasetLoader, PathLike
from idmix.datasets.node_format import NodeFormatLoader
from idmix.datasets.tu_format import TUFormatLoader
from idmix.errors import SchemaError


class DatasetLoaderFactory:
    """Factory for creating dataset loaders based on the task."""

    _registry: Dict[str, Type[DatasetLoader]] = {
        Task.NODE.value: NodeFormatLoader,
        Task.GRAPH.value: TUFormatLoader,
    }

    @classmethod
    def register(cls, task: str, loader_class: Type[DatasetLoader]):
        """
        Register a new loader type.

        Args:
            task: Task name
            loader_class: Loader class to register
        """
        cls._registry[task] = loader_class

    @classmethod
    def create(cls, task: Union[Task, str]) -> DatasetLoader:
        """
        Create a loader for ``task``.

        Raises:
            SchemaError: If no loader is registered for the task
        """
        key = task.value if isinstance(task, Task) else task
        loader_class = cls._registry.get(key)
        if loader_class is None:
            raise SchemaError(
                f"No dataset loader registered for task: {key}. "
                f"Available: {list(cls._registry.keys())}"
            )
        return loader_class()


def load_dataset(path: PathLike, task: Union[Task, str]) -> Dataset:
    return DatasetLoaderFactory.create(task).load(path)
