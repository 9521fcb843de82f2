"""
Base dataset loader interface and in-memory dataset structures.

Defines the unified interface for reading and writing datasets in the
supported on-disk formats.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np

from idmix.errors import SchemaError
from idmix.graphdata.graph import Graph

PathLike = Union[str, Path]
Split = Dict[str, np.ndarray]


def read_lines(path: Path) -> List[str]:
    """
    Decode a UTF-8 text file line by line, keeping line endings.

    Raises:
        SchemaError: At the first line holding bytes that are not UTF-8
    """
    lines: List[str] = []
    with open(path, "rb") as f:
        for line_no, raw in enumerate(f, start=1):
            try:
                lines.append(raw.decode("utf-8"))
            except UnicodeDecodeError as e:
                raise SchemaError(f"not valid UTF-8: {e.reason}", path, line_no) from e
    return lines


@dataclass(frozen=True, eq=False)
class NodeDataset:
    """One graph whose nodes are classified; optional fixed split."""

    graph: Graph
    split: Optional[Split] = None
    name: str = "node"

    @property
    def labels(self) -> Optional[np.ndarray]:
        return self.graph.node_labels


@dataclass(frozen=True, eq=False)
class GraphDataset:
    """A collection of graphs, each with a graph-level class."""

    graphs: List[Graph] = field(default_factory=list)
    name: str = "graph"

    @property
    def labels(self) -> Optional[np.ndarray]:
        if any(g.graph_label is None for g in self.graphs):
            return None
        return np.array([g.graph_label for g in self.graphs], dtype=np.int64)

    @property
    def feature_width(self) -> int:
        return self.graphs[0].d if self.graphs else 0


Dataset = Union[NodeDataset, GraphDataset]


class DatasetLoader(ABC):
    """
    Abstract base class for dataset formats.

    Loaders are total: malformed input raises ``SchemaError`` carrying the
    offending file and line, never a bare parsing exception.
    """

    @abstractmethod
    def load(self, path: PathLike) -> Dataset:
        """
        Read a dataset directory.

        Args:
            path: Dataset directory

        Returns:
            The loaded dataset

        Raises:
            SchemaError: If files are missing, malformed or inconsistent
        """

    @abstractmethod
    def save(self, dataset: Dataset, path: PathLike) -> Path:
        """
        Write a dataset directory that ``load`` reads back exactly.

        Returns:
            The directory written
        """
