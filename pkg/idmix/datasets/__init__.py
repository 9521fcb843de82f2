"""Dataset structures and on-disk formats."""

from idmix.datasets.base import Dataset, DatasetLoader, GraphDataset, NodeDataset
from idmix.datasets.node_format import (
    NodeFormatLoader,
    check_split,
    load_node_dataset,
    save_node_dataset,
)
from idmix.datasets.tu_format import TUFormatLoader, load_tu_dataset, save_tu_dataset
from idmix.datasets.factory import DatasetLoaderFactory, load_dataset

__all__ = [
    "Dataset",
    "DatasetLoader",
    "GraphDataset",
    "NodeDataset",
    "NodeFormatLoader",
    "check_split",
    "load_node_dataset",
    "save_node_dataset",
    "TUFormatLoader",
    "load_tu_dataset",
    "save_tu_dataset",
    "DatasetLoaderFactory",
    "load_dataset",
]
