"""
Node-classification dataset directory.

Layout:
    edges.tsv      one ``u<TAB>v`` pair per line, 0-based
    features.csv   n rows of d comma-separated floats
    labels.csv     n class ids, one per line (optional)
    split.json     {"train": [...], "test": [...], "val": [...]} (optional,
                   ``val`` may be omitted)
"""

import csv
import json
from pathlib import Path
from typing import List, Optional

import numpy as np
from loguru import logger

from idmix.datasets.base import DatasetLoader, NodeDataset, PathLike, Split, read_lines
from idmix.errors import SchemaError
from idmix.graphdata.graph import Graph, canonical_edges

EDGES_FILE = "edges.tsv"
FEATURES_FILE = "features.csv"
LABELS_FILE = "labels.csv"
SPLIT_FILE = "split.json"


class NodeFormatLoader(DatasetLoader):
    """Loader for the node-classification directory layout."""

    def load(self, path: PathLike) -> NodeDataset:
        """Read features, edges, optional labels and optional split."""
        root = Path(path)
        if not root.is_dir():
            raise SchemaError("dataset directory not found", root)

        features = self._read_features(root / FEATURES_FILE)
        n = features.shape[0]
        edges = self._read_edges(root / EDGES_FILE, n)

        labels = None
        if (root / LABELS_FILE).exists():
            labels = self._read_labels(root / LABELS_FILE, n)

        split = None
        if (root / SPLIT_FILE).exists():
            split = self._read_split(root / SPLIT_FILE, n)

        graph = Graph(features, canonical_edges(edges, n), labels)
        logger.debug(f"加载节点数据集 {root}: {graph}")
        return NodeDataset(graph, split, root.name)

    def save(self, dataset: NodeDataset, path: PathLike) -> Path:
        """Write the dataset; floats use ``repr`` so values survive exactly."""
        root = Path(path)
        root.mkdir(parents=True, exist_ok=True)
        g = dataset.graph

        with open(root / EDGES_FILE, "w", encoding="utf-8") as f:
            for u, v in g.edges.tolist():
                f.write(f"{u}\t{v}\n")
        with open(root / FEATURES_FILE, "w", encoding="utf-8") as f:
            for row in g.features.tolist():
                f.write(",".join(repr(float(x)) for x in row) + "\n")
        if g.node_labels is not None:
            with open(root / LABELS_FILE, "w", encoding="utf-8") as f:
                for y in g.node_labels.tolist():
                    f.write(f"{y}\n")
        if dataset.split is not None:
            with open(root / SPLIT_FILE, "w", encoding="utf-8") as f:
                json.dump(
                    {k: [int(i) for i in v] for k, v in dataset.split.items()},
                    f,
                    sort_keys=True,
                )
        return root

    @staticmethod
    def _read_features(path: Path) -> np.ndarray:
        if not path.exists():
            raise SchemaError("missing features file", path)
        rows: List[List[float]] = []
        width: Optional[int] = None
        for line_no, row in enumerate(csv.reader(read_lines(path)), start=1):
            if not row:
                raise SchemaError("empty feature row", path, line_no)
            try:
                values = [float(cell) for cell in row]
            except ValueError as e:
                raise SchemaError(f"non-numeric cell: {e}", path, line_no) from e
            if not all(np.isfinite(values)):
                raise SchemaError("non-finite feature value", path, line_no)
            if width is None:
                width = len(values)
            elif len(values) != width:
                raise SchemaError(
                    f"row has {len(values)} columns, expected {width}", path, line_no
                )
            rows.append(values)
        if not rows:
            raise SchemaError("features file is empty", path)
        return np.array(rows, dtype=np.float64)

    @staticmethod
    def _read_edges(path: Path, n: int) -> np.ndarray:
        if not path.exists():
            raise SchemaError("missing edges file", path)
        pairs: List[List[int]] = []
        for line_no, line in enumerate(read_lines(path), start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise SchemaError("expected 'u<TAB>v'", path, line_no)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as e:
                raise SchemaError(f"non-integer node index: {e}", path, line_no) from e
            for node in (u, v):
                if not 0 <= node < n:
                    raise SchemaError(
                        f"node {node} out of range for {n} nodes", path, line_no
                    )
            pairs.append([u, v])
        return np.array(pairs, dtype=np.int64).reshape(-1, 2)

    @staticmethod
    def _read_labels(path: Path, n: int) -> np.ndarray:
        labels: List[int] = []
        for line_no, row in enumerate(csv.reader(read_lines(path)), start=1):
            if len(row) != 1:
                raise SchemaError("expected one class id per line", path, line_no)
            try:
                labels.append(int(row[0]))
            except ValueError as e:
                raise SchemaError(f"non-integer class id: {e}", path, line_no) from e
        if len(labels) != n:
            raise SchemaError(f"{len(labels)} labels for {n} feature rows", path)
        return np.array(labels, dtype=np.int64)

    @staticmethod
    def _read_split(path: Path, n: int) -> Split:
        try:
            data = json.loads("".join(read_lines(path)))
        except json.JSONDecodeError as e:
            raise SchemaError(f"invalid JSON: {e.msg}", path, e.lineno) from e
        if not isinstance(data, dict):
            raise SchemaError("split must be an object of index lists", path)
        unknown = set(data) - {"train", "val", "test"}
        if unknown:
            raise SchemaError(f"unknown split keys {sorted(unknown)}", path)
        for key in ("train", "test"):
            if key not in data:
                raise SchemaError(f"split is missing '{key}'", path)

        split: Split = {}
        for key, values in data.items():
            if not isinstance(values, list) or not all(
                isinstance(i, int) and not isinstance(i, bool) for i in values
            ):
                raise SchemaError(f"'{key}' must be a list of integers", path)
            idx = np.array(values, dtype=np.int64)
            if idx.size and (idx.min() < 0 or idx.max() >= n):
                raise SchemaError(f"'{key}' has an index outside [0, {n})", path)
            split[key] = idx
        check_split(split, path)
        return split


def check_split(split: Split, path: Optional[PathLike] = None) -> None:
    """Raise ``SchemaError`` if split parts overlap."""
    keys = sorted(split)
    for i, a in enumerate(keys):
        for b in keys[i + 1 :]:
            if np.intersect1d(split[a], split[b]).size:
                raise SchemaError(f"split parts '{a}' and '{b}' overlap", path)


def load_node_dataset(path: PathLike) -> NodeDataset:
    return NodeFormatLoader().load(path)


def save_node_dataset(dataset: NodeDataset, path: PathLike) -> Path:
    return NodeFormatLoader().save(dataset, path)
