"""
TU graph-classification dataset directory.

Files, for a dataset named DS:
    DS_A.txt                 "i, j" per line, 1-based global node ids
    DS_graph_indicator.txt   graph id (1-based) of node i on line i
    DS_graph_labels.txt      class of graph i on line i
    DS_node_labels.txt       optional, node class on line i
    DS_node_attributes.txt   optional, comma-separated floats on line i

Features come from node attributes when present, else a one-hot encoding of
node labels, else a constant 1 column.
"""

from pathlib import Path
from typing import List, Optional

import numpy as np
from loguru import logger

from idmix.datasets.base import DatasetLoader, GraphDataset, PathLike, read_lines
from idmix.errors import SchemaError
from idmix.graphdata.graph import Graph, canonical_edges


def _ints(path: Path, width: int) -> np.ndarray:
    """Parse a file of ``width`` comma-separated integers per line."""
    values: List[List[int]] = []
    for line_no, line in enumerate(read_lines(path), start=1):
        line = line.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != width:
            raise SchemaError(f"expected {width} value(s), got {len(parts)}", path, line_no)
        try:
            values.append([int(p) for p in parts])
        except ValueError as e:
            raise SchemaError(f"non-integer value: {e}", path, line_no) from e
    return np.array(values, dtype=np.int64).reshape(-1, width)


def _floats(path: Path) -> np.ndarray:
    rows: List[List[float]] = []
    width: Optional[int] = None
    for line_no, line in enumerate(read_lines(path), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            row = [float(p) for p in line.split(",")]
        except ValueError as e:
            raise SchemaError(f"non-numeric attribute: {e}", path, line_no) from e
        if not all(np.isfinite(row)):
            raise SchemaError("non-finite attribute", path, line_no)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise SchemaError(f"row has {len(row)} values, expected {width}", path, line_no)
        rows.append(row)
    return np.array(rows, dtype=np.float64)


class TUFormatLoader(DatasetLoader):
    """Loader for the TU benchmark layout."""

    def __init__(self, name: Optional[str] = None):
        self.name = name

    def _resolve_name(self, root: Path) -> str:
        if self.name:
            return self.name
        candidates = sorted(p.name[: -len("_A.txt")] for p in root.glob("*_A.txt"))
        if len(candidates) != 1:
            raise SchemaError(
                f"expected exactly one *_A.txt file, found {len(candidates)}", root
            )
        return candidates[0]

    def load(self, path: PathLike) -> GraphDataset:
        """
        Read every graph of the dataset.

        Raises:
            SchemaError: On missing files, index 0, out-of-range ids, count
                mismatches or edges that join two graphs
        """
        root = Path(path)
        if not root.is_dir():
            raise SchemaError("dataset directory not found", root)
        ds = self._resolve_name(root)

        def file(suffix: str) -> Path:
            return root / f"{ds}_{suffix}.txt"

        for required in ("A", "graph_indicator", "graph_labels"):
            if not file(required).exists():
                raise SchemaError(f"missing {ds}_{required}.txt", root)

        indicator = _ints(file("graph_indicator"), 1)[:, 0]
        n = indicator.size
        if n == 0:
            raise SchemaError("graph indicator is empty", file("graph_indicator"))
        bad = np.flatnonzero(indicator < 1)
        if bad.size:
            raise SchemaError("graph ids are 1-based", file("graph_indicator"), int(bad[0]) + 1)
        back = np.flatnonzero(np.diff(indicator) < 0)
        if back.size:
            raise SchemaError(
                "nodes must be grouped by graph in ascending order",
                file("graph_indicator"),
                int(back[0]) + 2,
            )

        graph_labels = _ints(file("graph_labels"), 1)[:, 0]
        g_count = graph_labels.size
        if indicator.max() > g_count:
            raise SchemaError(
                f"graph id {int(indicator.max())} but only {g_count} graph labels",
                file("graph_indicator"),
            )
        sizes = np.bincount(indicator - 1, minlength=g_count)
        if np.any(sizes == 0):
            raise SchemaError(
                f"graph {int(np.flatnonzero(sizes == 0)[0]) + 1} has no nodes",
                file("graph_indicator"),
            )

        edges = _ints(file("A"), 2)
        bad = np.flatnonzero((edges < 1).any(axis=1) | (edges > n).any(axis=1))
        if bad.size:
            raise SchemaError(
                f"node id outside [1, {n}]", file("A"), self._edge_line(file("A"), int(bad[0]))
            )
        edges = edges - 1
        cross = np.flatnonzero(indicator[edges[:, 0]] != indicator[edges[:, 1]])
        if cross.size:
            raise SchemaError(
                "edge joins two different graphs",
                file("A"),
                self._edge_line(file("A"), int(cross[0])),
            )

        node_labels = None
        if file("node_labels").exists():
            node_labels = _ints(file("node_labels"), 1)[:, 0]
            if node_labels.size != n:
                raise SchemaError(f"{node_labels.size} node labels for {n} nodes", file("node_labels"))

        if file("node_attributes").exists():
            features = _floats(file("node_attributes"))
            if features.shape[0] != n:
                raise SchemaError(
                    f"{features.shape[0]} attribute rows for {n} nodes", file("node_attributes")
                )
        elif node_labels is not None:
            if node_labels.min() < 0:
                raise SchemaError("node labels must be non-negative", file("node_labels"))
            features = np.zeros((n, int(node_labels.max()) + 1), dtype=np.float64)
            features[np.arange(n), node_labels] = 1.0
        else:
            features = np.ones((n, 1), dtype=np.float64)

        offsets = np.concatenate([[0], np.cumsum(sizes)])
        owner = indicator[edges[:, 0]] - 1 if edges.size else np.zeros(0, dtype=np.int64)
        graphs: List[Graph] = []
        for gi in range(g_count):
            start, end = int(offsets[gi]), int(offsets[gi + 1])
            local = edges[owner == gi] - start
            labels = node_labels[start:end] if node_labels is not None else None
            graphs.append(
                Graph(
                    features[start:end].copy(),
                    canonical_edges(local, end - start),
                    labels,
                    int(graph_labels[gi]),
                )
            )

        logger.debug(f"加载 TU 数据集 {ds}: {g_count} 个图, {n} 个节点")
        return GraphDataset(graphs, ds)

    @staticmethod
    def _edge_line(path: Path, row: int) -> int:
        """Line number of the ``row``-th non-blank line."""
        seen = -1
        for line_no, line in enumerate(read_lines(path), start=1):
            if line.strip():
                seen += 1
                if seen == row:
                    return line_no
        return row + 1

    def save(self, dataset: GraphDataset, path: PathLike) -> Path:
        """
        Write the graphs in TU layout.

        Features are always written as node attributes, and every undirected
        edge is written in both directions.
        """
        root = Path(path)
        root.mkdir(parents=True, exist_ok=True)
        ds = self.name or dataset.name

        with open(root / f"{ds}_A.txt", "w", encoding="utf-8") as fa, open(
            root / f"{ds}_graph_indicator.txt", "w", encoding="utf-8"
        ) as fi, open(root / f"{ds}_node_attributes.txt", "w", encoding="utf-8") as fx:
            offset = 0
            for gi, g in enumerate(dataset.graphs, start=1):
                for u, v in (g.edges + offset + 1).tolist():
                    fa.write(f"{u}, {v}\n{v}, {u}\n")
                for row in g.features.tolist():
                    fi.write(f"{gi}\n")
                    fx.write(", ".join(repr(float(x)) for x in row) + "\n")
                offset += g.n

        with open(root / f"{ds}_graph_labels.txt", "w", encoding="utf-8") as f:
            for g in dataset.graphs:
                f.write(f"{g.graph_label if g.graph_label is not None else 0}\n")

        if dataset.graphs and all(g.node_labels is not None for g in dataset.graphs):
            with open(root / f"{ds}_node_labels.txt", "w", encoding="utf-8") as f:
                for g in dataset.graphs:
                    for y in g.node_labels.tolist():
                        f.write(f"{y}\n")
        return root


def load_tu_dataset(path: PathLike, name: Optional[str] = None) -> GraphDataset:
    return TUFormatLoader(name).load(path)


def save_tu_dataset(dataset: GraphDataset, path: PathLike, name: Optional[str] = None) -> Path:
    return TUFormatLoader(name).save(dataset, path)
