"""
Training trace CSV.

Header ``epoch,loss,align,uniform,seconds``; one row per epoch; floats with
6 significant digits.
"""

import csv
from pathlib import Path
from typing import Union

from idmix.errors import SchemaError
from idmix.pipeline.trainer import EpochRecord, TrainTrace

TRACE_HEADER = ["epoch", "loss", "align", "uniform", "seconds"]


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def write_trace(trace: TrainTrace, path: Union[str, Path]) -> Path:
    """
    Write ``trace`` as CSV.

    Output bytes depend only on the trace values.

    Raises:
        SchemaError: If the trace is empty
        OSError: If the file cannot be written
    """
    if not len(trace):
        raise SchemaError("cannot write an empty trace", path)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for r in trace:
            writer.writerow(
                [r.epoch, _fmt(r.loss), _fmt(r.align), _fmt(r.uniform), _fmt(r.seconds)]
            )
    return path


def read_trace(path: Union[str, Path]) -> TrainTrace:
    """
    Parse a trace CSV written by ``write_trace``.

    Raises:
        SchemaError: If the header or a row is malformed
    """
    path = Path(path)
    trace = TrainTrace()
    try:
        f = open(path, "r", encoding="utf-8", newline="")
    except OSError as e:
        raise SchemaError(f"cannot read trace: {e}", path) from e
    with f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != TRACE_HEADER:
            raise SchemaError(f"expected header {','.join(TRACE_HEADER)}", path, 1)
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(TRACE_HEADER):
                raise SchemaError(f"expected {len(TRACE_HEADER)} columns", path, line_no)
            try:
                trace.append(
                    EpochRecord(int(row[0]), float(row[1]), float(row[2]), float(row[3]), float(row[4]))
                )
            except ValueError as e:
                raise SchemaError(f"malformed value: {e}", path, line_no) from e
    return trace
