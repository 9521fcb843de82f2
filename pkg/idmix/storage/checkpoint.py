"""
Parameter checkpoints as ``.npz`` archives.

Arrays are stored under their parameter names (``encoder.W0``, ...,
``head.W1``, ``head.W2``) next to a JSON layout record.
"""

import json
import re
import zipfile
from pathlib import Path
from typing import Optional, Union

import numpy as np

from idmix.encoder.gcn import EncoderParams
from idmix.encoder.model import ModelParams
from idmix.encoder.projection import ProjectionParams
from idmix.errors import SchemaError
from idmix.numcore.params import ParamTensor

_LAYOUT_KEY = "__layout__"
_EPOCH_FILE = re.compile(r"epoch_(\d+)\.npz$")


def save_checkpoint(
    params: ModelParams, path: Union[str, Path], epoch: Optional[int] = None
) -> Path:
    """Write every parameter value plus layout metadata."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    layout = dict(params.layout(), epoch=epoch)
    arrays = {p.name: p.value for p in params.parameters()}
    arrays[_LAYOUT_KEY] = np.array(json.dumps(layout, sort_keys=True))
    with open(path, "wb") as f:
        np.savez(f, **arrays)
    return path


def load_checkpoint(path: Union[str, Path]) -> ModelParams:
    """
    Rebuild ModelParams from a checkpoint.

    Raises:
        SchemaError: If the archive is unreadable or incomplete
    """
    path = Path(path)
    try:
        with np.load(path, allow_pickle=False) as archive:
            layout = json.loads(str(archive[_LAYOUT_KEY]))
            layers = int(layout["layers"])
            weights = [
                ParamTensor(f"encoder.W{l}", archive[f"encoder.W{l}"].copy())
                for l in range(layers)
            ]
            w1 = ParamTensor("head.W1", archive["head.W1"].copy())
            w2 = ParamTensor("head.W2", archive["head.W2"].copy())
    except (OSError, ValueError, zipfile.BadZipFile) as e:
        raise SchemaError(f"cannot read checkpoint: {e}", path) from e
    except KeyError as e:
        raise SchemaError(f"checkpoint is missing {e}", path) from e

    try:
        encoder = EncoderParams(weights, layout["activation"], bool(layout["activate_last"]))
        head = ProjectionParams(w1, w2, layout["activation"])
    except ValueError as e:
        raise SchemaError(f"bad checkpoint layout: {e}", path) from e
    return ModelParams(encoder, head)


def checkpoint_epoch(path: Union[str, Path]) -> Optional[int]:
    """Epoch number encoded in an ``epoch_XXXX.npz`` file name."""
    match = _EPOCH_FILE.search(Path(path).name)
    return int(match.group(1)) if match else None
