"""Shared GCN encoder and projection head with explicit backward passes."""

from idmix.encoder.activations import activate, activate_grad
from idmix.encoder.gcn import EncoderCache, EncoderParams, encode, encode_backward
from idmix.encoder.projection import (
    ProjectionCache,
    ProjectionParams,
    project,
    project_backward,
)
from idmix.encoder.model import ModelParams

__all__ = [
    "activate",
    "activate_grad",
    "EncoderCache",
    "EncoderParams",
    "encode",
    "encode_backward",
    "ProjectionCache",
    "ProjectionParams",
    "project",
    "project_backward",
    "ModelParams",
]
