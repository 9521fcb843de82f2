"""Utility module for common functions."""

from idmix.utils.concurrent import ParallelExecutor, parallel_map

__all__ = ["ParallelExecutor", "parallel_map"]
