"""Mapping of engine errors to process exit codes."""

import sys
from contextlib import contextmanager

import click
from loguru import logger

from idmix.errors import USAGE_EXIT, IdMixError


@contextmanager
def exit_on_error(ctx: click.Context):
    """
    Log engine and I/O errors to stderr and exit with their code.

    ``IdMixError`` subclasses exit with their own ``exit_code``; I/O failures
    exit with the usage code.
    """
    verbose = bool((ctx.obj or {}).get("verbose"))
    try:
        yield
    except IdMixError as e:
        logger.error(f"错误：{e}")
        if verbose:
            logger.exception("详细错误信息:")
        sys.exit(e.exit_code)
    except OSError as e:
        logger.error(f"文件读写错误：{e}")
        if verbose:
            logger.exception("详细错误信息:")
        sys.exit(USAGE_EXIT)
