"""Robust mean estimation by iterative spectral dimension reduction."""

from ._core import *  # noqa: F401,F403
from ._core import (  # noqa: F401
    DataError,
    FilterError,
    InvalidArgument,
    IoError,
    SdrConfig,
    SdrError,
)

__all__ = [name for name in dir() if not name.startswith("_")]
