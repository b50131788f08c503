"""Quantization experiments on the circle; the heavy lifting lives in ``_core``."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
