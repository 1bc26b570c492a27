"""Mask-and-fill grammatical error correction evaluation toolkit."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, MASK  # noqa: F401
