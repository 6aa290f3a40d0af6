"""Exact approximation of almost-invariant Lipschitz functions on groups.

Scalars cross the boundary as fractions.Fraction; reports come back as dicts
with rationals encoded as "p/q" strings, matching the CLI JSON.
"""

from ._invlip import *  # noqa: F401,F403
from ._invlip import (
    GroupSpace,
    InvlipError,
    LipFn,
    Word,
)

__all__ = [name for name in dir() if not name.startswith("_")]
