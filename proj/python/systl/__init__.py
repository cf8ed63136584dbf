"""Systolic geometry on triangulated surfaces.

Thin wrapper over the compiled ``_systl`` extension: generators for the
test families, SMESH io, homology bases, systole search, level-set sweeps,
and the area-excess inequality reports.
"""

from _systl import *  # noqa: F401,F403
from _systl import __version__  # noqa: F401
