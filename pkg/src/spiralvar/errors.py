"""Exception hierarchy for spiralvar.

Errors raised while *interpreting input* (bad files, bad flags) are distinct
from errors raised while *analyzing* (degenerate geometry, caps exceeded) so
the CLI can map them onto the usage / analysis exit codes.
"""


class SpiralvarError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(SpiralvarError):
    """A numeric parameter is outside its admissible range (e.g. s < 1)."""


class ArcError(SpiralvarError):
    """A sampled arc violates a structural requirement."""


class RangeError(SpiralvarError):
    """A subarc range is empty, reversed or out of bounds."""


class SizeError(SpiralvarError):
    """An input exceeds a documented size cap for exact computation."""


class SpecError(ParameterError):
    """A spiral specification is inconsistent or incomplete."""


class AlignmentError(SpiralvarError):
    """Sample parameters do not line up with full-turn boundaries."""


class DegenerateArcError(SpiralvarError):
    """An arc has no usable variation (e.g. all mass at a single point)."""


class GridMismatchError(SpiralvarError):
    """Two arcs expected to share a parameter grid do not."""


class ArcFormatError(SpiralvarError):
    """An arc file could not be parsed; message names the field and line."""
