"""Exception hierarchy.

Everything raised on bad mathematical input derives from HopfTrisectError,
so callers (and the CLI) can distinguish "your structure is wrong" from a
genuine bug.  File/JSON problems derive from ParseError instead.
"""

from __future__ import annotations


class HopfTrisectError(Exception):
    """Base class for domain errors (axiom failures, invalid moves, ...)."""


class ParseError(HopfTrisectError):
    """Malformed input file or JSON payload."""
