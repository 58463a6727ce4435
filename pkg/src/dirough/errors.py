"""Exception hierarchy.

Every domain failure raises a subclass of DiroughError so the CLI can map
it to exit status 1 (usage problems are argparse's business and exit 2).
"""


class DiroughError(Exception):
    """Base class for all domain errors raised by this package."""


class LabelError(DiroughError):
    """Unknown, duplicate, or otherwise invalid element label."""


class CapExceededError(DiroughError):
    """Universe too large for an exhaustive enumeration (see DIROUGH_CAP)."""


class NotUpDirectedError(DiroughError):
    """An operation that needs up-directedness met a system without it."""


class LawError(DiroughError):
    """Unknown law id, or operands violating a structural precondition."""


class StructureError(DiroughError):
    """Internal consistency violation (mismatched universes, bad tables)."""


class InputFormatError(DiroughError):
    """Malformed relation file, Cayley CSV, info table, or dataset."""
