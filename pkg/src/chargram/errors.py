"""Exception types shared across the engine.

The service layer maps these onto HTTP status codes, the CLI onto exit
messages; everything else just raises them.
"""


class ChargramError(Exception):
    """Base class for all engine errors."""


class NotFoundError(ChargramError):
    """A document, browse path, or other addressable item does not exist."""


class InvalidArgumentError(ChargramError, ValueError):
    """A caller-supplied parameter violates an operation's precondition."""


class FormatError(ChargramError):
    """A persisted artifact cannot be parsed.

    ``offset`` is the byte offset at which decoding failed, when known.
    """

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (at byte {offset})")
        self.offset = offset


class VersionError(FormatError):
    """A persisted artifact carries an unsupported format version."""

    def __init__(self, found, expected):
        super().__init__(f"unsupported format version {found!r}, expected {expected!r}")
        self.found = found
        self.expected = expected
