"""Exception types raised across the toolkit."""

from __future__ import annotations


class GenomeIndexError(Exception):
    """Base class for every error raised by gsmatch."""


class InvalidSymbol(GenomeIndexError, ValueError):
    def __init__(self, position: int, character: str):
        self.position = position
        self.character = character
        super().__init__(f"invalid nucleotide {character!r} at position {position}")


class InvalidCode(GenomeIndexError, ValueError):
    def __init__(self, position: int):
        self.position = position
        super().__init__(f"code outside 1..4 at position {position}")


class EmptySequence(GenomeIndexError, ValueError):
    pass


class TextTooLong(GenomeIndexError, ValueError):
    pass


class LengthMismatch(GenomeIndexError, ValueError):
    pass


class InvalidNode(GenomeIndexError, IndexError):
    pass


class OutOfBounds(GenomeIndexError, IndexError):
    pass


class EmptyPattern(GenomeIndexError, ValueError):
    def __init__(self, query_index: int | None = None):
        self.query_index = query_index
        msg = "empty pattern" if query_index is None else f"query {query_index} is empty"
        super().__init__(msg)


class EmptyQuerySet(GenomeIndexError, ValueError):
    pass


class MalformedFasta(GenomeIndexError, ValueError):
    pass


class ReferenceTooShort(GenomeIndexError, ValueError):
    pass


class IndexFormatError(GenomeIndexError, ValueError):
    """Base for problems found while reading a GSA1 index file."""


class BadMagic(IndexFormatError):
    pass


class Truncated(IndexFormatError):
    pass


class CorruptIndex(IndexFormatError):
    pass


class WorkloadMismatch(GenomeIndexError, ValueError):
    pass
