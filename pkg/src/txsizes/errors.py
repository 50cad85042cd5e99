"""Exception hierarchy shared across the package."""


class TxSizeError(Exception):
    """Base class for all txsizes errors."""


class InvalidSpec(TxSizeError):
    """A component spec or size model violates its constraints."""


class DescriptorError(InvalidSpec):
    """A textual spec descriptor could not be parsed."""


class ParseError(TxSizeError):
    """A serialized transaction could not be decoded.

    ``offset`` is the byte position at which decoding failed.
    """

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class CorpusError(TxSizeError):
    """Corpus ingestion failed (unreadable input, bad quality, checkpoint mismatch)."""


class RpcError(CorpusError):
    """Node RPC transport failed after exhausting retries."""


class RangeError(CorpusError):
    """A requested block height does not exist on the node."""
