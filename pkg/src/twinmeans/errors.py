"""Shared exception types."""


class CapacityError(Exception):
    """Requested limit exceeds the configured sieve size budget."""


class EmptySetError(ValueError):
    """An operation that needs at least one element got an empty collection."""


class CacheFormatError(Exception):
    """A prime cache file failed validation and must be rebuilt."""
