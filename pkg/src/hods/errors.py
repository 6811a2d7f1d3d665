"""Shared exception types and the enumeration budget."""

import os

DEFAULT_BUDGET_BITS = 26


class InvalidInputError(ValueError):
    """A precondition on the inputs was violated."""


class ResourceLimitError(RuntimeError):
    """The requested computation exceeds the configured desk-scale budget."""


def budget_bits() -> int:
    """Enumeration budget in bits; override with HODS_BUDGET_BITS."""
    raw = os.environ.get("HODS_BUDGET_BITS")
    if raw is None:
        return DEFAULT_BUDGET_BITS
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidInputError(f"HODS_BUDGET_BITS must be an integer, got {raw!r}") from exc
