"""Exception types and the global big-integer safety cap."""

from __future__ import annotations

import os

ENV_MAX_BIGINT_BITS = "MORPHFREQ_MAX_BIGINT_BITS"
DEFAULT_MAX_BIGINT_BITS = 1_000_000


class MorphfreqError(Exception):
    """Base class for every error this package raises on purpose."""


class ParseError(MorphfreqError):
    """Malformed morphism file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ErasingRule(ParseError):
    """A rule maps a letter to the empty word."""


class DuplicateRule(ParseError):
    """A letter has more than one rule."""


class MissingRule(ParseError):
    """An alphabet letter has no rule."""


class UnknownLetter(MorphfreqError):
    """A letter outside the declared alphabet was used."""

    def __init__(self, letter: str, line: int | None = None):
        self.letter = letter
        self.line = line
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"unknown letter {letter!r}{where}")


class NotProlongable(MorphfreqError):
    """The requested start letter does not generate a one-sided fixed point."""


class EmptyFactor(MorphfreqError):
    """Occurrence counting of the empty word is undefined."""


class DegenerateSupport(MorphfreqError):
    """The level-ratio denominator may vanish: unbounded letters carry no
    frequency mass, so the formula is 0/0 and only empirical estimation
    remains."""


class DegenerateAlpha(MorphfreqError):
    """The bounded-letter mass reaches 1, so the error-bound formula divides
    by zero."""


class BigIntLimitExceeded(MorphfreqError):
    """An exact integer outgrew the configured safety cap."""


def max_bigint_bits() -> int:
    """Current cap on exact-integer size, in bits (env-overridable)."""
    raw = os.environ.get(ENV_MAX_BIGINT_BITS)
    if raw is None:
        return DEFAULT_MAX_BIGINT_BITS
    try:
        bits = int(raw)
    except ValueError as exc:
        raise MorphfreqError(f"{ENV_MAX_BIGINT_BITS} must be an integer, got {raw!r}") from exc
    if bits <= 0:
        raise MorphfreqError(f"{ENV_MAX_BIGINT_BITS} must be positive, got {bits}")
    return bits


def guard_magnitude(value: int, context: str) -> int:
    """Abort with a diagnostic when an exact integer exceeds the safety cap."""
    cap = max_bigint_bits()
    if value.bit_length() > cap:
        raise BigIntLimitExceeded(
            f"{context}: integer of {value.bit_length()} bits exceeds the "
            f"{cap}-bit cap ({ENV_MAX_BIGINT_BITS})"
        )
    return value
