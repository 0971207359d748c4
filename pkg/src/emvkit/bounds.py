"""Search bounds shared by every semi-decision in the package."""
import os

from .errors import InvalidInput

# Universally quantified checks look at elements up to `level`; existential
# witnesses are searched one level further out.
SLACK = 1
FALLBACK_BOUND = 4


def default_bound() -> int:
    raw = os.environ.get("EMVKIT_BOUND")
    if raw is None or raw == "":
        return FALLBACK_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInput(f"EMVKIT_BOUND must be an integer, got {raw!r}") from None
    if value < 0:
        raise InvalidInput("EMVKIT_BOUND must be >= 0")
    return value


def resolve(level: int | None) -> int:
    return default_bound() if level is None else level
