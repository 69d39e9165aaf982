import os


class PrecisionCapError(ArithmeticError):
    """A certified comparison or root selection could not be decided at the precision cap."""


class IterationBudgetError(RuntimeError):
    """An iteration or coefficient budget was exhausted before the requested accuracy."""


def precision_cap() -> int:
    """Bits of precision allowed for certified numerics (``ORBITINT_PRECISION_CAP``)."""
    raw = os.environ.get("ORBITINT_PRECISION_CAP", "256")
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"ORBITINT_PRECISION_CAP must be an integer, got {raw!r}") from None
    if cap < 32:
        raise ValueError("ORBITINT_PRECISION_CAP must be at least 32")
    return cap
