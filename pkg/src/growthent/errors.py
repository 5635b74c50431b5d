"""Exception types shared across the package.

The CLI maps :class:`InputError` to exit status 2 and :class:`NumericalError`
to exit status 1.
"""

from __future__ import annotations


class InputError(ValueError):
    """Malformed or invalid input data (bad rows, misaligned grids, ...)."""


class NumericalError(ArithmeticError):
    """A computation could not produce a finite, well-defined result."""


class SampleSpaceOverflow(OverflowError):
    """A double-exponential sample-space size exceeds the float range.

    ``log_value`` keeps the finite entropy (log of the size) so callers can
    keep working in log space.
    """

    def __init__(self, t: float, log_value: float) -> None:
        super().__init__(
            f"sample space size saturates at t={t:g} (log size {log_value:.6g})"
        )
        self.t = t
        self.log_value = log_value
