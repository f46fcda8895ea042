"""Shared exception types.

Error vocabulary used throughout the package:

* ``CapacityError``   -- a configured size cap was exceeded (table memory
  guard, sieve limit, 128-bit working-range overflow).  The CLI maps this
  to exit code 3.
* ``DomainError``     -- the mathematical object is undefined for the given
  input (improper function where properness is required, integer frequency
  where a nonzero distance to the integers is required).
* ``PreconditionError`` -- a stated precondition of an operation was
  violated (bad window, node spacing, parameter ordering).
"""


class CapacityError(ValueError):
    """A size/capacity cap was exceeded."""


class DomainError(ValueError):
    """Input outside the mathematical domain of the operation."""


class PreconditionError(ValueError):
    """A stated precondition of the operation does not hold."""
