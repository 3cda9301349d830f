"""Exception types raised across the package."""


class DomainMismatchError(ValueError):
    """A point does not belong to the domain of a hypothesis or class."""


class InvalidParametersError(ValueError):
    """Construction or experiment parameters violate a precondition."""


class ProtocolViolationError(RuntimeError):
    """An adversary returned a number of points different from its declared arity."""


class RealizabilityError(RuntimeError):
    """No hypothesis in the class is consistent with the labeled data.

    Under the monotone pipeline this can only happen through a bug, since
    every label comes from the target.
    """


class CapacityExceededError(RuntimeError):
    """An exhaustive routine was asked to handle more than its cap."""
