class InputError(ValueError):
    """Bad user input: unparsable document, invalid automorphism, size cap."""


class ConsistencyError(RuntimeError):
    """Two routes that must agree did not, or a guaranteed property failed."""
