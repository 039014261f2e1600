class InputError(ValueError):
    """Malformed or incompatible input."""


class ResourceError(RuntimeError):
    """A configured resource cap was exceeded."""
