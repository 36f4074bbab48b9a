class CapacityError(RuntimeError):
    """A computation would exceed a configured desk-scale resource cap."""
