"""Exception types shared across the package."""


class StructuralError(ValueError):
    """Malformed input: wrong shape, asymmetry, bad indices, unparseable data."""


class MetricError(ValueError):
    """Metric-level failure: ultrametric violation, degenerate labeling, or a
    predicate that does not hold (no hub, star not generating, bad shift)."""


class BoundExceededError(ValueError):
    """Requested size exceeds a configured resource bound."""
