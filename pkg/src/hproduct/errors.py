"""Exception types shared across the package."""


class HProductError(Exception):
    """Base class for all domain errors raised by this package."""


class RegularityError(HProductError):
    """A digraph that must be 1-regular is not."""


class NotSimpleError(HProductError):
    """A loop or multi-edge was found where a simple graph is required."""


class AssignmentError(HProductError):
    """An arc-to-member assignment is missing arcs or names unknown members."""


class ShapeError(HProductError):
    """Input does not have the required shape (cycle host, unicyclic component, ...)."""


class SizeMismatchError(HProductError):
    """Permutations or vertex sets on different domains were combined."""


class LabelingError(HProductError):
    """A labeling is malformed, infeasible, or outside the search guard."""


class InfeasiblePlanError(HProductError):
    """A decomposition plan's coefficient sequence violates a feasibility condition."""


class ParseError(HProductError):
    """A text-format input could not be parsed; message carries the line number."""
