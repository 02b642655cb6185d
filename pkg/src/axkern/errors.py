"""Exception types shared across the toolkit."""


class AxkernError(Exception):
    """Base class for all toolkit errors."""


class ManifestError(AxkernError):
    """Model manifest is missing, malformed, or internally inconsistent."""


class DataFormatError(AxkernError):
    """A binary artifact (dataset, significance map, skip plan) failed to parse."""


class ShapeError(AxkernError):
    """Tensor shape or quantization metadata does not match the consumer."""


class AccumulatorBoundError(AxkernError):
    """A layer could overflow the 32-bit accumulator contract."""


class BudgetError(AxkernError):
    """A resource constraint (flash budget) cannot be met."""
