"""Exception types shared across the package."""


class DcwavError(Exception):
    """Base class for errors raised by this package."""


class FormatError(DcwavError, ValueError):
    """An image file is not in the expected format."""


class ParseError(DcwavError, ValueError):
    """A JPEG stream violates the baseline structure we understand."""


class TruncationError(ParseError):
    """The entropy-coded scan ended before all blocks were decoded."""


class HuffmanError(ParseError):
    """A bit pattern in the scan does not match any Huffman code."""


class CapacityError(DcwavError, ValueError):
    """A coefficient falls outside the range the format can represent."""


class DimensionError(DcwavError, ValueError):
    """An array has a shape the operation cannot accept."""


class NoNeighborError(DcwavError, ValueError):
    """DC prediction was asked to run with no causal neighbor at all."""
