"""Exception types shared across the package."""


class SfcSurviveError(Exception):
    """Base class for all package-specific errors."""


class MalformedLink(SfcSurviveError):
    """A link has an out-of-range endpoint or is a self-loop."""


class CapacityLengthMismatch(SfcSurviveError):
    """The capacity vector does not have one entry per node."""


class NodeOutOfRange(SfcSurviveError):
    """A node id does not exist in the network."""


class TooManyLinks(SfcSurviveError):
    """Requested link count exceeds the number of distinct node pairs."""


class TooLarge(SfcSurviveError):
    """Instance is beyond the brute-force enumeration limit."""
