"""Exception hierarchy shared by all simulator modules."""


class OfdmSenseError(Exception):
    """Base class for every error raised by the package."""


class ConfigError(OfdmSenseError):
    """Invalid or unreadable configuration."""


class NonPositiveParameter(ConfigError):
    pass


class InconsistentTiming(ConfigError):
    pass


class DegenerateGeometry(OfdmSenseError):
    pass


class NonPositiveRange(OfdmSenseError):
    pass


class TimeOutOfRange(OfdmSenseError):
    pass


class UnboundJoint(OfdmSenseError):
    pass


class TooFewSamples(OfdmSenseError):
    pass


class DimensionMismatch(OfdmSenseError):
    pass


class SnapshotTimeMismatch(OfdmSenseError):
    pass


class ZeroTxSymbol(OfdmSenseError):
    pass


class BadPadLength(OfdmSenseError):
    pass


class SeriesTooShort(OfdmSenseError):
    pass


class EmptySpectrogram(OfdmSenseError):
    pass


class NoPeriodicity(OfdmSenseError):
    pass


class NonPositiveInput(OfdmSenseError):
    pass


class UnsupportedFormat(OfdmSenseError):
    pass
