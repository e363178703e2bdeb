"""Exception hierarchy shared by the library, the CLI and the batch jobs.

Every error raised on purpose derives from ``MrcLabError``; the CLI turns any of
them into exit code 2.
"""


class MrcLabError(Exception):
    """Base class for every deliberate failure in mrclab."""


class ConfigError(MrcLabError, ValueError):
    pass


class RingMismatchError(MrcLabError, ValueError):
    pass


class ZeroPolynomialError(MrcLabError, ValueError):
    pass


class ParseError(MrcLabError, ValueError):
    pass


class IdealError(MrcLabError, ValueError):
    pass


class ResolutionError(MrcLabError, RuntimeError):
    pass


class NonMinimalResolutionError(ResolutionError):
    pass


class PredictionWindowError(MrcLabError, ValueError):
    pass


class LiaisonError(MrcLabError, RuntimeError):
    pass


class SamplingError(MrcLabError, RuntimeError):
    pass
