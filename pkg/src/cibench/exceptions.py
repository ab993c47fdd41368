"""Exception hierarchy.

Every error raised by the package derives from :class:`CIBenchError`, so a
harness can catch the whole family while still telling failure kinds apart.
"""


class CIBenchError(Exception):
    pass


# datasets
class IngestError(CIBenchError):
    pass


class RecipeError(CIBenchError):
    pass


class SplitError(CIBenchError):
    pass


# learners
class FitError(CIBenchError):
    pass


class PredictError(CIBenchError):
    pass


class QueryError(CIBenchError):
    pass


# resampling / gan
class ResamplingError(CIBenchError):
    pass


class CleanError(ResamplingError):
    """Raised when edited-nearest-neighbour cleaning would empty a class."""


class OptError(CIBenchError):
    pass


class ShapeError(CIBenchError):
    pass


class SampleError(CIBenchError):
    pass


# ensembles / metrics
class VoteError(CIBenchError):
    pass


class MetricError(CIBenchError):
    pass


# harness
class ConfigError(CIBenchError):
    pass


class CellError(CIBenchError):
    pass


class RankError(CIBenchError):
    pass


class ReportError(CIBenchError):
    pass


class ReportIOError(ReportError, OSError):
    pass
