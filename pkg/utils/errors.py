"""Exception hierarchy shared by the engines, analytics and harness."""


class SirsError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(SirsError, ValueError):
    """Invalid experiment configuration or parameter combination."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class HypothesisError(SirsError, ValueError):
    """A closed-form result was requested outside the regime it holds in."""


class InsufficientSamplesError(SirsError, ValueError):
    """Not enough uncensored samples for the requested statistic."""


class DominanceViolationError(SirsError):
    """Rate dominance required by an order-preserving coupling failed."""

    def __init__(self, state: tuple, detail: str):
        self.state = state
        super().__init__(f"dominance violated at state {state}: {detail}")


class OrderingViolationError(SirsError):
    """A coupled path crossed the path it should dominate."""


class SimulationError(SirsError, RuntimeError):
    """A replication failed inside an experiment."""

    def __init__(self, message: str, population_index: int | None = None,
                 replication_index: int | None = None):
        self.message = message
        self.population_index = population_index
        self.replication_index = replication_index
        where = ""
        if population_index is not None:
            where = f" (population index {population_index}, replication {replication_index})"
        super().__init__(message + where)

    def __reduce__(self):
        # raised inside worker processes
        return self.__class__, (self.message, self.population_index, self.replication_index)


class ResultsIOError(SirsError, OSError):
    """Reading or writing a result file failed."""

    def __init__(self, path, reason: str):
        self.path = path
        super().__init__(f"{path}: {reason}")
