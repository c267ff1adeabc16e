from dataclasses import dataclass, field
from typing import Callable, Optional

from models.enums import RecordingMode, StopMode, TerminalReason
from models.reaction_system import State
from settings import Setting


@dataclass(frozen=True)
class StopCondition:
    """When a simulation should return, plus an optional cap on simulated events."""
    mode: StopMode
    index: int = 0
    t_max: float = float("inf")
    predicate: Optional[Callable[[State, float], bool]] = None
    event_cap: Optional[int] = None

    def __post_init__(self):
        if self.event_cap is not None and self.event_cap <= 0:
            raise ValueError("event cap must be positive")
        if self.mode is StopMode.TIME_HORIZON and not self.t_max >= 0:
            raise ValueError("time horizon must be nonnegative")
        if self.mode is StopMode.PREDICATE and self.predicate is None:
            raise ValueError("predicate stop condition needs a predicate")

    @classmethod
    def component_zero(cls, index: int = 0, event_cap: Optional[int] = None) -> "StopCondition":
        return cls(StopMode.COMPONENT_ZERO, index=index, event_cap=event_cap)

    @classmethod
    def time_horizon(cls, t_max: float, event_cap: Optional[int] = None) -> "StopCondition":
        return cls(StopMode.TIME_HORIZON, t_max=t_max, event_cap=event_cap)

    @classmethod
    def when(cls, predicate: Callable[[State, float], bool],
             event_cap: Optional[int] = None) -> "StopCondition":
        return cls(StopMode.PREDICATE, predicate=predicate, event_cap=event_cap)

    @property
    def cap(self) -> int:
        return self.event_cap if self.event_cap is not None else Setting.event_cap

    def holds(self, state: State, t: float) -> bool:
        if self.mode is StopMode.COMPONENT_ZERO:
            return state[self.index] == 0
        if self.mode is StopMode.TIME_HORIZON:
            return t >= self.t_max
        return bool(self.predicate(state, t))


@dataclass(frozen=True)
class Recording:
    mode: RecordingMode = RecordingMode.ALL_EVENTS
    dt: float = 0.0

    def __post_init__(self):
        if self.mode is RecordingMode.GRID and not self.dt > 0:
            raise ValueError("grid recording needs dt > 0")

    @classmethod
    def all_events(cls) -> "Recording":
        return cls(RecordingMode.ALL_EVENTS)

    @classmethod
    def grid(cls, dt: float) -> "Recording":
        return cls(RecordingMode.GRID, dt)


@dataclass
class Trajectory:
    """Event times and the states entered at those times, right-continuous."""
    times: list[float] = field(default_factory=list)
    states: list[State] = field(default_factory=list)
    terminal_reason: Optional[TerminalReason] = None

    def append(self, t: float, state: State) -> None:
        self.times.append(t)
        self.states.append(state)

    @property
    def end_time(self) -> float:
        return self.times[-1]

    @property
    def final_state(self) -> State:
        return self.states[-1]

    def __len__(self) -> int:
        return len(self.times)

    def component(self, index: int) -> list[int]:
        return [s[index] for s in self.states]

    def hitting_time(self, index: int = 0, level: int = 0) -> Optional[float]:
        """First recorded time the component equals `level`, if any."""
        for t, s in zip(self.times, self.states):
            if s[index] == level:
                return t
        return None

    def area(self, index: int = 0) -> float:
        """Integral of a component over the recorded span (piecewise constant)."""
        total = 0.0
        for k in range(len(self.times) - 1):
            total += self.states[k][index] * (self.times[k + 1] - self.times[k])
        return total


@dataclass(frozen=True)
class ExtinctionSample:
    """Outcome of one extinction-time simulation."""
    time: float
    reason: TerminalReason
    events: int = 0

    @property
    def censored(self) -> bool:
        return self.reason is TerminalReason.CAPPED

    def __iter__(self):
        # unpacks as (extinction_time, terminal_reason)
        yield self.time
        yield self.reason
