import logging
from typing import Optional, Sequence

from models.enums import RecordingMode, StopMode, TerminalReason
from models.reaction_system import ReactionSystem, State
from models.rng_stream import RngStream
from models.simulation import ExtinctionSample, Recording, StopCondition, Trajectory

logger = logging.getLogger(__name__)


class TrajectoryRecorder:
    """Collects either every jump or right-continuous snapshots on a dt grid."""

    def __init__(self, recording: Recording, state0: State):
        self.recording = recording
        self.trajectory = Trajectory()
        self._state = state0
        self._grid_index = 0
        if recording.mode is RecordingMode.ALL_EVENTS:
            self.trajectory.append(0.0, state0)

    def _flush_grid(self, until: float, inclusive: bool) -> None:
        dt = self.recording.dt
        while True:
            g = self._grid_index * dt
            if g < until or (inclusive and g == until):
                self.trajectory.append(g, self._state)
                self._grid_index += 1
            else:
                return

    def event(self, t: float, state: State) -> None:
        if self.recording.mode is RecordingMode.ALL_EVENTS:
            self.trajectory.append(t, state)
        else:
            self._flush_grid(t, inclusive=False)
        self._state = state

    def finish(self, t: float, reason: TerminalReason) -> Trajectory:
        if self.recording.mode is RecordingMode.GRID:
            self._flush_grid(t, inclusive=True)
            if not self.trajectory.times or self.trajectory.end_time < t:
                self.trajectory.append(t, self._state)
        self.trajectory.terminal_reason = reason
        return self.trajectory


def select_channel(rates: Sequence[float], total: float, u: float) -> int:
    """Cumulative-sum scan in fixed reaction order."""
    target = u * total
    cumulative = 0.0
    chosen = -1
    for j, rate in enumerate(rates):
        if rate > 0.0:
            cumulative += rate
            chosen = j
            if target < cumulative:
                return j
    # u * total rounded onto the last boundary
    return chosen


def run_direct_method(system: ReactionSystem, state: State, stop: StopCondition,
                      rng: RngStream, recorder: Optional[TrajectoryRecorder] = None,
                      t: float = 0.0, events: int = 0,
                      max_steps: Optional[int] = None) -> tuple[float, State, Optional[TerminalReason], int]:
    """
    Gillespie direct method from (t, state). Returns (time, state, reason, events);
    reason is None only when `max_steps` exact steps were taken without stopping.
    """
    cap = stop.cap
    horizon = stop.t_max if stop.mode is StopMode.TIME_HORIZON else float("inf")
    steps = 0
    while True:
        if stop.holds(state, t):
            return t, state, TerminalReason.STOPPED, events
        rates = system.propensities(state)
        total = 0.0
        for rate in rates:
            total += rate
        if total <= 0.0:
            return t, state, TerminalReason.ABSORBED, events
        if events >= cap:
            return t, state, TerminalReason.CAPPED, events
        if max_steps is not None and steps >= max_steps:
            return t, state, None, events
        dt = rng.exponential(total)
        channel = select_channel(rates, total, rng.uniform())
        if t + dt > horizon:
            return horizon, state, TerminalReason.STOPPED, events
        t += dt
        state = system.fire(state, channel)
        events += 1
        steps += 1
        if recorder is not None:
            recorder.event(t, state)


def simulate_extinction(system: ReactionSystem, state0: State, stop: StopCondition,
                        rng: RngStream) -> ExtinctionSample:
    """Exact sample of the first time `stop` holds."""
    state = system.check_state(state0)
    t, _, reason, events = run_direct_method(system, state, stop, rng)
    logger.debug("ssa %s from %s: t=%.6g reason=%s events=%d",
                 system.name, state, t, reason.value, events)
    return ExtinctionSample(t, reason, events)


def simulate_trajectory(system: ReactionSystem, state0: State, stop: StopCondition,
                        rng: RngStream, recording: Recording | None = None) -> Trajectory:
    """Exact sample path, either every jump or grid snapshots."""
    state = system.check_state(state0)
    recorder = TrajectoryRecorder(recording or Recording.all_events(), state)
    t, _, reason, _ = run_direct_method(system, state, stop, rng, recorder=recorder)
    return recorder.finish(t, reason)
