"""
Modified tau-leaping with critical reactions and exact-SSA fallback.

A channel is critical when it has positive propensity and fewer than n_c
firings would exhaust one of its reactants. Critical channels fire one at a
time off a single exponential clock; the others leap by Poisson counts over a
step chosen so that the expected relative change of each component (scaled by
its highest reaction order) stays within epsilon. Steps that would be shorter
than a few mean SSA steps are replaced by a burst of exact SSA steps, and a
leap that leaves the feasible set is rejected and retried with half the step.
"""
import logging
from typing import Optional, Sequence

from models.enums import StopMode, TerminalReason
from models.reaction_system import ReactionSystem, State
from models.rng_stream import RngStream
from models.simulation import ExtinctionSample, Recording, StopCondition, Trajectory
from schemas.engine import TauConfig
from services.ssa_service import TrajectoryRecorder, run_direct_method, select_channel

logger = logging.getLogger(__name__)

INF = float("inf")


class LeapPlan:
    """Sparse jump and leap-control tables of a system, built once per run."""

    def __init__(self, system: ReactionSystem):
        reactions = system.reactions
        self.headrooms = [reaction.headroom for reaction in reactions]
        self.jumps = [
            tuple((i, v) for i, v in enumerate(reaction.stoichiometry) if v)
            for reaction in reactions
        ]
        self.components = [
            (i, order, tuple((j, r.stoichiometry[i]) for j, r in enumerate(reactions)
                             if r.stoichiometry[i]))
            for i, order in enumerate(system.leap_orders) if order > 0
        ]

    def split(self, state: State, rates: Sequence[float],
              n_c: int) -> tuple[list[bool], list[int], float]:
        """Critical flags, the live noncritical channels and the critical rate total."""
        critical = [False] * len(rates)
        noncritical = []
        critical_total = 0.0
        for j, rate in enumerate(rates):
            if rate > 0.0:
                headroom = self.headrooms[j]
                if headroom is not None and headroom(state) < n_c:
                    critical[j] = True
                    critical_total += rate
                else:
                    noncritical.append(j)
        return critical, noncritical, critical_total

    def tau(self, state: State, rates: Sequence[float], critical: Sequence[bool],
            epsilon: float) -> float:
        tau = INF
        for i, order, entries in self.components:
            mean_change = 0.0
            variance = 0.0
            for j, v in entries:
                if not critical[j]:
                    rate = rates[j]
                    mean_change += v * rate
                    variance += v * v * rate
            bound = epsilon * state[i] / order
            if bound < 1.0:
                bound = 1.0
            if mean_change != 0.0:
                tau = min(tau, bound / abs(mean_change))
            if variance > 0.0:
                tau = min(tau, bound * bound / variance)
        return tau


def critical_channels(system: ReactionSystem, state: State, rates: Sequence[float],
                      n_c: int) -> list[bool]:
    return LeapPlan(system).split(state, rates, n_c)[0]


def noncritical_tau(system: ReactionSystem, state: State, rates: Sequence[float],
                    critical: Sequence[bool], epsilon: float) -> float:
    """Largest leap keeping every component's expected relative change within epsilon."""
    return LeapPlan(system).tau(state, rates, critical, epsilon)


def run_modified_tau(system: ReactionSystem, state: State, stop: StopCondition,
                     cfg: TauConfig, rng: RngStream,
                     recorder: Optional[TrajectoryRecorder] = None) -> tuple[float, State, TerminalReason, int]:
    t = 0.0
    steps = 0
    leaps = 0
    rejections = 0
    cap = stop.cap
    horizon = stop.t_max if stop.mode is StopMode.TIME_HORIZON else INF
    plan = LeapPlan(system)
    jumps = plan.jumps
    n_c, epsilon, switch = cfg.n_c, cfg.epsilon, cfg.ssa_switch_multiple

    while True:
        if stop.holds(state, t):
            reason = TerminalReason.STOPPED
            break
        rates = system.propensities(state)
        total = 0.0
        for rate in rates:
            total += rate
        if total <= 0.0:
            reason = TerminalReason.ABSORBED
            break
        if steps >= cap:
            reason = TerminalReason.CAPPED
            break

        critical, noncritical, critical_total = plan.split(state, rates, n_c)
        new_state = None
        # with nothing to leap a step is an exact step
        if noncritical:
            tau_nc = plan.tau(state, rates, critical, epsilon)
            if tau_nc == INF and critical_total == 0.0:
                tau_nc = 0.0
            threshold = switch / total
            while tau_nc >= threshold:
                tau_crit = rng.exponential(critical_total) if critical_total > 0.0 else INF
                fired = -1
                if tau_nc < tau_crit:
                    tau = tau_nc
                else:
                    tau = tau_crit
                    critical_rates = [rate if flag else 0.0 for rate, flag in zip(rates, critical)]
                    fired = select_channel(critical_rates, critical_total, rng.uniform())
                clipped = t + tau > horizon
                if clipped:
                    tau = horizon - t
                    fired = -1
                moved = list(state)
                if fired >= 0:
                    for i, v in jumps[fired]:
                        moved[i] += v
                for j in noncritical:
                    count = rng.poisson(rates[j] * tau)
                    if count:
                        for i, v in jumps[j]:
                            moved[i] += count * v
                candidate = tuple(moved)
                if system.feasible(candidate):
                    new_state = candidate
                    break
                rejections += 1
                tau_nc /= 2.0

        if new_state is None:
            t, state, reason, steps = run_direct_method(
                system, state, stop, rng, recorder=recorder, t=t, events=steps,
                max_steps=cfg.ssa_fallback_steps,
            )
            if reason is not None:
                break
            continue

        t += tau
        state = new_state
        steps += 1
        leaps += 1
        if recorder is not None:
            recorder.event(t, state)
        if clipped:
            reason = TerminalReason.STOPPED
            break

    logger.debug("tau %s: t=%.6g reason=%s steps=%d leaps=%d rejected=%d",
                 system.name, t, reason.value, steps, leaps, rejections)
    return t, state, reason, steps


def simulate_extinction_tau(system: ReactionSystem, state0: State, stop: StopCondition,
                            cfg: TauConfig, rng: RngStream) -> ExtinctionSample:
    """Approximate sample of the first time `stop` holds; `events` counts engine steps."""
    state = system.check_state(state0)
    t, _, reason, steps = run_modified_tau(system, state, stop, cfg, rng)
    return ExtinctionSample(t, reason, steps)


def simulate_trajectory_tau(system: ReactionSystem, state0: State, stop: StopCondition,
                            cfg: TauConfig, rng: RngStream,
                            recording: Recording | None = None) -> Trajectory:
    state = system.check_state(state0)
    recorder = TrajectoryRecorder(recording or Recording.grid(1.0), state)
    t, _, reason, _ = run_modified_tau(system, state, stop, cfg, rng, recorder=recorder)
    return recorder.finish(t, reason)
