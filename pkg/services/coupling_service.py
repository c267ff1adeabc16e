"""
Order-preserving couplings of birth-death chains.

Chains sitting at the same value share their jumps: ranked by birth rate, the
top j chains move up together at the gap between the j-th and (j+1)-th birth
rates, and likewise downward by death rate. Chains at distinct values jump
independently. All moves hang off one exponential clock, so two chains never
jump at the same instant unless they move together. Every chain keeps its own
marginal law; the ordering is preserved wherever the rates are ranked the way
the values are.
"""
import logging
from typing import Optional, Sequence

from models.enums import TerminalReason
from models.rng_stream import RngStream
from models.simulation import StopCondition, Trajectory
from schemas.coupling import CoupledPair, SandwichBarrier, SandwichResult
from schemas.process import SirsParams, SirsState
from services.ssa_service import select_channel
from utils.errors import DominanceViolationError, OrderingViolationError

logger = logging.getLogger(__name__)

Move = tuple[float, tuple[int, ...], int]


def coupled_moves(values: Sequence[int], births: Sequence[float],
                  deaths: Sequence[float]) -> list[Move]:
    """Joint jump channels as (rate, moving chains, direction)."""
    groups: dict[int, list[int]] = {}
    for chain, value in enumerate(values):
        groups.setdefault(value, []).append(chain)

    moves: list[Move] = []
    for value in sorted(groups):
        members = groups[value]
        for rates, direction in ((births, 1), (deaths, -1)):
            ranked = sorted(members, key=lambda c: (-rates[c], c))
            for j, chain in enumerate(ranked):
                following = rates[ranked[j + 1]] if j + 1 < len(ranked) else 0.0
                gap = rates[chain] - following
                if gap > 0.0:
                    moves.append((gap, tuple(ranked[: j + 1]), direction))
    return moves


def _check_dominance(pair: CoupledPair, z: int, checked: set[int]) -> None:
    if z in checked:
        return
    b_upper, b_lower = pair.upper_birth(z), pair.lower_birth(z)
    d_upper, d_lower = pair.upper_death(z), pair.lower_death(z)
    if b_upper < b_lower:
        raise DominanceViolationError((z,), f"upper birth {b_upper} < lower birth {b_lower}")
    if d_upper > d_lower:
        raise DominanceViolationError((z,), f"upper death {d_upper} > lower death {d_lower}")
    checked.add(z)


def simulate_coupled_pair(pair: CoupledPair, upper0: int, lower0: int,
                          stop: StopCondition | None, rng: RngStream) -> tuple[Trajectory, Trajectory]:
    """
    Joint path of the upper and lower chain. `stop` is evaluated on the joint
    state (upper, lower); by default the run ends when the upper chain hits 0.
    """
    if upper0 < lower0:
        raise ValueError(f"upper start {upper0} is below lower start {lower0}")
    if lower0 < 0:
        raise ValueError("starting values must be nonnegative")
    stop = stop or StopCondition.component_zero(0)
    checked: set[int] = set()
    upper_path, lower_path = Trajectory(), Trajectory()
    z1, z2 = upper0, lower0
    upper_path.append(0.0, (z1,))
    lower_path.append(0.0, (z2,))
    t = 0.0
    events = 0
    cap = stop.cap

    while True:
        if stop.holds((z1, z2), t):
            reason = TerminalReason.STOPPED
            break
        _check_dominance(pair, z1, checked)
        _check_dominance(pair, z2, checked)
        moves = coupled_moves(
            (z1, z2),
            (pair.upper_birth(z1), pair.lower_birth(z2)),
            (pair.upper_death(z1), pair.lower_death(z2)),
        )
        rates = [m[0] for m in moves]
        total = sum(rates)
        if total <= 0.0:
            reason = TerminalReason.ABSORBED
            break
        if events >= cap:
            reason = TerminalReason.CAPPED
            break
        t += rng.exponential(total)
        _, chains, direction = moves[select_channel(rates, total, rng.uniform())]
        if 0 in chains:
            z1 += direction
            upper_path.append(t, (z1,))
        if 1 in chains:
            z2 += direction
            lower_path.append(t, (z2,))
        events += 1
        if z1 < z2:
            raise OrderingViolationError(f"coupled paths crossed at t={t}: upper {z1} < lower {z2}")

    upper_path.terminal_reason = reason
    lower_path.terminal_reason = reason
    return upper_path, lower_path


def _all_extinct(state, t) -> bool:
    return state[0] == 0 and state[1] == 0 and state[3] == 0


def simulate_sirs_sandwich(params: SirsParams, state0: SirsState, upper_beta: float,
                           lower_beta: float, stop: StopCondition | None, rng: RngStream,
                           barrier: Optional[SandwichBarrier] = None) -> SandwichResult:
    """
    Couple a SIRS infected count between linear birth-death chains with birth
    rates lower_beta and upper_beta (death rate 1), all started at I0.

    Ordering lower <= I <= upper is guaranteed while
    lower_beta <= λ(1 − (I + R)/N) <= upper_beta. The first time that fails
    (while I > 0) is recorded and ordering is no longer checked afterwards.
    `stop` sees the joint state (lower, I, R, upper); by default the run ends
    when all three infected counts are 0.
    """
    state0.check_within(params)
    if lower_beta < 0 or upper_beta < 0:
        raise ValueError("birth rates must be nonnegative")
    stop = stop or StopCondition.when(_all_extinct)
    n_pop, lam, gamma = params.n_pop, params.lam, params.gamma
    i_max = barrier.i_max if barrier else None
    r_max = barrier.r_max if barrier else None

    lower, i, r, upper = state0.i, state0.i, state0.r, state0.i
    paths = {name: Trajectory() for name in ("lower", "mid", "recovered", "upper")}
    paths["lower"].append(0.0, (lower,))
    paths["mid"].append(0.0, (i,))
    paths["recovered"].append(0.0, (r,))
    paths["upper"].append(0.0, (upper,))

    t = 0.0
    events = 0
    cap = stop.cap
    ordered = True
    failed_at: Optional[float] = None
    exited_at: Optional[float] = None

    while True:
        if failed_at is None and i > 0:
            per_capita = lam * (1.0 - (i + r) / n_pop)
            if not lower_beta <= per_capita <= upper_beta:
                failed_at = t
        if exited_at is None and ((i_max is not None and i > i_max)
                                  or (r_max is not None and r > r_max)):
            exited_at = t
        if failed_at is None and not lower <= i <= upper:
            ordered = False
        if stop.holds((lower, i, r, upper), t):
            reason = TerminalReason.STOPPED
            break

        moves = coupled_moves(
            (lower, i, upper),
            (lower_beta * lower, lam * (n_pop - i - r) * i / n_pop, upper_beta * upper),
            (float(lower), float(i), float(upper)),
        )
        rates = [m[0] for m in moves]
        loss_rate = gamma * r
        rates.append(loss_rate)
        total = sum(rates)
        if total <= 0.0:
            reason = TerminalReason.ABSORBED
            break
        if events >= cap:
            reason = TerminalReason.CAPPED
            break

        t += rng.exponential(total)
        channel = select_channel(rates, total, rng.uniform())
        events += 1
        if channel == len(moves):
            r -= 1
            paths["recovered"].append(t, (r,))
            continue
        _, chains, direction = moves[channel]
        if 0 in chains:
            lower += direction
            paths["lower"].append(t, (lower,))
        if 1 in chains:
            i += direction
            paths["mid"].append(t, (i,))
            if direction < 0:
                r += 1
                paths["recovered"].append(t, (r,))
        if 2 in chains:
            upper += direction
            paths["upper"].append(t, (upper,))

    for path in paths.values():
        path.terminal_reason = reason
    logger.debug("sandwich N=%d: t=%.6g ordered=%s failed_at=%s exited_at=%s",
                 n_pop, t, ordered, failed_at, exited_at)
    return SandwichResult(
        lower=paths["lower"], mid=paths["mid"], recovered=paths["recovered"],
        upper=paths["upper"], ordered=ordered,
        domination_failed_at=failed_at, barrier_exit_at=exited_at,
    )
