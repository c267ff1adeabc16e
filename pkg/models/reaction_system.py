from dataclasses import dataclass, field
from typing import Callable, Optional

State = tuple[int, ...]


@dataclass(frozen=True)
class Reaction:
    """
    One reaction channel: a fixed jump vector and the rate at which it fires.
    `headroom` returns how many firings would exhaust one of the channel's
    reactants; the tau-leaping engine uses it to classify critical channels.
    None means the channel consumes nothing.
    """
    name: str
    stoichiometry: tuple[int, ...]
    propensity: Callable[[State], float]
    headroom: Optional[Callable[[State], float]] = None


@dataclass(frozen=True)
class ReactionSystem:
    """
    Immutable reaction-network form of a continuous-time Markov chain. Both
    engines and the coupler consume this one representation. Propensities are
    responsible for vanishing where a firing would leave the feasible set.
    """
    name: str
    dimension: int
    reactions: tuple[Reaction, ...]
    feasible: Callable[[State], bool]
    # highest reaction order per component, used for leap-size control
    leap_orders: tuple[float, ...] = field(default=())

    def __post_init__(self):
        for reaction in self.reactions:
            if len(reaction.stoichiometry) != self.dimension:
                raise ValueError(
                    f"reaction {reaction.name!r} has stoichiometry of length "
                    f"{len(reaction.stoichiometry)}, expected {self.dimension}"
                )
        if not self.leap_orders:
            object.__setattr__(self, "leap_orders", (1.0,) * self.dimension)

    @property
    def stoichiometries(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r.stoichiometry for r in self.reactions)

    def propensities(self, state: State) -> list[float]:
        """Channel rates in fixed reaction order."""
        return [reaction.propensity(state) for reaction in self.reactions]

    def total_propensity(self, state: State) -> float:
        total = 0.0
        for reaction in self.reactions:
            total += reaction.propensity(state)
        return total

    def fire(self, state: State, channel: int, count: int = 1) -> State:
        jump = self.reactions[channel].stoichiometry
        return tuple(x + count * v for x, v in zip(state, jump))

    def check_state(self, state: State) -> State:
        state = tuple(int(x) for x in state)
        if len(state) != self.dimension or not self.feasible(state):
            raise ValueError(f"state {state} is not feasible for {self.name}")
        return state
