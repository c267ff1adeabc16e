from models.reaction_system import Reaction, ReactionSystem, State
from schemas.process import SirsParams


def sirs_system(params: SirsParams) -> ReactionSystem:
    """
    SIRS chain on {(i, r): 0 <= i + r <= N}: infection (+1, 0) at λ(N−i−r)i/N,
    recovery (−1, +1) at i, immunity loss (0, −1) at γr.
    """
    n_pop = params.n_pop
    lam = params.lam
    gamma = params.gamma

    def infection(state: State) -> float:
        i, r = state
        return lam * (n_pop - i - r) * i / n_pop

    def recovery(state: State) -> float:
        return float(state[0])

    def immunity_loss(state: State) -> float:
        return gamma * state[1]

    def feasible(state: State) -> bool:
        i, r = state
        return i >= 0 and r >= 0 and i + r <= n_pop

    return ReactionSystem(
        name=f"sirs(N={n_pop}, lambda={lam}, gamma={gamma})",
        dimension=2,
        reactions=(
            # infection uses up a susceptible and needs an infective present
            Reaction("infection", (1, 0), infection,
                     headroom=lambda s: float(min(s[0], n_pop - s[0] - s[1]))),
            Reaction("recovery", (-1, 1), recovery, headroom=lambda s: float(s[0])),
            Reaction("immunity_loss", (0, -1), immunity_loss, headroom=lambda s: float(s[1])),
        ),
        feasible=feasible,
        leap_orders=(2.0, 1.0),
    )
