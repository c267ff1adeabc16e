from models.reaction_system import Reaction, ReactionSystem, State
from schemas.process import BdiParams


def bdi_system(params: BdiParams) -> ReactionSystem:
    """
    Linear birth-death-immigration chain on x >= 0: +1 at βx + α, −1 at μx.
    With absorb_at_zero both rates vanish at x = 0.
    """
    beta, mu, alpha = params.beta, params.mu, params.alpha
    absorb = params.absorb_at_zero

    def up(state: State) -> float:
        x = state[0]
        if absorb and x == 0:
            return 0.0
        return beta * x + alpha

    def down(state: State) -> float:
        return mu * state[0]

    def up_headroom(state: State) -> float:
        # immigration has no reactant to exhaust
        return float("inf") if alpha > 0 else float(state[0])

    return ReactionSystem(
        name=f"bdi(beta={beta}, mu={mu}, alpha={alpha}, absorb={absorb})",
        dimension=1,
        reactions=(
            Reaction("birth", (1,), up, headroom=up_headroom),
            Reaction("death", (-1,), down, headroom=lambda s: float(s[0])),
        ),
        feasible=lambda s: s[0] >= 0,
        leap_orders=(1.0,),
    )
