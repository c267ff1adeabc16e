import enum


class TerminalReason(str, enum.Enum):
    """Why a simulation returned."""
    STOPPED = "stopped"
    ABSORBED = "absorbed"
    CAPPED = "capped"


class StopMode(str, enum.Enum):
    COMPONENT_ZERO = "component_zero"
    TIME_HORIZON = "time_horizon"
    PREDICATE = "predicate"


class RecordingMode(str, enum.Enum):
    ALL_EVENTS = "all_events"
    GRID = "grid"


class EngineKind(str, enum.Enum):
    SSA = "ssa"
    TAU = "tau"


class ModelKind(str, enum.Enum):
    SIRS = "sirs"
    BDP = "bdp"


class LawShape(str, enum.Enum):
    """Closed-form limit CDF shapes shared by the SIRS and birth-death chains."""
    CASE_1_1_FINITE = "case_1_1_finite"
    CASE_1_1_GROWING = "case_1_1_growing"
    CASE_1_2_FINITE = "case_1_2_finite"
    CASE_1_2_GROWING = "case_1_2_growing"
    GUMBEL = "gumbel"


class CaseKind(str, enum.Enum):
    C1_1 = "C1_1"
    C1_2 = "C1_2"
    C1_3 = "C1_3"
    C2_1 = "C2_1"
    C2_2 = "C2_2"
    BOUNDARY = "boundary"
    OUT_OF_SCOPE = "out_of_scope"


class HitKind(str, enum.Enum):
    LINEAR_BDP = "linear-bdp"
    IMMIG_DEATH = "immig-death"
    ID_TIME_BOUND = "id-time-bound"
