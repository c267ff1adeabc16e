# Import all models
from .enums import (
    CaseKind, EngineKind, HitKind, LawShape, ModelKind, RecordingMode, StopMode, TerminalReason
)
from .reaction_system import Reaction, ReactionSystem, State
from .rng_stream import RngStream
from .simulation import ExtinctionSample, Recording, StopCondition, Trajectory
from .sirs import sirs_system
from .birth_death import bdi_system

# Make sure all models are available for import
__all__ = [
    'CaseKind',
    'EngineKind',
    'HitKind',
    'LawShape',
    'ModelKind',
    'RecordingMode',
    'StopMode',
    'TerminalReason',
    'Reaction',
    'ReactionSystem',
    'State',
    'RngStream',
    'ExtinctionSample',
    'Recording',
    'StopCondition',
    'Trajectory',
    'sirs_system',
    'bdi_system',
]
