from .ir import GateOp, parse_angle, parse_program
from .envelopes import synthesize_envelope
from .plan import (
    CalibrationSet,
    FrequencyPlan,
    GateCal,
    Slot,
    allocate_frequencies,
    default_calibration,
)
from .emit import CompiledProgram, compile_program

__all__ = [
    "GateOp",
    "parse_angle",
    "parse_program",
    "synthesize_envelope",
    "CalibrationSet",
    "FrequencyPlan",
    "GateCal",
    "Slot",
    "allocate_frequencies",
    "default_calibration",
    "CompiledProgram",
    "compile_program",
]
