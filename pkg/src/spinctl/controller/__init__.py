from .nco import (
    PHASE_BITS,
    PHASE_WORDS,
    NcoState,
    freq_to_ftw,
    ftw_to_freq,
    offset_to_ftw,
    ftw_to_offset,
)
from .memory import (
    ENVELOPE_CAPACITY,
    TABLE_CAPACITY,
    LIST_CAPACITY,
    N_BANKS,
    N_NCOS,
    EnvelopeEntry,
    EnvelopeMemory,
    Instruction,
    ListEntry,
    MemoryImage,
)
from .executor import BasebandWaveform, Impairments, Transmitter, TxConfig, execute
from .rf import RfSignal, upconvert

__all__ = [
    "PHASE_BITS",
    "PHASE_WORDS",
    "NcoState",
    "freq_to_ftw",
    "ftw_to_freq",
    "offset_to_ftw",
    "ftw_to_offset",
    "ENVELOPE_CAPACITY",
    "TABLE_CAPACITY",
    "LIST_CAPACITY",
    "N_BANKS",
    "N_NCOS",
    "EnvelopeEntry",
    "EnvelopeMemory",
    "Instruction",
    "ListEntry",
    "MemoryImage",
    "BasebandWaveform",
    "Impairments",
    "Transmitter",
    "TxConfig",
    "execute",
    "RfSignal",
    "upconvert",
]
