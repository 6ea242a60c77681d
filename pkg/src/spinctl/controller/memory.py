"""Controller memories: envelope store, instruction tables, instruction list.

Capacities mirror the modeled hardware and are hard limits: writes past
them raise CapacityError instead of truncating.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import CapacityError
from .nco import PHASE_WORDS, quantize_unit

ENVELOPE_CAPACITY = 40960
TABLE_CAPACITY = 8
LIST_CAPACITY = 2048
N_BANKS = 2
N_NCOS = 16


@dataclass(frozen=True)
class EnvelopeEntry:
    """One envelope point: signed amplitude code and unsigned phase code."""

    amp_code: int
    phase_mod: int = 0


@dataclass
class EnvelopeMemory:
    """Ordered amplitude/phase points shared by all NCOs of a transmitter."""

    amp_bits: int = 10
    phase_mod_bits: int = 10
    entries: list[EnvelopeEntry] = field(default_factory=list)

    def __post_init__(self):
        if len(self.entries) > ENVELOPE_CAPACITY:
            raise CapacityError("envelope memory", ENVELOPE_CAPACITY, len(self.entries))
        for e in self.entries:
            self._check_entry(e)

    def _check_entry(self, e: EnvelopeEntry):
        lim = 1 << (self.amp_bits - 1)
        if not -lim <= e.amp_code < lim:
            raise ValueError(f"amplitude code {e.amp_code} outside {self.amp_bits}-bit grid")
        if not 0 <= e.phase_mod < (1 << self.phase_mod_bits):
            raise ValueError(f"phase code {e.phase_mod} outside {self.phase_mod_bits}-bit range")

    def __len__(self) -> int:
        return len(self.entries)

    def append(self, entry: EnvelopeEntry) -> int:
        if len(self.entries) + 1 > ENVELOPE_CAPACITY:
            raise CapacityError("envelope memory", ENVELOPE_CAPACITY, len(self.entries) + 1)
        self._check_entry(entry)
        self.entries.append(entry)
        return len(self.entries) - 1

    def extend(self, entries) -> tuple[int, int]:
        """Append a block; returns its (start, stop) inclusive address range."""
        entries = list(entries)
        if not entries:
            raise ValueError("cannot store an empty envelope block")
        if len(self.entries) + len(entries) > ENVELOPE_CAPACITY:
            raise CapacityError(
                "envelope memory", ENVELOPE_CAPACITY, len(self.entries) + len(entries)
            )
        for e in entries:
            self._check_entry(e)
        start = len(self.entries)
        self.entries.extend(entries)
        return start, len(self.entries) - 1

    def write_values(self, amplitudes, phase_mods=None) -> tuple[int, int]:
        """Quantize float amplitudes in [-1, 1) onto the grid and store them."""
        amplitudes = np.asarray(amplitudes, dtype=float)
        scale = 1 << (self.amp_bits - 1)
        codes = (quantize_unit(amplitudes, self.amp_bits) * scale).astype(int)
        if phase_mods is None:
            phase_mods = np.zeros(len(codes), dtype=int)
        return self.extend(
            EnvelopeEntry(int(a), int(p)) for a, p in zip(codes, phase_mods)
        )

    def amp_values(self, start: int, stop: int) -> np.ndarray:
        scale = 1 << (self.amp_bits - 1)
        return np.array([e.amp_code for e in self.entries[start : stop + 1]]) / scale

    def phase_codes(self, start: int, stop: int) -> np.ndarray:
        return np.array([e.phase_mod for e in self.entries[start : stop + 1]], dtype=np.int64)


@dataclass
class Instruction:
    """One table entry: an envelope burst or a zero-duration phase update.

    Exactly one of the two forms is present: ``start_addr``/``stop_addr``
    select an envelope range to play, or ``phase_update`` adds to the NCO
    reference phase without consuming any clock samples.
    """

    nco_index: int
    start_addr: int | None = None
    stop_addr: int | None = None
    phase_update: int | None = None

    def __post_init__(self):
        if not 0 <= self.nco_index < N_NCOS:
            raise ValueError(f"nco_index {self.nco_index} outside 0..{N_NCOS - 1}")
        has_range = self.start_addr is not None or self.stop_addr is not None
        if has_range == (self.phase_update is not None):
            raise ValueError("instruction must carry either an envelope range or a phase update")
        if has_range:
            if self.start_addr is None or self.stop_addr is None:
                raise ValueError("envelope range needs both start and stop addresses")
            if not 0 <= self.start_addr <= self.stop_addr:
                raise ValueError(
                    f"envelope range [{self.start_addr}, {self.stop_addr}] is not ordered"
                )
        else:
            if not 0 <= self.phase_update < PHASE_WORDS:
                raise ValueError(f"phase_update {self.phase_update} not a phase word")

    @property
    def is_phase_update(self) -> bool:
        return self.phase_update is not None

    @property
    def n_samples(self) -> int:
        if self.is_phase_update:
            return 0
        return self.stop_addr - self.start_addr + 1


@dataclass(frozen=True)
class ListEntry:
    """Instruction-list reference: which table slot of which NCO to run."""

    bank: int
    nco: int
    slot: int

    def __post_init__(self):
        if not 0 <= self.bank < N_BANKS:
            raise ValueError(f"bank {self.bank} outside 0..{N_BANKS - 1}")
        if not 0 <= self.nco < N_NCOS:
            raise ValueError(f"nco {self.nco} outside 0..{N_NCOS - 1}")
        if not 0 <= self.slot < TABLE_CAPACITY:
            raise ValueError(f"slot {self.slot} outside 0..{TABLE_CAPACITY - 1}")


def _empty_tables():
    return [[[] for _ in range(N_NCOS)] for _ in range(N_BANKS)]


@dataclass
class MemoryImage:
    """Everything the sequencer consumes: envelopes, tables, and the list."""

    envelope: EnvelopeMemory = field(default_factory=EnvelopeMemory)
    tables: list = field(default_factory=_empty_tables)
    instruction_list: list[ListEntry] = field(default_factory=list)

    def add_instruction(self, bank: int, nco: int, instr: Instruction) -> int:
        """Store an instruction in the per-NCO table; returns its slot."""
        if not 0 <= bank < N_BANKS:
            raise ValueError(f"bank {bank} outside 0..{N_BANKS - 1}")
        if instr.nco_index != nco:
            raise ValueError("instruction nco_index does not match table row")
        table = self.tables[bank][nco]
        if len(table) + 1 > TABLE_CAPACITY:
            raise CapacityError(
                f"instruction table bank{bank}/nco{nco}", TABLE_CAPACITY, len(table) + 1
            )
        table.append(instr)
        return len(table) - 1

    def schedule(self, bank: int, nco: int, slot: int):
        """Append a table reference to the instruction list."""
        if len(self.instruction_list) + 1 > LIST_CAPACITY:
            raise CapacityError(
                "instruction list", LIST_CAPACITY, len(self.instruction_list) + 1
            )
        self.instruction_list.append(ListEntry(bank, nco, slot))

    def validate(self) -> None:
        """Check every list reference and envelope address before execution."""
        if len(self.instruction_list) > LIST_CAPACITY:
            raise CapacityError(
                "instruction list", LIST_CAPACITY, len(self.instruction_list)
            )
        n_env = len(self.envelope)
        for pos, ref in enumerate(self.instruction_list):
            table = self.tables[ref.bank][ref.nco]
            if ref.slot >= len(table):
                raise ValueError(
                    f"list entry {pos} references empty slot "
                    f"bank{ref.bank}/nco{ref.nco}/slot{ref.slot}"
                )
            instr = table[ref.slot]
            if not instr.is_phase_update and instr.stop_addr >= n_env:
                raise ValueError(
                    f"list entry {pos} envelope range "
                    f"[{instr.start_addr}, {instr.stop_addr}] exceeds "
                    f"envelope length {n_env}"
                )

    def occupancy(self) -> dict:
        return {
            "envelope_used": len(self.envelope),
            "envelope_capacity": ENVELOPE_CAPACITY,
            "table_used": [
                [len(self.tables[b][n]) for n in range(N_NCOS)] for b in range(N_BANKS)
            ],
            "table_capacity": TABLE_CAPACITY,
            "list_used": len(self.instruction_list),
            "list_capacity": LIST_CAPACITY,
        }
