"""Capacity enforcement and structural validation of controller memories."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spinctl.errors import CapacityError
from spinctl.controller.memory import (
    ENVELOPE_CAPACITY,
    LIST_CAPACITY,
    TABLE_CAPACITY,
    EnvelopeEntry,
    EnvelopeMemory,
    Instruction,
    ListEntry,
    MemoryImage,
)


def test_envelope_fills_to_capacity_then_rejects():
    mem = EnvelopeMemory()
    mem.extend(EnvelopeEntry(0) for _ in range(ENVELOPE_CAPACITY))
    assert len(mem) == ENVELOPE_CAPACITY
    with pytest.raises(CapacityError):
        mem.append(EnvelopeEntry(0))


@given(st.integers(min_value=1, max_value=200))
@settings(max_examples=25)
def test_envelope_overflow_rejected_without_partial_write(extra):
    mem = EnvelopeMemory()
    mem.extend(EnvelopeEntry(1) for _ in range(ENVELOPE_CAPACITY - 10))
    with pytest.raises(CapacityError):
        mem.extend(EnvelopeEntry(2) for _ in range(10 + extra))
    assert len(mem) == ENVELOPE_CAPACITY - 10  # nothing truncated in


def test_amplitude_code_range_checked():
    mem = EnvelopeMemory(amp_bits=8)
    mem.append(EnvelopeEntry(127))
    mem.append(EnvelopeEntry(-128))
    with pytest.raises(ValueError):
        mem.append(EnvelopeEntry(128))


def test_write_values_quantizes_to_grid():
    mem = EnvelopeMemory(amp_bits=10)
    start, stop = mem.write_values(np.array([0.5, -0.25, 0.999]))
    assert (start, stop) == (0, 2)
    codes = [e.amp_code for e in mem.entries]
    assert codes == [256, -128, 511]


def test_table_rejects_ninth_instruction():
    img = MemoryImage()
    for _ in range(TABLE_CAPACITY):
        img.add_instruction(0, 3, Instruction(3, phase_update=1))
    with pytest.raises(CapacityError):
        img.add_instruction(0, 3, Instruction(3, phase_update=1))
    assert len(img.tables[0][3]) == TABLE_CAPACITY


def test_list_rejects_2049th_entry():
    img = MemoryImage()
    img.add_instruction(0, 0, Instruction(0, phase_update=1))
    for _ in range(LIST_CAPACITY):
        img.schedule(0, 0, 0)
    with pytest.raises(CapacityError):
        img.schedule(0, 0, 0)
    assert len(img.instruction_list) == LIST_CAPACITY


@given(st.integers(min_value=0, max_value=TABLE_CAPACITY + 4))
@settings(max_examples=20)
def test_table_boundary_exact(n):
    img = MemoryImage()
    if n <= TABLE_CAPACITY:
        for _ in range(n):
            img.add_instruction(1, 0, Instruction(0, phase_update=5))
        assert len(img.tables[1][0]) == n
    else:
        for _ in range(TABLE_CAPACITY):
            img.add_instruction(1, 0, Instruction(0, phase_update=5))
        with pytest.raises(CapacityError):
            img.add_instruction(1, 0, Instruction(0, phase_update=5))


def test_instruction_needs_exactly_one_form():
    with pytest.raises(ValueError):
        Instruction(0)
    with pytest.raises(ValueError):
        Instruction(0, start_addr=0, stop_addr=3, phase_update=7)
    with pytest.raises(ValueError):
        Instruction(0, start_addr=5, stop_addr=4)


def test_list_entry_bounds():
    with pytest.raises(ValueError):
        ListEntry(2, 0, 0)
    with pytest.raises(ValueError):
        ListEntry(0, 16, 0)
    with pytest.raises(ValueError):
        ListEntry(0, 0, 8)


def test_validate_catches_dangling_slot_and_bad_range():
    img = MemoryImage()
    img.envelope.write_values(np.zeros(4))
    img.add_instruction(0, 0, Instruction(0, start_addr=0, stop_addr=3))
    img.schedule(0, 0, 0)
    img.validate()

    img.instruction_list.append(ListEntry(0, 0, 5))
    with pytest.raises(ValueError, match="empty slot"):
        img.validate()

    img.instruction_list.pop()
    img.tables[0][0][0] = Instruction(0, start_addr=0, stop_addr=10)
    with pytest.raises(ValueError, match="exceeds"):
        img.validate()
