"""Memory-image serialization: binary files and a text disassembly.

Binary layout (little-endian throughout):

    offset  size  field
    0       4     magic "SQMI"
    4       2     format version (currently 1)
    6       1     amp_bits
    7       1     phase_mod_bits
    8       4     envelope entry count
    12      4*n   envelope entries: int16 amp_code, uint16 phase_mod
    ...     per bank (2), per NCO (16):
              1     instruction count
              13*k  instructions: uint8 kind (0 burst, 1 phase update),
                    uint32 start, uint32 stop, uint32 phase_update
    ...     4     instruction list length
    ...     3*m   list entries: uint8 bank, uint8 nco, uint8 slot

The text disassembly is lossless: ``assemble(disassemble(image))`` gives
back a semantically identical image.
"""

from __future__ import annotations

import struct

from ..errors import ImageFormatError
from .memory import (
    EnvelopeEntry,
    EnvelopeMemory,
    Instruction,
    MemoryImage,
    N_BANKS,
    N_NCOS,
)

MAGIC = b"SQMI"
VERSION = 1


def dump_image(image: MemoryImage) -> bytes:
    env = image.envelope
    parts = [MAGIC, struct.pack("<HBB", VERSION, env.amp_bits, env.phase_mod_bits)]
    parts.append(struct.pack("<I", len(env)))
    for e in env.entries:
        parts.append(struct.pack("<hH", e.amp_code, e.phase_mod))
    for bank in range(N_BANKS):
        for nco in range(N_NCOS):
            table = image.tables[bank][nco]
            parts.append(struct.pack("<B", len(table)))
            for instr in table:
                if instr.is_phase_update:
                    parts.append(struct.pack("<BIII", 1, 0, 0, instr.phase_update))
                else:
                    parts.append(
                        struct.pack("<BIII", 0, instr.start_addr, instr.stop_addr, 0)
                    )
    parts.append(struct.pack("<I", len(image.instruction_list)))
    for ref in image.instruction_list:
        parts.append(struct.pack("<BBB", ref.bank, ref.nco, ref.slot))
    return b"".join(parts)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, fmt: str):
        size = struct.calcsize(fmt)
        if self.pos + size > len(self.data):
            raise ImageFormatError("truncated image file", offset=self.pos)
        out = struct.unpack_from(fmt, self.data, self.pos)
        self.pos += size
        return out


def load_image(data: bytes) -> MemoryImage:
    r = _Reader(data)
    (magic,) = r.take("<4s")
    if magic != MAGIC:
        raise ImageFormatError(f"bad magic {magic!r}", offset=0)
    version, amp_bits, phase_mod_bits = r.take("<HBB")
    if version != VERSION:
        raise ImageFormatError(f"unsupported format version {version}", offset=4)
    (n_env,) = r.take("<I")
    image = MemoryImage()
    image.envelope = EnvelopeMemory(amp_bits=amp_bits, phase_mod_bits=phase_mod_bits)
    try:
        for _ in range(n_env):
            amp, pm = r.take("<hH")
            image.envelope.append(EnvelopeEntry(amp, pm))
        for bank in range(N_BANKS):
            for nco in range(N_NCOS):
                (count,) = r.take("<B")
                for _ in range(count):
                    kind, start, stop, pu = r.take("<BIII")
                    if kind == 1:
                        instr = Instruction(nco, phase_update=pu)
                    elif kind == 0:
                        instr = Instruction(nco, start_addr=start, stop_addr=stop)
                    else:
                        raise ImageFormatError(
                            f"unknown instruction kind {kind}", offset=r.pos - 13
                        )
                    image.add_instruction(bank, nco, instr)
        (n_list,) = r.take("<I")
        for _ in range(n_list):
            bank, nco, slot = r.take("<BBB")
            image.schedule(bank, nco, slot)
    except ImageFormatError:
        raise
    except Exception as exc:  # capacity/range errors land here with an offset
        raise ImageFormatError(str(exc), offset=r.pos) from exc
    if r.pos != len(data):
        raise ImageFormatError("trailing bytes after image", offset=r.pos)
    return image


def disassemble(image: MemoryImage) -> str:
    """Human-readable, lossless listing of a memory image."""
    env = image.envelope
    lines = [
        f"; memory image v{VERSION}",
        f"bits amp={env.amp_bits} phase_mod={env.phase_mod_bits}",
    ]
    # Run-length grouping of identical envelope entries.
    i = 0
    while i < len(env):
        j = i
        while j + 1 < len(env) and env.entries[j + 1] == env.entries[i]:
            j += 1
        e = env.entries[i]
        lines.append(f"env {i}..{j} amp={e.amp_code} pm={e.phase_mod}")
        i = j + 1
    for bank in range(N_BANKS):
        for nco in range(N_NCOS):
            for slot, instr in enumerate(image.tables[bank][nco]):
                where = f"b{bank}.n{nco}.s{slot}"
                if instr.is_phase_update:
                    lines.append(f"instr {where} phase +{instr.phase_update}")
                else:
                    lines.append(
                        f"instr {where} burst {instr.start_addr}..{instr.stop_addr}"
                        f" ({instr.n_samples} samples)"
                    )
    for ref in image.instruction_list:
        lines.append(f"run b{ref.bank}.n{ref.nco}.s{ref.slot}")
    return "\n".join(lines) + "\n"


def assemble(text: str) -> MemoryImage:
    """Parse a disassembly listing back into a memory image."""
    image = MemoryImage()
    pending_env = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";")[0].strip()
        if not line:
            continue
        try:
            fields = line.split()
            if fields[0] == "bits":
                kv = dict(f.split("=") for f in fields[1:])
                image.envelope.amp_bits = int(kv["amp"])
                image.envelope.phase_mod_bits = int(kv["phase_mod"])
            elif fields[0] == "env":
                start, stop = (int(x) for x in fields[1].split(".."))
                kv = dict(f.split("=") for f in fields[2:])
                for addr in range(start, stop + 1):
                    pending_env[addr] = EnvelopeEntry(int(kv["amp"]), int(kv["pm"]))
            elif fields[0] == "instr":
                bank, nco, slot = (int(x[1:]) for x in fields[1].split("."))
                if fields[2] == "phase":
                    instr = Instruction(nco, phase_update=int(fields[3]))
                elif fields[2] == "burst":
                    start, stop = (int(x) for x in fields[3].split(".."))
                    instr = Instruction(nco, start_addr=start, stop_addr=stop)
                else:
                    raise ValueError(f"unknown instruction form {fields[2]!r}")
                got = image.add_instruction(bank, nco, instr)
                if got != slot:
                    raise ValueError(f"slot {slot} listed out of order")
            elif fields[0] == "run":
                bank, nco, slot = (int(x[1:]) for x in fields[1].split("."))
                image.schedule(bank, nco, slot)
            else:
                raise ValueError(f"unknown directive {fields[0]!r}")
        except ImageFormatError:
            raise
        except Exception as exc:
            raise ImageFormatError(f"line {lineno}: {exc}") from exc
    if pending_env:
        top = max(pending_env)
        missing = [a for a in range(top + 1) if a not in pending_env]
        if missing:
            raise ImageFormatError(f"envelope addresses missing: {missing[:5]}...")
        for addr in range(top + 1):
            image.envelope.append(pending_env[addr])
    return image
