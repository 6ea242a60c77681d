"""Memory-driven waveform synthesis for one transmitter.

A transmitter owns two banks of 16 NCOs.  The instruction list is
dispatched in order; each bank plays its own instructions back to back,
starting at the trigger, so entries on different banks overlap in time
(that is how two tones are emitted at once) while entries on the same
bank are strictly sequential.  NCO phase accumulators advance on every
clock from the trigger onward whether or not their NCO is selected, so
bursts are phase-coherent across idle gaps, instructions, and triggers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .memory import MemoryImage, N_BANKS, N_NCOS
from .nco import PHASE_BITS, PHASE_WORDS, max_grid_value, pac_convert


@dataclass
class Impairments:
    """Analog front-end nonidealities applied at upconversion.

    ``lo_leakage_dbc`` is the residual carrier level relative to a
    full-scale tone (None disables it); gain mismatch is the fractional
    amplitude error of the Q mixing path and the phase error its
    quadrature error in radians.
    """

    lo_leakage_dbc: float | None = None
    iq_gain_mismatch: float = 0.0
    iq_phase_error: float = 0.0


@dataclass
class TxConfig:
    """Static transmitter configuration: clocking, converters, RF front end."""

    f_clk: float = 1e9
    lo_freq: float = 13.54e9
    dac_bits: int = 10
    amp_bits: int = 10
    phase_mod_bits: int = 10
    pac_addr_bits: int = 10
    gain_db: float = 0.0
    impairments: Impairments = field(default_factory=Impairments)
    rf_high: bool = False

    def __post_init__(self):
        if not 0.0 <= self.gain_db <= 40.0:
            raise ValueError(f"gain_db {self.gain_db} outside [0, 40] dB")
        if not 2e9 <= self.lo_freq <= 20e9:
            raise ValueError(f"lo_freq {self.lo_freq} outside [2, 20] GHz band")
        for name in ("dac_bits", "amp_bits"):
            v = getattr(self, name)
            if not 2 <= v <= 30:
                raise ValueError(f"{name}={v} outside supported range 2..30")
        for name in ("phase_mod_bits", "pac_addr_bits"):
            v = getattr(self, name)
            if not 1 <= v <= PHASE_BITS:
                raise ValueError(f"{name}={v} outside 1..{PHASE_BITS}")

    @property
    def sample_period(self) -> float:
        return 1.0 / self.f_clk

    @property
    def dac_rails(self) -> tuple[float, float]:
        return -1.0, max_grid_value(self.dac_bits)


@dataclass
class BasebandWaveform:
    """DAC output of one execution: equal-length I/Q sample streams."""

    sample_rate: float
    i: np.ndarray
    q: np.ndarray
    start_time: float = 0.0

    def __post_init__(self):
        if len(self.i) != len(self.q):
            raise ValueError("i and q sample streams differ in length")

    def __len__(self) -> int:
        return len(self.i)

    @property
    def duration(self) -> float:
        return len(self.i) / self.sample_rate

    @property
    def envelope(self) -> np.ndarray:
        """Complex envelope relative to the LO: q + 1j*i."""
        return self.q + 1j * self.i


@dataclass(frozen=True)
class BurstSegment:
    """Trace record of one envelope burst, enough to rebuild its samples."""

    bank: int
    nco: int
    t0: int  # global sample index of the first sample
    n: int
    ftw: int
    ref_word: int  # reference phase in effect during the burst
    amp_values: np.ndarray  # amplitude-grid values, length n
    phase_codes: np.ndarray  # envelope phase codes, length n

    @property
    def t_end(self) -> int:
        return self.t0 + self.n


@dataclass
class ExecutionTrace:
    """Structured record of an execution: bursts plus total span."""

    segments: list[BurstSegment] = field(default_factory=list)
    n_samples: int = 0
    phase_mod_bits: int = 10
    sample_rate: float = 1e9


class Transmitter:
    """Stateful sequencer: executes memory images, keeps phase across triggers."""

    def __init__(self, cfg: TxConfig, ftws=None):
        self.cfg = cfg
        self.ftws = np.zeros((N_BANKS, N_NCOS), dtype=np.int64)
        if ftws is not None:
            self.set_ftws(ftws)
        self.ref_phase = np.zeros((N_BANKS, N_NCOS), dtype=np.int64)
        self.sample_count = 0  # global clock since construction

    def set_ftws(self, ftws) -> None:
        if isinstance(ftws, dict):
            for (bank, nco), ftw in ftws.items():
                self.set_ftw(bank, nco, ftw)
            return
        arr = np.asarray(ftws, dtype=np.int64)
        if arr.shape != (N_BANKS, N_NCOS):
            raise ValueError(f"ftw table must have shape ({N_BANKS}, {N_NCOS})")
        if np.any((arr < 0) | (arr >= PHASE_WORDS)):
            raise ValueError("ftw values must be unsigned phase words")
        self.ftws = arr.copy()

    def set_ftw(self, bank: int, nco: int, ftw: int) -> None:
        if not 0 <= ftw < PHASE_WORDS:
            raise ValueError(f"ftw {ftw} not an unsigned {PHASE_BITS}-bit word")
        self.ftws[bank, nco] = ftw

    def execute(self, image: MemoryImage, trace: ExecutionTrace | None = None) -> BasebandWaveform:
        """Run one trigger: play the instruction list, return the summed banks.

        Validation happens before any sample is produced.  If ``trace`` is
        given, burst metadata is appended to it for the structured physics
        path.
        """
        image.validate()
        cfg = self.cfg
        env = image.envelope
        if env.amp_bits != cfg.amp_bits or env.phase_mod_bits != cfg.phase_mod_bits:
            raise ValueError(
                "image envelope bit widths do not match the transmitter configuration"
            )

        # First pass: per-bank cursors give the total length up front.
        cursors = [0] * N_BANKS
        placed = []  # (entry, instr, bank-local start)
        for ref in image.instruction_list:
            instr = image.tables[ref.bank][ref.nco][ref.slot]
            placed.append((ref, instr, cursors[ref.bank]))
            cursors[ref.bank] += instr.n_samples
        total = max(cursors) if cursors else 0

        bank_i = np.zeros((N_BANKS, total))
        bank_q = np.zeros((N_BANKS, total))
        start_time = self.sample_count * cfg.sample_period

        for ref, instr, local_t0 in placed:
            if instr.is_phase_update:
                self.ref_phase[ref.bank, ref.nco] = (
                    self.ref_phase[ref.bank, ref.nco] + instr.phase_update
                ) % PHASE_WORDS
                continue
            n = instr.n_samples
            g0 = self.sample_count + local_t0
            ftw = int(self.ftws[ref.bank, ref.nco])
            ref_word = int(self.ref_phase[ref.bank, ref.nco])
            k = np.arange(1, n + 1, dtype=np.int64)
            words = (g0 * ftw + k * ftw + ref_word) % PHASE_WORDS
            amp = env.amp_values(instr.start_addr, instr.stop_addr)
            codes = env.phase_codes(instr.start_addr, instr.stop_addr)
            i, q = pac_convert(
                words,
                amp,
                codes,
                pac_addr_bits=cfg.pac_addr_bits,
                dac_bits=cfg.dac_bits,
                phase_mod_bits=cfg.phase_mod_bits,
            )
            bank_i[ref.bank, local_t0 : local_t0 + n] = i
            bank_q[ref.bank, local_t0 : local_t0 + n] = q
            if trace is not None:
                trace.segments.append(
                    BurstSegment(
                        bank=ref.bank,
                        nco=ref.nco,
                        t0=g0,
                        n=n,
                        ftw=ftw,
                        ref_word=ref_word,
                        amp_values=amp,
                        phase_codes=codes,
                    )
                )

        lo, hi = cfg.dac_rails
        i_sum = np.clip(bank_i.sum(axis=0), lo, hi)
        q_sum = np.clip(bank_q.sum(axis=0), lo, hi)
        self.sample_count += total
        if trace is not None:
            trace.n_samples = self.sample_count
            trace.phase_mod_bits = cfg.phase_mod_bits
            trace.sample_rate = cfg.f_clk
        return BasebandWaveform(
            sample_rate=cfg.f_clk, i=i_sum, q=q_sum, start_time=start_time
        )

    def execute_sequence(self, images, trace: ExecutionTrace | None = None) -> BasebandWaveform:
        """Chain several triggers back to back into one waveform."""
        parts = [self.execute(img, trace) for img in images]
        if not parts:
            return BasebandWaveform(self.cfg.f_clk, np.zeros(0), np.zeros(0))
        return BasebandWaveform(
            sample_rate=self.cfg.f_clk,
            i=np.concatenate([p.i for p in parts]),
            q=np.concatenate([p.q for p in parts]),
            start_time=parts[0].start_time,
        )


def execute(image: MemoryImage, cfg: TxConfig, ftws=None, trace: ExecutionTrace | None = None) -> BasebandWaveform:
    """One-shot execution on a fresh transmitter."""
    return Transmitter(cfg, ftws).execute(image, trace)
