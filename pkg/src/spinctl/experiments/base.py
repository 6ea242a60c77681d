"""Shared plumbing for experiment runners.

Every experiment goes compiler -> transmitter -> physics -> readout and
differs only in the programs it builds and the statistics it extracts.
Randomness follows the substream contract in ``spinctl.physics.device``:
point p / shot s of an experiment seeded with ``seed`` draws from
``shot_rng(seed, p, s)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..compiler import (
    CalibrationSet,
    CompiledProgram,
    FrequencyPlan,
    allocate_frequencies,
    default_calibration,
)
from ..controller.executor import ExecutionTrace, Transmitter, TxConfig
from ..physics import (
    DeviceModel,
    QuantumState,
    ZERO_NOISE,
    evolve,
    evolve_trace,
    readout_probabilities,
    shot_rng,
)
from ..physics.evolve import FastPathUnavailable


@dataclass
class Bench:
    """One experiment setup: device, transmitter, plan, and calibration."""

    model: DeviceModel
    cfg: TxConfig
    exchange_on: bool = False
    target_rabi: float = 1e6
    plan: FrequencyPlan = None
    cal: CalibrationSet = None

    def __post_init__(self):
        if self.plan is None:
            self.plan = allocate_frequencies(
                (self.model.f1, self.model.f2),
                self.cfg.lo_freq,
                exchange_on=self.exchange_on,
                j=self.model.j_on if self.exchange_on else None,
                f_clk=self.cfg.f_clk,
            )
        if self.cal is None:
            self.cal = default_calibration(
                self.model, self.plan, amp_bits=self.cfg.amp_bits, target_rabi=self.target_rabi
            )

    def compile(self, ops) -> CompiledProgram:
        from ..compiler import compile_program

        return compile_program(
            ops,
            self.plan,
            self.cal,
            amp_bits=self.cfg.amp_bits,
            phase_mod_bits=self.cfg.phase_mod_bits,
        )

    def run_program(self, prog: CompiledProgram):
        """Execute all triggers; returns (waveform, trace)."""
        tx = Transmitter(self.cfg, prog.ftws)
        trace = ExecutionTrace()
        wf = tx.execute_sequence(prog.images, trace)
        return wf, trace

    def final_state(self, prog: CompiledProgram, *, noise=ZERO_NOISE,
                    state: QuantumState | None = None, engine: str = "dense") -> QuantumState:
        """Evolve |00> (or ``state``) through a compiled program.

        ``engine``: "dense" integrates the DAC sample stream; "trace" uses
        the structured fast path; "auto" prefers the fast path and falls
        back when bursts overlap.
        """
        wf, trace = self.run_program(prog)
        state = state or QuantumState.ground()
        if engine in ("trace", "auto"):
            try:
                return evolve_trace(
                    state, trace, self.model, self.cfg.lo_freq,
                    exchange_on=self.exchange_on, noise=noise,
                )
            except FastPathUnavailable:
                if engine == "trace":
                    raise
        return evolve(
            state, wf, self.model, self.cfg.lo_freq,
            exchange_on=self.exchange_on, noise=noise,
        )


def estimate_p_up(state: QuantumState, model: DeviceModel, qubit: int,
                  shots: int, rng: np.random.Generator) -> float:
    """Sampled fraction of shots reading 1 on one qubit (analytic channel)."""
    p1, p2 = readout_probabilities(state, model)
    p = p1 if qubit == 1 else p2
    return rng.binomial(shots, p) / shots


def binomial_stderr(p_hat: float, shots: int) -> float:
    return float(np.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / shots))


@dataclass
class SweepResult:
    """Generic sweep output: one row per point, per-qubit P(read 1)."""

    x_name: str
    x: list = field(default_factory=list)
    p1_q1: list = field(default_factory=list)
    p1_q2: list = field(default_factory=list)
    stderr: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, x, p1, p2, err):
        self.x.append(float(x))
        self.p1_q1.append(float(p1))
        self.p1_q2.append(float(p2))
        self.stderr.append(float(err))

    def rows(self):
        return zip(self.x, self.p1_q1, self.p1_q2, self.stderr)

    def header(self):
        return (self.x_name, "p1_q1", "p1_q2", "stderr")
