"""Single-qubit randomized benchmarking.

Random Clifford strings plus a recovery Clifford compile to one
instruction list per sequence (split across triggers when the list
overflows); survival is the fraction of shots returning to |0>.  The
survival-vs-length curve is fitted to A p^m + B and converted to an
average gate fidelity through the primitives-per-Clifford ratio.

An analytic depolarizing mode replaces the physics with exact state
mixing of strength eps per Clifford, for validating the whole sampling
and fitting chain against a known answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import curve_fit

from ..compiler.ir import GateOp
from ..physics import readout_probabilities, shot_rng
from ..physics.device import sample_noise_batch, NoiseSample
from ..physics.evolve import trace_propagators
from ..physics.state import QuantumState
from .base import Bench
from .cliffords import AVG_PRIMITIVES, N_CLIFFORDS, recovery_index, sequence_primitives
from .correction import corrected_p_up


@dataclass
class RbResult:
    lengths: list
    survival: list  # mean over sequences and repetitions, per length
    per_sequence: list  # list of arrays, one survival per sampled sequence
    amplitude: float
    offset: float
    p: float
    p_stderr: float
    avg_primitives: float = AVG_PRIMITIVES
    n_sequences: int = 32
    repetitions: int = 200
    seed: int = 0
    split_lengths: list = field(default_factory=list)

    @property
    def fidelity_clifford(self) -> float:
        return 1.0 - (1.0 - self.p) / 2.0

    @property
    def fidelity_gate(self) -> float:
        return 1.0 - (1.0 - self.p) / 2.0 / self.avg_primitives

    @property
    def fidelity_gate_stderr(self) -> float:
        return self.p_stderr / 2.0 / self.avg_primitives

    def rows(self):
        for m, s in zip(self.lengths, self.survival):
            yield (m, s)

    def header(self):
        return ("length", "survival")

    def summary(self) -> dict:
        return {
            "A": self.amplitude,
            "B": self.offset,
            "p": self.p,
            "p_stderr": self.p_stderr,
            "fidelity_clifford": self.fidelity_clifford,
            "fidelity_gate": self.fidelity_gate,
            "fidelity_gate_stderr": self.fidelity_gate_stderr,
            "lengths": list(self.lengths),
            "survival": list(self.survival),
            "n_sequences": self.n_sequences,
            "repetitions": self.repetitions,
            "seed": self.seed,
            "split_lengths": list(self.split_lengths),
        }


def _fit_decay(lengths, survivals):
    def decay(m, a, b, p):
        return a * p**m + b

    popt, pcov = curve_fit(
        decay,
        np.asarray(lengths, dtype=float),
        np.asarray(survivals, dtype=float),
        p0=(0.5, 0.5, 0.995),
        bounds=([0.0, 0.0, 0.0], [1.0, 1.0, 1.0]),
        maxfev=20_000,
    )
    perr = np.sqrt(np.diag(pcov))
    return popt, perr


def run_rb(
    bench: Bench,
    lengths,
    *,
    qubit: int = 2,
    n_sequences: int = 32,
    repetitions: int = 200,
    seed: int = 0,
    depolarizing_eps: float | None = None,
) -> RbResult:
    """Benchmark one qubit.  Physics mode draws fresh quasi-static noise per
    repetition and evolves each sequence on the structured engine;
    depolarizing mode applies the analytic channel instead."""
    lengths = list(lengths)
    per_sequence = []
    split_lengths = []
    fid = bench.model.readout_q1 if qubit == 1 else bench.model.readout_q2
    for li, m in enumerate(lengths):
        seq_surv = np.empty(n_sequences)
        for si in range(n_sequences):
            rng = shot_rng(seed, li, si)
            indices = rng.integers(0, N_CLIFFORDS, size=m).tolist()
            if depolarizing_eps is not None:
                # Exact mixing: survival = 1/2 + 1/2 (1-eps)^(m+1) incl. recovery.
                p_surv = 0.5 + 0.5 * (1.0 - depolarizing_eps) ** (m + 1)
                hits = rng.binomial(repetitions, p_surv)
                seq_surv[si] = hits / repetitions
                continue
            indices.append(recovery_index(indices))
            ops = [GateOp(g, qubit) for g in sequence_primitives(indices)]
            prog = bench.compile(ops)
            if prog.report["split"] and m not in split_lengths:
                split_lengths.append(m)
            _, trace = bench.run_program(prog)
            d1, d2, dj = sample_noise_batch(bench.model, rng, repetitions)
            noises = [NoiseSample(a, b, c) for a, b, c in zip(d1, d2, dj)]
            props = trace_propagators(
                trace, bench.model, bench.cfg.lo_freq,
                exchange_on=bench.exchange_on, noises=noises,
            )
            ground = QuantumState.ground().amplitudes
            survived = np.empty(repetitions, dtype=bool)
            draws = rng.random(repetitions)
            for r in range(repetitions):
                state = QuantumState(props[r] @ ground)
                p1, p2 = readout_probabilities(state, bench.model)
                p_read1 = p1 if qubit == 1 else p2
                survived[r] = draws[r] >= p_read1  # single shot reads 0
            seq_surv[si] = survived.mean()
        per_sequence.append(seq_surv)
    survival = [float(np.mean(s)) for s in per_sequence]
    if fid.f0 + fid.f1 > 1.0 and (fid.f0 < 1.0 or fid.f1 < 1.0):
        survival = [1.0 - corrected_p_up(1.0 - s, fid)[0] for s in survival]
    (a, b, p), (ea, eb, ep) = _fit_decay(lengths, survival)
    return RbResult(
        lengths=lengths,
        survival=survival,
        per_sequence=per_sequence,
        amplitude=float(a),
        offset=float(b),
        p=float(p),
        p_stderr=float(ep),
        n_sequences=n_sequences,
        repetitions=repetitions,
        seed=seed,
        split_lengths=split_lengths,
    )
