"""Two-qubit Deutsch-Jozsa algorithm on the exchange-coupled pair.

Qubit 2 is the query register (measured at the end); qubit 1 holds the
phase-kickback eigenstate.  The one-bit oracles are implemented as
controlled rotations on qubit 1 (cnot = pi at its high conditional
frequency, z-cnot = pi at the low one) and as i / x2 for the balanced
pair.  Both cnot oracles leave the query qubit reading |1>, i and x2
leave it reading |0>.  Qubit 2's preparation gates address only its low
branch: qubit 1 is in |0> at those moments, so the high branch is dark.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..compiler.ir import GateOp
from ..physics import sample_noise, shot_rng
from .base import Bench, binomial_stderr, estimate_p_up
from .correction import corrected_p_up

ORACLES = ("cnot", "z_cnot", "identity", "x2")
CONSTANT_OUTCOME = {"cnot": 1.0, "z_cnot": 1.0, "identity": 0.0, "x2": 0.0}


def dj_program(oracle: str) -> list[GateOp]:
    if oracle not in ORACLES:
        raise ValueError(f"unknown oracle {oracle!r}; choose from {ORACLES}")
    ops = [
        GateOp("my", 2, branch="low"),  # query superposition while q1 is |0>
        GateOp("y", 1),                 # kickback eigenstate |-x> on q1
    ]
    if oracle == "cnot":
        ops.append(GateOp("crot_high", 1))
    elif oracle == "z_cnot":
        ops.append(GateOp("crot_low", 1))
    elif oracle == "x2":
        ops.append(GateOp("x2", 1))
    # identity: no oracle pulse
    ops += [
        GateOp("my", 1),                # q1 back to |0>
        GateOp("y", 2, branch="low"),   # unprepare the query
    ]
    return ops


@dataclass
class DjResult:
    p_output_one: dict
    stderr: dict
    shots: int
    seed: int
    meta: dict = field(default_factory=dict)

    def rows(self):
        for oracle in ORACLES:
            yield (oracle, self.p_output_one[oracle], self.stderr[oracle],
                   CONSTANT_OUTCOME[oracle])

    def header(self):
        return ("oracle", "p_output_1", "stderr", "ideal")


def run_dj(bench: Bench, *, shots: int = 10_000, seed: int = 0,
           engine: str = "dense") -> DjResult:
    """Run all four oracles; the query qubit's P(read 1) is readout-corrected."""
    if not bench.exchange_on:
        raise ValueError("the algorithm needs an exchange-on frequency plan")
    model = bench.model
    noisy = model.sigma_detune > 0 or model.sigma_j > 0
    p_out, err = {}, {}
    for k, oracle in enumerate(ORACLES):
        prog = bench.compile(dj_program(oracle))
        if not noisy:
            state = bench.final_state(prog, engine=engine)
            p_hat = estimate_p_up(state, model, 2, shots, shot_rng(seed, k))
        else:
            hits = 0.0
            for s in range(shots):
                rng = shot_rng(seed, k, s)
                state = bench.final_state(prog, noise=sample_noise(model, rng), engine=engine)
                hits += estimate_p_up(state, model, 2, 1, rng)
            p_hat = hits / shots
        p_corr, _ = corrected_p_up(p_hat, model.readout_q2)
        p_out[oracle] = p_corr
        err[oracle] = binomial_stderr(p_hat, shots)
    return DjResult(p_output_one=p_out, stderr=err, shots=shots, seed=seed)
