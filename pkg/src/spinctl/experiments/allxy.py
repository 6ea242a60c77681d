"""AllXY calibration sequence: 21 gate pairs, <sigma_z> per pair.

Ideal outcomes split 5 / 12 / 4 over {-1, 0, +1}; amplitude, frequency, or
phase miscalibration bends characteristic regions of the pattern.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..compiler.ir import GateOp
from ..physics import sample_noise, shot_rng
from .base import Bench, binomial_stderr, estimate_p_up
from .correction import corrected_p_up

# Standard ordering: 5 ground pairs, 12 equator pairs, 4 excited pairs.
ALLXY_PAIRS = [
    ("i", "i"), ("x2", "x2"), ("y2", "y2"), ("x2", "y2"), ("y2", "x2"),
    ("x", "i"), ("y", "i"), ("x", "y"), ("y", "x"),
    ("x", "y2"), ("y", "x2"), ("x2", "y"), ("y2", "x"),
    ("x", "x2"), ("x2", "x"), ("y", "y2"), ("y2", "y"),
    ("x2", "i"), ("y2", "i"), ("x", "x"), ("y", "y"),
]

IDEAL_SIGMA_Z = [-1.0] * 5 + [0.0] * 12 + [1.0] * 4


@dataclass
class AllxyResult:
    pairs: list
    sigma_z: list
    ideal: list = field(default_factory=lambda: list(IDEAL_SIGMA_Z))
    shots: int = 0
    seed: int = 0

    def rows(self):
        for k, (pair, value, ideal) in enumerate(zip(self.pairs, self.sigma_z, self.ideal)):
            yield (k, "*".join(pair), value, ideal)

    def header(self):
        return ("index", "pair", "sigma_z", "ideal")


def run_allxy(bench: Bench, *, qubit: int = 2, shots: int = 10_000, seed: int = 0,
              engine: str = "dense") -> AllxyResult:
    """Run the 21 pairs; readout error is removed via the confusion inverse."""
    model = bench.model
    fid = model.readout_q1 if qubit == 1 else model.readout_q2
    noisy = model.sigma_detune > 0 or model.sigma_j > 0
    values = []
    for k, pair in enumerate(ALLXY_PAIRS):
        ops = [GateOp(g, qubit) for g in pair]
        prog = bench.compile(ops)
        if not noisy:
            state = bench.final_state(prog, engine=engine)
            p_hat = estimate_p_up(state, model, qubit, shots, shot_rng(seed, k))
        else:
            hits = 0
            for s in range(shots):
                rng = shot_rng(seed, k, s)
                state = bench.final_state(prog, noise=sample_noise(model, rng), engine=engine)
                hits += estimate_p_up(state, model, qubit, 1, rng)
            p_hat = hits / shots
        p_corr, _ = corrected_p_up(p_hat, fid)
        values.append(2.0 * p_corr - 1.0)
    return AllxyResult(pairs=list(ALLXY_PAIRS), sigma_z=values, shots=shots, seed=seed)


def allxy_oracle(amplitude_scale: float = 1.0, detuning_phase: float = 0.0) -> np.ndarray:
    """Unitary-composition reference for miscalibrated AllXY patterns.

    ``amplitude_scale`` multiplies every rotation angle; ``detuning_phase``
    adds a z-precession angle between the two gates (coarse single-step
    model of a frequency error).  Returns the 21 ideal <sigma_z> values.
    """
    from ..physics.evolve import rotation_for_phase, z_rotation

    params = {
        "i": (0.0, 0.0),
        "x": (0.0, np.pi / 2), "y": (np.pi / 2, np.pi / 2),
        "x2": (0.0, np.pi), "y2": (np.pi / 2, np.pi),
    }
    out = []
    for g1, g2 in ALLXY_PAIRS:
        u1 = rotation_for_phase(*params[g1]) if params[g1][1] else np.eye(2)
        u2 = rotation_for_phase(params[g2][0], params[g2][1]) if params[g2][1] else np.eye(2)
        if amplitude_scale != 1.0:
            u1 = rotation_for_phase(params[g1][0], params[g1][1] * amplitude_scale)
            u2 = rotation_for_phase(params[g2][0], params[g2][1] * amplitude_scale)
        psi = u2 @ z_rotation(detuning_phase) @ u1 @ np.array([1.0, 0.0], dtype=complex)
        out.append(2.0 * abs(psi[1]) ** 2 - 1.0)
    return np.array(out)
