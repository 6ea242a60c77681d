"""Quantum state tomography of one qubit along a burst trajectory.

Projections are measured on the (-z, +x, -y, +z) axes: direct readout,
then readout preceded by y, x, or x2.  Linear inversion gives a Bloch
vector; eigenvalue truncation projects it to the closest physical state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..compiler.ir import GateOp
from ..physics import shot_rng
from .base import Bench, estimate_p_up
from .correction import corrected_p_up

# Pre-measurement rotation per axis; m = 2*P(read 1) - 1 after correction.
BASES = [("-z", None), ("+x", "y"), ("-y", "x"), ("+z", "x2")]

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass
class TomoPoint:
    time: float
    projections: dict
    bloch_raw: np.ndarray
    bloch_mle: np.ndarray
    physical_before_mle: bool

    @property
    def rho(self) -> np.ndarray:
        x, y, z = self.bloch_mle
        return 0.5 * (np.eye(2) + x * SX + y * SY + z * SZ)


@dataclass
class TomoResult:
    points: list[TomoPoint] = field(default_factory=list)
    shots_per_basis: int = 1000
    seed: int = 0

    def rows(self):
        for p in self.points:
            yield (p.time, *p.bloch_mle, *p.bloch_raw)

    def header(self):
        return ("time_s", "x", "y", "z", "x_raw", "y_raw", "z_raw")


def project_physical(bloch: np.ndarray) -> tuple[np.ndarray, bool]:
    """Closest physical state (Frobenius norm): eigenvalue truncation.

    For one qubit this truncates the negative eigenvalue of the linear
    estimate and renormalizes, which shrinks the vector onto the Bloch
    sphere when it falls outside.
    """
    norm = float(np.linalg.norm(bloch))
    if norm <= 1.0:
        return bloch.copy(), True
    return bloch / norm, False


def measured_projection(bench: Bench, prefix_ops, basis_gate, qubit, shots, rng) -> float:
    ops = list(prefix_ops)
    if basis_gate is not None:
        ops.append(GateOp(basis_gate, qubit))
    state = bench.final_state(bench.compile(ops))
    fid = bench.model.readout_q1 if qubit == 1 else bench.model.readout_q2
    p_hat = estimate_p_up(state, bench.model, qubit, shots, rng)
    p_corr, _ = corrected_p_up(p_hat, fid)
    return 2.0 * p_corr - 1.0


def run_qst_trajectory(bench: Bench, times, *, qubit: int = 2, shots: int = 1000,
                       seed: int = 0) -> TomoResult:
    """Tomography of the state after an x burst of each duration in ``times``.

    Requires an invertible confusion matrix (F0 + F1 > 1), checked before
    any simulation runs.
    """
    fid = bench.model.readout_q1 if qubit == 1 else bench.model.readout_q2
    if fid.f0 + fid.f1 <= 1.0:
        raise ValueError("confusion matrix is singular: cannot invert readout errors")
    result = TomoResult(shots_per_basis=shots, seed=seed)
    for idx, t in enumerate(times):
        prefix = [] if t <= 0 else [GateOp("x2", qubit, duration=float(t))]
        m = {}
        for b, (axis, gate) in enumerate(BASES):
            rng = shot_rng(seed, idx, b)
            m[axis] = measured_projection(bench, prefix, gate, qubit, shots, rng)
        # m(-z) = +z-component read through nothing equals z; after x2 it flips.
        x = m["+x"]
        y = -m["-y"]
        z = 0.5 * (m["-z"] - m["+z"])
        raw = np.array([x, y, z])
        mle, physical = project_physical(raw)
        result.points.append(
            TomoPoint(
                time=float(t),
                projections=m,
                bloch_raw=raw,
                bloch_mle=mle,
                physical_before_mle=physical,
            )
        )
    return result
