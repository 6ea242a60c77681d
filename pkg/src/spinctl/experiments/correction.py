"""Readout-error removal through the inverse confusion matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ConfusionMatrix:
    """Column-stochastic map from true to measured state probabilities."""

    f0: float
    f1: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.f0, 1.0 - self.f1], [1.0 - self.f0, self.f1]])

    @property
    def invertible(self) -> bool:
        return self.f0 + self.f1 > 1.0

    def apply(self, p_true) -> np.ndarray:
        return self.matrix @ np.asarray(p_true, dtype=float)


def readout_correct(measured, f0: float, f1: float):
    """Recover state probabilities from measured ones: P = F^-1 P_meas.

    ``measured`` is the pair (P0, P1).  Returns (corrected pair, clamped
    flag); out-of-range results are clamped to [0, 1] and flagged rather
    than silently accepted, since inversion can leave the physical simplex.
    """
    conf = ConfusionMatrix(f0, f1)
    if not conf.invertible:
        raise ValueError(f"confusion matrix with F0 + F1 = {f0 + f1} is singular")
    corrected = np.linalg.solve(conf.matrix, np.asarray(measured, dtype=float))
    clamped = bool(np.any(corrected < 0.0) or np.any(corrected > 1.0))
    return np.clip(corrected, 0.0, 1.0), clamped


def corrected_p_up(p_up_measured: float, fid) -> tuple[float, bool]:
    """Convenience: correct a single P(read 1) through (f0, f1) fidelities."""
    pair, clamped = readout_correct([1.0 - p_up_measured, p_up_measured], fid.f0, fid.f1)
    return float(pair[1]), clamped
