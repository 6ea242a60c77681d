"""Qubit spectroscopy: flip probability versus probe NCO frequency.

The probe image (an optional preparation plus a calibrated near-pi burst)
is compiled once; the sweep only rewrites the probe NCO's tuning word,
exactly how the modeled hardware scans a resonance.
"""

from __future__ import annotations

import numpy as np

from ..compiler.ir import GateOp
from ..controller.nco import offset_to_ftw
from ..physics import sample_noise, shot_rng
from .base import Bench, SweepResult, binomial_stderr, estimate_p_up


def run_spectroscopy(
    bench: Bench,
    qubit: int,
    frequencies,
    *,
    shots: int = 100,
    seed: int = 0,
    shape: str = "rectangular",
    prepare_other: bool = False,
    burst_rabi: float | None = None,
    engine: str = "dense",
) -> SweepResult:
    """Sweep a probe tone across ``frequencies`` (absolute Hz).

    ``prepare_other`` flips the spectator qubit first, selecting the other
    conditional branch when exchange is on.  ``burst_rabi`` overrides the
    calibrated Rabi rate of the probe burst.
    """
    frequencies = np.asarray(frequencies, dtype=float)
    nyq = bench.cfg.f_clk / 2
    if np.any(np.abs(frequencies - bench.cfg.lo_freq) >= nyq):
        raise ValueError("sweep extends beyond the Nyquist range around the LO")

    other = 2 if qubit == 1 else 1
    probe_slot = bench.plan.for_qubit(qubit)[0]
    cal_entry = bench.cal.for_slot(probe_slot)
    ops = []
    if prepare_other:
        ops.append(GateOp("x2", other))
    if burst_rabi is None:
        ops.append(GateOp("x2", qubit, shape=shape, branch=probe_slot.branch))
    else:
        dur = 1.0 / (2.0 * burst_rabi)
        ops.append(GateOp("x2", qubit, shape=shape, duration=dur, branch=probe_slot.branch))
    prog = bench.compile(ops)

    result = SweepResult(x_name="frequency_hz", meta={"qubit": qubit, "shape": shape})
    noisy = bench.model.sigma_detune > 0 or bench.model.sigma_j > 0
    for k, f in enumerate(frequencies):
        prog.ftws[(probe_slot.bank, probe_slot.nco)] = offset_to_ftw(
            f - bench.cfg.lo_freq, bench.cfg.f_clk
        )
        if not noisy:
            state = bench.final_state(prog, engine=engine)
            rng = shot_rng(seed, k)
            p1 = estimate_p_up(state, bench.model, 1, shots, rng)
            p2 = estimate_p_up(state, bench.model, 2, shots, rng)
        else:
            h1 = h2 = 0.0
            for s in range(shots):
                rng = shot_rng(seed, k, s)
                state = bench.final_state(
                    prog, noise=sample_noise(bench.model, rng), engine=engine
                )
                h1 += estimate_p_up(state, bench.model, 1, 1, rng)
                h2 += estimate_p_up(state, bench.model, 2, 1, rng)
            p1, p2 = h1 / shots, h2 / shots
        p_probe = p1 if qubit == 1 else p2
        result.add(f, p1, p2, binomial_stderr(p_probe, shots))
    return result


def locate_peaks(result: SweepResult, qubit: int, n_peaks: int = 1, min_separation_hz: float = 1e6):
    """Frequencies of the strongest response maxima, greedily separated."""
    p = np.asarray(result.p1_q1 if qubit == 1 else result.p1_q2)
    x = np.asarray(result.x)
    order = np.argsort(p)[::-1]
    peaks = []
    for idx in order:
        if all(abs(x[idx] - f) >= min_separation_hz for f in peaks):
            peaks.append(float(x[idx]))
        if len(peaks) == n_peaks:
            break
    return sorted(peaks)
