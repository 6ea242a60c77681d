"""Spectral analysis of synthesized signals: spectra, SNR, SFDR, two-tone.

Bin powers are normalized so that summing bins of a tone's main lobe
recovers the tone's mean-square power exactly (Parseval), independent of
the window.  All frequencies in reports are absolute RF, reconstructed
from the carrier metadata of the analyzed signal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import get_window

from .controller.executor import BasebandWaveform
from .controller.rf import RfSignal

WINDOWS = {
    "rectangular": ("boxcar", 1),
    "hann": ("hann", 3),
    "blackman-harris": ("blackmanharris", 5),
}

SPUR_ABOVE_MEDIAN_DB = 20.0  # a bin this far above local median noise is a spur
_MEDIAN_BLOCK = 64


@dataclass
class Spectrum:
    """One-sided power spectrum of an analytic signal, in dB re carrier tone."""

    freqs: np.ndarray  # absolute RF per bin, Hz
    power_dbc: np.ndarray
    rbw: float  # equivalent noise bandwidth per bin, Hz
    window: str
    carrier_freq: float
    tone_bin: int
    tone_power: float  # linear mean-square power of the main tone
    lobe_halfwidth: int
    fs: float

    def __len__(self) -> int:
        return len(self.freqs)

    @property
    def tone_freq(self) -> float:
        return float(self.freqs[self.tone_bin])

    def power_linear(self) -> np.ndarray:
        return self.tone_power * 10.0 ** (self.power_dbc / 10.0)

    def lobe_bins(self, center: int) -> np.ndarray:
        lo = max(center - self.lobe_halfwidth, 0)
        hi = min(center + self.lobe_halfwidth, len(self.freqs) - 1)
        return np.arange(lo, hi + 1)

    def bin_of(self, freq_hz: float) -> int:
        return int(np.argmin(np.abs(self.freqs - freq_hz)))

    def tone_power_at(self, bin_index: int) -> float:
        """Linear tone power from the lobe sum around a bin."""
        p = self.power_linear()
        return float(p[self.lobe_bins(bin_index)].sum())


def _as_envelope(signal):
    if isinstance(signal, RfSignal):
        return signal.envelope, signal.sample_rate, signal.carrier_freq
    if isinstance(signal, BasebandWaveform):
        return signal.envelope, signal.sample_rate, 0.0
    arr = np.asarray(signal)
    return arr, 1.0, 0.0


def compute_spectrum(signal, window: str = "rectangular", fft_len: int | None = None) -> Spectrum:
    """Windowed FFT power spectrum, normalized to the main tone.

    Parameters
    ----------
    signal : RfSignal | BasebandWaveform | ndarray
        Analytic signal to analyze; carrier metadata is used when present.
    window : one of "rectangular", "hann", "blackman-harris"
    fft_len : analysis length; defaults to the full signal, must not exceed it.
    """
    z, fs, carrier = _as_envelope(signal)
    if len(z) == 0:
        raise ValueError("cannot compute a spectrum of an empty waveform")
    if window not in WINDOWS:
        raise ValueError(f"unknown window {window!r}; choose from {sorted(WINDOWS)}")
    if fft_len is None:
        fft_len = len(z)
    if fft_len > len(z):
        raise ValueError(f"fft_len {fft_len} exceeds waveform length {len(z)}")
    name, halfwidth = WINDOWS[window]
    w = get_window(name, fft_len, fftbins=True)
    x = np.fft.fftshift(np.fft.fft(w * z[:fft_len]))
    # Parseval normalization: lobe-summed tone power equals A^2 exactly.
    power = np.abs(x) ** 2 / (fft_len * np.sum(w**2))
    freqs = carrier + np.fft.fftshift(np.fft.fftfreq(fft_len, d=1.0 / fs))
    rbw = fs * np.sum(w**2) / np.sum(w) ** 2

    peak = int(np.argmax(power))
    lo = max(peak - halfwidth, 0)
    hi = min(peak + halfwidth, fft_len - 1)
    tone_power = float(power[lo : hi + 1].sum())
    if tone_power <= 0.0:
        raise ValueError("waveform contains no signal power")
    return Spectrum(
        freqs=freqs,
        power_dbc=10.0 * np.log10(np.maximum(power / tone_power, 1e-300)),
        rbw=rbw,
        window=window,
        carrier_freq=carrier,
        tone_bin=peak,
        tone_power=tone_power,
        lobe_halfwidth=halfwidth,
        fs=fs,
    )


def _band_mask(spec: Spectrum, center: float, bandwidth: float | None) -> np.ndarray:
    if bandwidth is None:
        return np.ones(len(spec), dtype=bool)
    return np.abs(spec.freqs - center) <= bandwidth / 2.0


def _local_median_db(power_dbc: np.ndarray, block: int = _MEDIAN_BLOCK) -> np.ndarray:
    """Blockwise median as a cheap local noise-floor estimate."""
    n = len(power_dbc)
    out = np.empty(n)
    for start in range(0, n, block):
        seg = power_dbc[start : start + block]
        out[start : start + block] = np.median(seg)
    return out


def spur_mask(spec: Spectrum) -> np.ndarray:
    """Bins whose power exceeds the local median noise by 20 dB."""
    floor = _local_median_db(spec.power_dbc)
    return spec.power_dbc > floor + SPUR_ABOVE_MEDIAN_DB


def sfdr(spec: Spectrum, exclusions=None, bandwidth: float | None = None) -> float:
    """Carrier power minus the largest remaining bin, in dB.

    ``exclusions`` is an iterable of absolute-frequency intervals (lo, hi)
    removed from the search; None applies the default exclusion of
    +/- 2 RBW around the LO (residual LO leakage does not count as a spur).
    The carrier's own main lobe is always excluded.
    """
    if exclusions is None:
        exclusions = [(spec.carrier_freq - 2 * spec.rbw, spec.carrier_freq + 2 * spec.rbw)]
    mask = _band_mask(spec, spec.freqs[spec.tone_bin], bandwidth)
    mask[spec.lobe_bins(spec.tone_bin)] = False
    for lo, hi in exclusions:
        mask &= ~((spec.freqs >= lo) & (spec.freqs <= hi))
    if not mask.any():
        raise ValueError("exclusions cover the whole analysis band")
    worst = float(spec.power_dbc[mask].max())
    return -worst


def snr(spec: Spectrum, signal_bin: int | None = None, integration_bw: float = 25e6) -> float:
    """Tone power over integrated noise in a band centered on the tone.

    Spur bins (and the tone's own lobe) are excluded from the noise sum.
    """
    if integration_bw < spec.rbw:
        raise ValueError(
            f"integration bandwidth {integration_bw} Hz below resolution {spec.rbw} Hz"
        )
    if signal_bin is None:
        signal_bin = spec.tone_bin
    center = float(spec.freqs[signal_bin])
    half = integration_bw / 2.0
    f_lo, f_hi = spec.freqs[0], spec.freqs[-1]
    if center - half < f_lo - spec.rbw or center + half > f_hi + spec.rbw:
        raise ValueError("integration band exceeds the Nyquist span of the spectrum")
    mask = _band_mask(spec, center, integration_bw)
    mask[spec.lobe_bins(signal_bin)] = False
    mask &= ~spur_mask(spec)
    tone = spec.tone_power_at(signal_bin)
    noise = float(spec.power_linear()[mask].sum())
    if noise <= 0.0:
        return float("inf")
    return 10.0 * np.log10(tone / noise)


def lo_rejection(spec: Spectrum) -> float:
    """Carrier power minus the residual LO line, in dB."""
    lo_bin = spec.bin_of(spec.carrier_freq)
    leak = spec.tone_power_at(lo_bin)
    return 10.0 * np.log10(spec.tone_power / leak)


def two_tone_report(signal, f_a: float, f_b: float, window: str = "rectangular",
                    fft_len: int | None = None) -> dict:
    """Characterize a two-tone signal: tone powers plus intermodulation.

    ``f_a`` and ``f_b`` are absolute RF frequencies.  Intermodulation
    products m*f_a +/- n*f_b with m + n <= 3 inside the analysis span are
    reported relative to the weaker tone.
    """
    spec = compute_spectrum(signal, window=window, fft_len=fft_len)
    min_spacing = (2 * spec.lobe_halfwidth + 1) * spec.fs / len(spec)
    if abs(f_a - f_b) < min_spacing:
        raise ValueError(
            f"tones {f_a} and {f_b} Hz unresolvable at this FFT length "
            f"(need {min_spacing:.1f} Hz spacing)"
        )
    bin_a, bin_b = spec.bin_of(f_a), spec.bin_of(f_b)
    p_a, p_b = spec.tone_power_at(bin_a), spec.tone_power_at(bin_b)
    weaker = min(p_a, p_b)

    base_a = f_a - spec.carrier_freq
    base_b = f_b - spec.carrier_freq
    span_lo, span_hi = spec.freqs[0], spec.freqs[-1]
    products = {}
    claimed = set(spec.lobe_bins(bin_a)) | set(spec.lobe_bins(bin_b))
    for m in range(0, 4):
        for n in range(0, 4):
            if m + n < 2 or m + n > 3:
                continue
            for sign in (+1, -1):
                f = spec.carrier_freq + m * base_a + sign * n * base_b
                if not span_lo <= f <= span_hi:
                    continue
                b = spec.bin_of(f)
                if b in claimed:
                    continue
                label = f"{m}fa{'+' if sign > 0 else '-'}{n}fb"
                p = spec.tone_power_at(b)
                products[label] = 10.0 * np.log10(max(p / weaker, 1e-300))
    largest = max(products.values()) if products else float("-inf")
    return {
        "tone_a_dbc": 10.0 * np.log10(p_a / spec.tone_power),
        "tone_b_dbc": 10.0 * np.log10(p_b / spec.tone_power),
        "products_dbc": products,
        "imd_worst_dbc": largest,
    }


def spectrum_to_rows(spec: Spectrum):
    """(freq_hz, dbc) row pairs for CSV export."""
    return zip(spec.freqs.tolist(), spec.power_dbc.tolist())
