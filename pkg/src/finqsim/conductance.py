"""Resonant-level conductance of two quantum dots probed by three shared
channels, the single-channel closed form, spin-readout signatures, and the
interleaved N-qubit readout protocol.

Conventions
-----------
Conductance is returned in units of k_d * 2e^2/h with the middle-channel
tunneling amplitude normalized to one, i.e. the edge-channel amplitudes
enter only through the ratios w_i = Gamma_i/Gamma_3.  All energies (channel
Fermi energy, dot levels, self-energies, broadenings) must share one unit;
feeding them in units of the Fermi energy reproduces the standard reduced
plots directly.  The dimensionality prefactor is k_1 = 1 for 1D channels
and k_2 = pi n_e2 W^2 for 2D channels.

The six-term total is a sum of ratios of squares and is therefore
non-negative for any admissible input.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import DomainError, InconsistentMeasurementError

__all__ = [
    "SelfEnergies",
    "ChannelDotSystem",
    "ResonanceTerms",
    "resonance_terms",
    "resonant_kernel",
    "middle_channel_conductance",
    "full_conductance",
    "conductance_map",
    "SpinConfig",
    "ReadoutSystem",
    "readout_signature",
    "interleaved_readout",
    "infer_spins",
]


@dataclass(frozen=True)
class SelfEnergies:
    """Principal-value level shifts s_ij of channel i evaluated at channel-j
    energies; all nine default to zero (flat band probed at its center)."""

    s11: float = 0.0
    s13: float = 0.0
    s15: float = 0.0
    s31: float = 0.0
    s33: float = 0.0
    s35: float = 0.0
    s51: float = 0.0
    s53: float = 0.0
    s55: float = 0.0


@dataclass(frozen=True)
class ChannelDotSystem:
    """Two dots (levels e_sl, e_sr) coupled to three channels at e_kf.

    gamma1/gamma3/gamma5 are the channel broadenings (> 0); n_e2 and w feed
    the 2D dimensionality prefactor k_2 = pi n_e2 w^2.
    """

    e_kf: float
    e_sl: float
    e_sr: float
    gamma1: float
    gamma3: float
    gamma5: float
    s: SelfEnergies = field(default_factory=SelfEnergies)
    dimensionality: int = 1
    n_e2: float | None = None
    w: float | None = None

    def __post_init__(self):
        if min(self.gamma1, self.gamma3, self.gamma5) <= 0:
            raise DomainError("broadenings Gamma_i must be > 0")
        if self.dimensionality not in (1, 2):
            raise DomainError("dimensionality must be 1 or 2")
        if self.dimensionality == 2 and (self.n_e2 is None or self.w is None):
            raise DomainError("2D systems need n_e2 (nm^-2) and w (nm) for k_2")

    @property
    def k_d(self) -> float:
        if self.dimensionality == 1:
            return 1.0
        return math.pi * self.n_e2 * self.w * self.w


@dataclass(frozen=True)
class ResonanceTerms:
    e1: float
    e2: float
    e3: float
    e4: float
    e5: float
    e6: float


def resonance_terms(sys: ChannelDotSystem,
                    e_sl=None, e_sr=None) -> ResonanceTerms:
    """Detuning combinations entering the conductance denominators.

    e1..e3 detune the left dot against channels 1/3/5, e4..e6 the right dot,
    each shifted by the corresponding pair of self-energies.  e_sl/e_sr may
    be arrays to evaluate a whole level grid at once.
    """
    s = sys.s
    esl = sys.e_sl if e_sl is None else e_sl
    esr = sys.e_sr if e_sr is None else e_sr
    ekf = sys.e_kf
    return ResonanceTerms(
        e1=ekf - esl - s.s11 - s.s31,
        e2=ekf - esl - s.s13 - s.s33,
        e3=ekf - esl - s.s15 - s.s35,
        e4=ekf - esr - s.s51 - s.s31,
        e5=ekf - esr - s.s53 - s.s33,
        e6=ekf - esr - s.s55 - s.s35,
    )


def resonant_kernel(delta, split, s33=0.0, gamma3=0.0):
    """Single-channel conductance kernel in reduced variables,

        4 (D^2 + d^2)^2 / [(D^2 - 2 s33 D - d^2)^2 + 4 D^2 Gamma3^2]^2,

    where D is the mean detuning of the two dot levels from the channel
    Fermi energy and d is half their splitting.  For d = 0 it collapses to
    the resonant-tunneling form 4/[(D - 2 s33)^2 + 4 Gamma3^2]^2, and for
    D << d it approaches 4/d^4.
    """
    delta = np.asarray(delta, dtype=float)
    split = np.asarray(split, dtype=float)
    num = 4.0 * (delta * delta + split * split) ** 2
    den = (delta * delta - 2.0 * s33 * delta - split * split) ** 2 \
        + 4.0 * delta * delta * gamma3 * gamma3
    _guard_denominator(den)
    out = num / (den * den)
    return float(out) if out.ndim == 0 else out


def _guard_denominator(den):
    if np.any(den == 0.0):
        raise DomainError("on-resonance pole: broadenings inconsistent "
                          "(zero denominator requires a vanishing Gamma)")


def middle_channel_conductance(sys: ChannelDotSystem, e_sl=None, e_sr=None):
    """Middle-channel conductance in k_d*2e^2/h units.

    Evaluates the reduced kernel at D = (2 E_kF - E_SL - E_SR - s11 - s55)/2
    and d = (E_SL - E_SR)/2; with mirror-symmetric edge self-energies
    (s13 = s11, s53 = s55) this equals the middle term of the full six-term
    expression identically.
    """
    esl = sys.e_sl if e_sl is None else np.asarray(e_sl, dtype=float)
    esr = sys.e_sr if e_sr is None else np.asarray(e_sr, dtype=float)
    delta = (2.0 * sys.e_kf - esl - esr - sys.s.s11 - sys.s.s55) / 2.0
    split = (esl - esr) / 2.0
    return sys.k_d * resonant_kernel(delta, split, sys.s.s33, sys.gamma3)


def full_conductance(sys: ChannelDotSystem, e_sl=None, e_sr=None):
    """Total conductance of the three channels in k_d*2e^2/h units.

    Three direct terms and three cross terms; the edge amplitudes are
    carried as w_i = Gamma_i/Gamma_3 relative to the middle channel.
    """
    t = resonance_terms(sys, e_sl, e_sr)
    s = sys.s
    g1, g3, g5 = sys.gamma1, sys.gamma3, sys.gamma5
    w1 = g1 / g3
    w5 = g5 / g3

    d1 = (t.e1 * t.e4 - s.s31 ** 2) ** 2 + t.e4 ** 2 * g1 ** 2
    d3 = (t.e2 * t.e5 - s.s33 ** 2) ** 2 + g3 ** 2 * (t.e2 + t.e5 + 2.0 * s.s33) ** 2
    d5 = (t.e3 * t.e6 - s.s35 ** 2) ** 2 + t.e3 ** 2 * g5 ** 2
    for d in (d1, d3, d5):
        _guard_denominator(np.asarray(d))

    a1 = (t.e4 ** 2 + s.s31 ** 2) ** 2 / (d1 * d1)
    a5 = (t.e3 ** 2 + s.s35 ** 2) ** 2 / (d5 * d5)
    a3 = ((t.e2 + s.s33) ** 2 + (t.e5 + s.s33) ** 2) ** 2 / (d3 * d3)
    c13 = (t.e4 * (t.e2 + s.s33) + s.s31 * (t.e5 + s.s33)) ** 2 / (d1 * d3)
    c15 = (s.s35 * t.e4 + s.s31 * t.e3) ** 2 / (d1 * d5)
    c35 = (s.s35 * (t.e2 + s.s33) + t.e3 * (t.e5 + s.s33)) ** 2 / (d3 * d5)

    total = (w1 * w1 * a1 + w5 * w5 * a5 + a3
             + 2.0 * w1 * c13 + 2.0 * w1 * w5 * c15 + 2.0 * w5 * c35)
    out = sys.k_d * total
    return float(out) if np.ndim(out) == 0 else out


def conductance_map(sys: ChannelDotSystem, e_sl_grid, e_sr_grid,
                    threads: int | None = None) -> np.ndarray:
    """Row-major conductance matrix g[i, j] = g(e_sl_grid[i], e_sr_grid[j]).

    Grid points are independent; with threads > 1 the rows are evaluated in
    blocks on a thread pool and assembled in deterministic row order.
    """
    esl = np.asarray(e_sl_grid, dtype=float)
    esr = np.asarray(e_sr_grid, dtype=float)
    if esl.ndim != 1 or esr.ndim != 1 or esl.size < 1 or esr.size < 1:
        raise DomainError("level grids must be non-empty 1D arrays")
    if not (np.all(np.isfinite(esl)) and np.all(np.isfinite(esr))):
        raise DomainError("level grids must be finite")

    if threads is None:
        threads = _env_threads()
    ll = esl[:, None]
    rr = esr[None, :]
    if threads <= 1 or esl.size < 2 * threads:
        return full_conductance(sys, ll, rr)

    blocks = np.array_split(np.arange(esl.size), threads)
    out = np.empty((esl.size, esr.size), dtype=float)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [(idx, pool.submit(full_conductance, sys, ll[idx], rr))
                   for idx in blocks if idx.size]
        for idx, fut in futures:
            out[idx] = fut.result()
    return out


def _env_threads() -> int:
    raw = os.environ.get("FINQSIM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ----------------------------------------------------------------------
# Spin readout
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpinConfig:
    """N-dot spin configuration with the level convention
    E_S(down) = E_S(up) - delta_z."""

    spins: tuple[int, ...]       # +1 (up) / -1 (down) per dot
    e_s_up: float
    delta_z: float

    def __post_init__(self):
        if len(self.spins) < 1:
            raise DomainError("need at least one dot")
        if any(s not in (1, -1) for s in self.spins):
            raise DomainError("spins must be +1 or -1")
        if self.delta_z < 0:
            raise DomainError("delta_z must be >= 0")

    def level(self, i: int) -> float:
        return self.e_s_up if self.spins[i] == 1 else self.e_s_up - self.delta_z


@dataclass(frozen=True)
class ReadoutSystem:
    """Per-channel evaluation parameters for the N-dot/(N+1)-channel chain."""

    e_kf: float
    gamma_interior: float
    gamma_edge: float
    s33: float = 0.0
    s_edge: float = 0.0    # edge-channel self-energy shift (s11 analog)
    k_d: float = 1.0


def _interior_g(rs: ReadoutSystem, e_left: float, e_right: float) -> float:
    delta = (2.0 * rs.e_kf - e_left - e_right - 2.0 * rs.s_edge) / 2.0
    split = (e_left - e_right) / 2.0
    return rs.k_d * resonant_kernel(delta, split, rs.s33, rs.gamma_interior)


def _edge_g(rs: ReadoutSystem, e_dot: float) -> float:
    # One-dot limit of the edge term with the cross self-energy removed:
    # an amplitude-normalized squared Lorentzian in the dot detuning.
    e = rs.e_kf - e_dot - rs.s_edge
    return rs.k_d / (e * e + rs.gamma_edge ** 2) ** 2


def _channel_g(rs: ReadoutSystem, config: SpinConfig, channel: int) -> float:
    n = len(config.spins)
    if channel == 0:
        return _edge_g(rs, config.level(0))
    if channel == n:
        return _edge_g(rs, config.level(n - 1))
    return _interior_g(rs, config.level(channel - 1), config.level(channel))


@dataclass(frozen=True)
class ReadoutSignature:
    g: np.ndarray           # conductance per channel, length N+1
    difference: np.ndarray  # g minus the equal-spin reference per channel


def readout_signature(config: SpinConfig, rs: ReadoutSystem) -> ReadoutSignature:
    """Per-channel conductances and their deviation from the equal-spin
    reference.

    Interior channel i sees dots (i-1, i); its reference sets both adjacent
    levels to the left dot's level, so any equal-spin pair gives exactly
    zero difference.  Edge channels see one dot and are referenced to the
    spin-up level.
    """
    n = len(config.spins)
    g = np.empty(n + 1)
    diff = np.empty(n + 1)
    for c in range(n + 1):
        g[c] = _channel_g(rs, config, c)
        if c == 0:
            ref = _edge_g(rs, config.e_s_up)
        elif c == n:
            ref = _edge_g(rs, config.e_s_up)
        else:
            left = config.level(c - 1)
            ref = _interior_g(rs, left, left)
        diff[c] = g[c] - ref
    return ReadoutSignature(g=g, difference=diff)


def interleaved_readout(config: SpinConfig, rs: ReadoutSystem):
    """Simulate the two interleaved switch patterns.

    Pattern A drives the even channels with odd neighbors off, pattern B the
    odd channels; off channels are reported as NaN.  Together the two
    patterns cover every channel exactly once.
    """
    full = readout_signature(config, rs).g
    n_ch = full.size
    even = np.where(np.arange(n_ch) % 2 == 0, full, np.nan)
    odd = np.where(np.arange(n_ch) % 2 == 1, full, np.nan)
    return even, odd


def infer_spins(measured_even: np.ndarray, measured_odd: np.ndarray,
                rs: ReadoutSystem, e_s_up: float, delta_z: float,
                rtol: float = 1e-9) -> tuple[int, ...]:
    """Recover the unique spin assignment consistent with both interleave
    patterns by exhaustive comparison against the model predictions.

    Raises InconsistentMeasurementError (listing the conflicting channels)
    when no assignment or more than one assignment matches within rtol.
    """
    even = np.asarray(measured_even, dtype=float)
    odd = np.asarray(measured_odd, dtype=float)
    if even.shape != odd.shape or even.ndim != 1:
        raise DomainError("pattern arrays must be 1D and equally sized")
    n_ch = even.size
    n = n_ch - 1
    if n < 1:
        raise DomainError("need at least one dot (two channels)")
    if n > 16:
        raise DomainError("exhaustive inference is capped at 16 dots")

    merged = np.where(np.isnan(even), odd, even)
    if np.any(np.isnan(merged)):
        raise DomainError("patterns do not cover every channel")

    scale = np.maximum(np.abs(merged), 1e-300)
    matches = []
    best_mismatch = None
    best_channels = ()
    for code in range(2 ** n):
        spins = tuple(1 if (code >> i) & 1 else -1 for i in range(n))
        config = SpinConfig(spins=spins, e_s_up=e_s_up, delta_z=delta_z)
        pred = readout_signature(config, rs).g
        rel = np.abs(pred - merged) / scale
        if np.all(rel <= rtol):
            matches.append(spins)
        else:
            worst = float(np.max(rel))
            if best_mismatch is None or worst < best_mismatch:
                best_mismatch = worst
                best_channels = tuple(int(c) for c in np.nonzero(rel > rtol)[0])
    if len(matches) == 1:
        return matches[0]
    if not matches:
        raise InconsistentMeasurementError(
            f"no spin assignment matches the measurements (closest config "
            f"disagrees on channels {best_channels})", channels=best_channels)
    raise InconsistentMeasurementError(
        f"{len(matches)} spin assignments match; measurement does not resolve "
        "the configuration", channels=())
