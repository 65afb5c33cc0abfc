"""Brute-force eigenvalue oracle for the two-dot/three-channel tunneling
model: discretize the flat bands, diagonalize the dense Hermitian matrix,
and compare eigenvector weights against the closed-form scattering-state
coefficients and conductance denominators.

Discretization: each channel j in {1, 3, 5} carries N_k uniformly spaced
modes E = -D + (k + phi_j) dE with dE = 2D/N_k and a channel-specific
offset phi_j in (0, 1); distinct offsets remove cross-channel degeneracies
so every eigenstate is attributable to one channel.  Couplings are
k-independent: channel 1 to dot L, channel 5 to dot R, channel 3 to both.

For a flat band the per-channel density of states rho = N_k/(2D) is exact,
the principal-value level shift is s_j(E) = V_j^2 rho ln((D+E)/(D-E)), and
the resonance half-width entering the closed-form denominators is
Gamma_j = pi V_j^2 rho (the fitted spectral FWHM is 2 pi V_j^2 rho).

Two comparison routes are scored:

* basis-independent dot spectral totals (left weight, right weight, signed
  cross weight) against the pure-continuum closed forms -- these converge
  at first order in the level spacing;
* the channel-resolved coefficients against the closed forms evaluated
  per eigenstate, with the cross-channel level shifts taken as the exact
  discrete sums of the model (at any fixed grid offset the discrete
  cross-channel shift differs from the principal-value integral by a
  bounded multiple of the width, which would otherwise masquerade as a
  non-converging coefficient error).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
import math

import numpy as np

from .errors import DomainError

__all__ = [
    "DiscretizedHamiltonian",
    "EigenSolution",
    "diagonalize",
    "completeness_check",
    "CoefficientReport",
    "coefficient_check",
    "denominator_identity_error",
    "fit_dot_width",
    "convergence_study",
]

MAX_DIM = 5000
DEFAULT_OFFSETS = (0.2, 0.35, 0.65)  # distinct, away from 0 and 1

# Dominant-amplitude coefficients with clean continuum limits; the
# complementary ones (y1, x3 and their cross products) are suppressed by the
# principal-value shift and pick up on-shell cross-channel weight that the
# closed forms regularize away, so they are reported but not scored.
CHECKED_KEYS = ("x1_sq", "x2_sq", "y2_sq", "y3_sq", "x2_y2")
TOTAL_KEYS = ("w_left", "w_right", "w_cross")


@dataclass(frozen=True)
class DiscretizedHamiltonian:
    """Two dot levels (e2, e4) plus three discretized channels of n_k modes."""

    half_bandwidth: float
    n_k: int
    e2: float
    e4: float
    v1: float
    v3: float
    v5: float
    offsets: tuple[float, float, float] = DEFAULT_OFFSETS

    def __post_init__(self):
        if self.half_bandwidth <= 0:
            raise DomainError("half bandwidth must be > 0")
        if self.n_k < 10:
            raise DomainError("need at least 10 modes per channel")
        if self.dimension > MAX_DIM:
            raise DomainError(f"matrix dimension {self.dimension} exceeds the "
                              f"desk-scale cap {MAX_DIM}")
        if any(not (0.0 < p < 1.0) for p in self.offsets):
            raise DomainError("grid offsets must lie in (0, 1)")

    @property
    def dimension(self) -> int:
        return 3 * self.n_k + 2

    @property
    def level_spacing(self) -> float:
        return 2.0 * self.half_bandwidth / self.n_k

    @property
    def rho(self) -> float:
        """Per-channel density of states, 1/energy."""
        return self.n_k / (2.0 * self.half_bandwidth)

    @property
    def couplings(self) -> tuple[float, float, float]:
        return (self.v1, self.v3, self.v5)

    def grid(self, channel: int) -> np.ndarray:
        """Mode energies of channel index 0, 1, 2 (= physical lines 1, 3, 5)."""
        de = self.level_spacing
        phi = self.offsets[channel]
        return -self.half_bandwidth + (np.arange(self.n_k) + phi) * de

    def matrix(self) -> np.ndarray:
        n = self.n_k
        dim = self.dimension
        h = np.zeros((dim, dim))
        h[0, 0] = self.e2
        h[1, 1] = self.e4
        for c, v, dots in ((0, self.v1, (0,)), (1, self.v3, (0, 1)),
                           (2, self.v5, (1,))):
            idx = slice(2 + c * n, 2 + (c + 1) * n)
            h[idx, idx] = np.diag(self.grid(c))
            for d in dots:
                h[d, idx] = v
                h[idx, d] = v
        return h

    # --- closed-form ingredients -----------------------------------------

    def shift(self, channel: int, e) -> np.ndarray:
        """Continuum principal-value level shift s_j(E) of channel j."""
        v = self.couplings[channel]
        d = self.half_bandwidth
        e = np.asarray(e, dtype=float)
        return v * v * self.rho * np.log((d + e) / (d - e))

    def discrete_shift(self, channel: int, e) -> np.ndarray:
        """Exact finite-grid level shift sum_k V^2/(E - E_k) of channel j."""
        v = self.couplings[channel]
        e = np.atleast_1d(np.asarray(e, dtype=float))
        out = v * v * np.sum(1.0 / (e[:, None] - self.grid(channel)[None, :]),
                             axis=1)
        return out

    def half_width(self, channel: int) -> float:
        """Resonance half-width pi V^2 rho of channel j."""
        v = self.couplings[channel]
        return math.pi * v * v * self.rho


@dataclass(frozen=True)
class EigenSolution:
    h: DiscretizedHamiltonian
    energies: np.ndarray      # ascending
    vectors: np.ndarray       # columns; rows 0/1 are the dot amplitudes
    channel_of: np.ndarray    # dominant channel index 0/1/2 per eigenstate


def diagonalize(h: DiscretizedHamiltonian) -> EigenSolution:
    """Full dense symmetric eigendecomposition with channel attribution."""
    mat = h.matrix()
    energies, vectors = np.linalg.eigh(mat)
    n = h.n_k
    weights = np.empty((3, h.dimension))
    for c in range(3):
        idx = slice(2 + c * n, 2 + (c + 1) * n)
        weights[c] = np.sum(vectors[idx, :] ** 2, axis=0)
    return EigenSolution(h=h, energies=energies, vectors=vectors,
                         channel_of=np.argmax(weights, axis=0))


def completeness_check(sol: EigenSolution) -> float:
    """Max deviation of the dot-operator completeness identities.

    The two dot rows of the eigenvector matrix must have unit norm and be
    orthogonal; exact unitarity makes all three deviations ~1e-15.
    """
    row2 = sol.vectors[0]
    row4 = sol.vectors[1]
    return max(abs(np.sum(row2 * row2) - 1.0),
               abs(np.sum(row4 * row4) - 1.0),
               abs(np.sum(row2 * row4)))


# ----------------------------------------------------------------------
# Closed-form coefficient densities
# ----------------------------------------------------------------------

def _channel_coefficients(h: DiscretizedHamiltonian, channel: int, e,
                          cross_shifts=None):
    """Closed-form (x^2, y^2, x*y) of one channel's scattering states at
    energies e; x is the left-dot amplitude, y the right-dot amplitude.

    cross_shifts optionally supplies the two other channels' level shifts
    evaluated at e (defaults to the continuum forms).
    """
    e = np.atleast_1d(np.asarray(e, dtype=float))
    if cross_shifts is None:
        s = [h.shift(l, e) for l in range(3)]
    else:
        s = list(cross_shifts)
        s[channel] = h.shift(channel, e)
    s1, s3, s5 = s
    v = h.couplings[channel]
    g = h.half_width(channel)
    el = e - h.e2 - s1 - s3
    er = e - h.e4 - s5 - s3
    if channel == 0:
        d = (el * er - s3 * s3) ** 2 + er * er * g * g
        return v * v * er * er / d, v * v * s3 * s3 / d, v * v * s3 * er / d
    if channel == 1:
        d = (el * er - s3 * s3) ** 2 + g * g * (el + er + 2.0 * s3) ** 2
        return (v * v * (er + s3) ** 2 / d, v * v * (el + s3) ** 2 / d,
                v * v * (el + s3) * (er + s3) / d)
    d = (el * er - s3 * s3) ** 2 + el * el * g * g
    return v * v * s3 * s3 / d, v * v * el * el / d, v * v * s3 * el / d


_CHANNEL_KEYS = {
    0: ("x1_sq", "y1_sq", "x1_y1"),
    1: ("x2_sq", "y2_sq", "x2_y2"),
    2: ("x3_sq", "y3_sq", "x3_y3"),
}


def _gauss_window(a: float, b: float, order: int = 200):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * nodes, half * weights


@dataclass(frozen=True)
class CoefficientReport:
    """Window-integrated numeric vs analytic weights and their errors.

    relative_error carries the channel-resolved rows (CHECKED_KEYS are the
    scored ones), combination_error the conductance-term combinations,
    total_error the basis-independent dot spectral totals, and
    denominator_error the 2x2 determinant identity at window center.
    max_total_error aggregates the totals (first-order convergent);
    max_channel_error aggregates the scored channel rows and combinations.
    """

    window: tuple[float, float]
    numeric: dict
    analytic: dict
    relative_error: dict
    combination_error: dict
    total_error: dict
    denominator_error: float
    max_total_error: float
    max_channel_error: float


def _relerr(num: float, ana: float) -> float:
    return abs(num - ana) / max(abs(ana), 1e-300)


def coefficient_check(sol: EigenSolution, window: tuple[float, float]) -> CoefficientReport:
    """Compare window-integrated eigenvector weights with the closed forms.

    The window must lie inside the band and away from the dot resonances;
    the totals converge linearly in 1/n_k when the window edges are
    commensurate with the level spacing.
    """
    h = sol.h
    a, b = window
    if not (-h.half_bandwidth < a < b < h.half_bandwidth):
        raise DomainError("window must lie strictly inside the band")

    numeric = {}
    analytic = {}
    relerr = {}
    inside = (sol.energies >= a) & (sol.energies < b)
    for c in range(3):
        sel = inside & (sol.channel_of == c)
        lam = sol.energies[sel]
        kx, ky, kxy = _CHANNEL_KEYS[c]
        numeric[kx] = float(np.sum(sol.vectors[0, sel] ** 2))
        numeric[ky] = float(np.sum(sol.vectors[1, sel] ** 2))
        numeric[kxy] = float(np.sum(sol.vectors[0, sel] * sol.vectors[1, sel]))
        cross = [h.discrete_shift(l, lam) for l in range(3)]
        ax, ay, axy = _channel_coefficients(h, c, lam, cross_shifts=cross)
        analytic[kx] = float(np.sum(ax))
        analytic[ky] = float(np.sum(ay))
        analytic[kxy] = float(np.sum(axy))
        for key in (kx, ky, kxy):
            relerr[key] = _relerr(numeric[key], analytic[key])

    # Basis-independent totals vs the pure-continuum closed forms.
    e_q, w_q = _gauss_window(a, b)
    tot_ana = {k: 0.0 for k in TOTAL_KEYS}
    for c in range(3):
        ax, ay, axy = _channel_coefficients(h, c, e_q)
        tot_ana["w_left"] += float(np.sum(w_q * h.rho * ax))
        tot_ana["w_right"] += float(np.sum(w_q * h.rho * ay))
        tot_ana["w_cross"] += float(np.sum(w_q * h.rho * axy))
    tot_num = {
        "w_left": float(np.sum(sol.vectors[0, inside] ** 2)),
        "w_right": float(np.sum(sol.vectors[1, inside] ** 2)),
        "w_cross": float(np.sum(sol.vectors[0, inside] * sol.vectors[1, inside])),
    }
    total_error = {k: _relerr(tot_num[k], tot_ana[k]) for k in TOTAL_KEYS}
    numeric.update({k: tot_num[k] for k in TOTAL_KEYS})
    analytic.update({k: tot_ana[k] for k in TOTAL_KEYS})

    # Combination moduli assembled from the window averages on both sides;
    # they feed the conductance direct (a_1, a_5) and cross (c_13, c_35)
    # terms.  The 1-5 combination is reported but unscored: its closed form
    # is built entirely from the shift-suppressed amplitudes and vanishes
    # identically at band center.
    width = b - a

    def combo(d, cj, cl):
        kxj, kyj, kxyj = _CHANNEL_KEYS[cj]
        kxl, kyl, kxyl = _CHANNEL_KEYS[cl]
        return (d[kxj] * d[kxl] + 2.0 * d[kxyj] * d[kxyl] + d[kyj] * d[kyl])

    davg_num = {k: v / width for k, v in numeric.items()}
    davg_ana = {k: v / width for k, v in analytic.items()}
    combo_err = {}
    for (cj, cl), name in (((0, 1), "combo_13"), ((0, 2), "combo_15"),
                           ((1, 2), "combo_35")):
        combo_err[name] = _relerr(combo(davg_num, cj, cl), combo(davg_ana, cj, cl))
    for c, name in ((0, "a_1"), (2, "a_5")):
        kx, ky, _ = _CHANNEL_KEYS[c]
        combo_err[name] = _relerr(davg_num[kx] + davg_num[ky],
                                  davg_ana[kx] + davg_ana[ky])

    den_err = denominator_identity_error(h, 0.5 * (a + b))
    scored_combos = ("combo_13", "combo_35", "a_1", "a_5")
    return CoefficientReport(
        window=(a, b), numeric=numeric, analytic=analytic,
        relative_error=relerr, combination_error=combo_err,
        total_error=total_error, denominator_error=den_err,
        max_total_error=max(total_error.values()),
        max_channel_error=max([relerr[k] for k in CHECKED_KEYS]
                              + [combo_err[k] for k in scored_combos]),
    )


def denominator_identity_error(h: DiscretizedHamiltonian, e: float) -> float:
    """Check the closed-form denominators against 2x2 dot-block complex
    determinants |det(E - H_dd - Sigma(E))|^2 with Sigma = s - i Gamma.

    Returns the worst relative deviation over the three channel forms.
    """
    s1 = float(h.shift(0, e))
    s3 = float(h.shift(1, e))
    s5 = float(h.shift(2, e))
    g1, g3, g5 = h.half_width(0), h.half_width(1), h.half_width(2)
    el = e - h.e2 - s1 - s3
    er = e - h.e4 - s5 - s3

    worst = 0.0
    pairs = (
        ((el * er - s3 * s3) ** 2 + er * er * g1 * g1,
         np.array([[el - 1j * g1, s3], [s3, er]])),
        ((el * er - s3 * s3) ** 2 + g3 * g3 * (el + er + 2.0 * s3) ** 2,
         np.array([[el - 1j * g3, -s3 - 1j * g3], [-s3 - 1j * g3, er - 1j * g3]])),
        ((el * er - s3 * s3) ** 2 + el * el * g5 * g5,
         np.array([[el, s3], [s3, er - 1j * g5]])),
    )
    for direct, mat in pairs:
        det = np.linalg.det(mat)
        worst = max(worst, abs(abs(det) ** 2 - direct) / abs(direct))
    return worst


def fit_dot_width(sol: EigenSolution, dot: int = 0, channel: int = 0) -> float:
    """Extract the spectral FWHM of a dot resonance from the per-level dot
    weights via linear interpolation of the half-maximum crossings.

    Only the eigenstates attributed to the resonant channel are used (other
    channels interleave with near-zero dot weight).  Intended for a
    single-dot/single-channel configuration, where the closed form predicts
    FWHM = 2 pi V^2 rho.
    """
    sel = sol.channel_of == channel
    w = sol.vectors[dot, sel] ** 2
    e = sol.energies[sel]
    peak = int(np.argmax(w))
    half = w[peak] / 2.0
    lo = peak
    while lo > 0 and w[lo] > half:
        lo -= 1
    hi = peak
    while hi < w.size - 1 and w[hi] > half:
        hi += 1
    if lo == 0 or hi == w.size - 1:
        raise DomainError("resonance not resolved inside the band")

    def crossing(i0, i1):
        w0, w1 = w[i0], w[i1]
        return e[i0] + (half - w0) * (e[i1] - e[i0]) / (w1 - w0)

    return crossing(hi - 1, hi) - crossing(lo, lo + 1)


def convergence_study(h: DiscretizedHamiltonian, window: tuple[float, float],
                      n_ks=(100, 200, 400)) -> dict[int, CoefficientReport]:
    """Coefficient reports for a ladder of mode counts (independent runs).

    The continuum model is held fixed across the ladder: the couplings are
    rescaled as v * sqrt(n_k_base/n_k) so the widths pi v^2 rho and shifts
    are identical at every rung and only the discretization error varies.
    """
    out = {}
    for n_k in n_ks:
        scale = math.sqrt(h.n_k / n_k)
        rung = replace(h, n_k=n_k, v1=h.v1 * scale, v3=h.v3 * scale,
                       v5=h.v5 * scale)
        out[n_k] = coefficient_check(diagonalize(rung), window)
    return out
