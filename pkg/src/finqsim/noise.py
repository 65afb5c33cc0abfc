"""Shot and thermal noise of the readout channel, the induced conductance
fluctuation, signal-to-noise ratio, and the Gaussian-overlap measurement
fidelity.

Conductances are handled in the dimensionless g' = g * R_K form (g in
siemens); the helper g_prime_from_quantum converts from k_d * 2e^2/h units.
Spot values: at V_D = 0.5 V the shot spectral density is 6.21e-24 * g'
A^2/Hz, and with the bandwidth in units of 1e12 Hz the fluctuations are
dg_q' = 0.0909 sqrt(g' df/V_D) and dg_T' = 3.78e-4 sqrt(g' df)/V_D at
T = 100 mK.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

from scipy import integrate

from .constants import CONSTANTS
from .errors import DomainError

K_B_JOULE = CONSTANTS.k_B * CONSTANTS.e_charge  # J/K


@dataclass(frozen=True)
class NoiseEnv:
    """Bias, temperature, bandwidth and the operating conductance.

    g_prime is the R_K-normalized conductance setting the noise level; it
    may be left None and supplied per call.
    """

    v_d: float
    temperature: float
    delta_f: float = 1e12
    g_prime: float | None = None

    def __post_init__(self):
        if self.v_d <= 0:
            raise DomainError("drain bias must be > 0")
        if self.delta_f <= 0:
            raise DomainError("bandwidth must be > 0")
        if self.temperature < 0:
            raise DomainError("temperature must be >= 0")
        if self.g_prime is not None and self.g_prime < 0:
            raise DomainError("conductance must be >= 0")


def g_prime_from_quantum(g_over_2e2h: float, k_d: float = 1.0) -> float:
    """Convert conductance in k_d*2e^2/h units to the R_K-normalized g'."""
    return 2.0 * k_d * g_over_2e2h


def _resolve_g(env: NoiseEnv, g_prime):
    g = env.g_prime if g_prime is None else g_prime
    if g is None:
        raise DomainError("no operating conductance supplied")
    if g < 0:
        raise DomainError("conductance must be >= 0")
    return g


def shot_noise(env: NoiseEnv, g_prime: float | None = None):
    """Shot-noise spectral density S_q = 2 q g V_D (A^2/Hz) and the induced
    conductance fluctuation dg_q' = sqrt(2 q R_K g' df / V_D)."""
    g = _resolve_g(env, g_prime)
    q = CONSTANTS.e_charge
    s_q = 2.0 * q * (g / CONSTANTS.R_K) * env.v_d
    dg = math.sqrt(2.0 * q * CONSTANTS.R_K * g * env.delta_f / env.v_d)
    return s_q, dg


def thermal_noise(env: NoiseEnv, g_prime: float | None = None):
    """Thermal density S_T = 4 k_B T g (A^2/Hz) and
    dg_T' = sqrt(4 k_B T R_K g' df) / V_D."""
    g = _resolve_g(env, g_prime)
    s_t = 4.0 * K_B_JOULE * env.temperature * (g / CONSTANTS.R_K)
    dg = math.sqrt(4.0 * K_B_JOULE * env.temperature * CONSTANTS.R_K * g
                   * env.delta_f) / env.v_d
    return s_t, dg


def threshold_g_prime(env: NoiseEnv) -> float:
    """Smallest g' resolvable over its own shot noise: g > dg_q reduces to
    g > 2 q df / V_D, i.e. g' > 2 q R_K df / V_D."""
    return 2.0 * CONSTANTS.e_charge * CONSTANTS.R_K * env.delta_f / env.v_d


def measurement_fidelity(g_meas: float, g_ref: float, sigma: float,
                         sigma_ref: float | None = None) -> float:
    """Overlap-difference fidelity of two Gaussian conductance readings.

    For equal widths this is erf(|g_meas - g_ref| / (2 sqrt(2) sigma)); the
    unequal-width generalization falls back to numeric quadrature.
    """
    if sigma <= 0 or (sigma_ref is not None and sigma_ref <= 0):
        raise DomainError("sigma must be > 0")
    if sigma_ref is None or sigma_ref == sigma:
        return math.erf(abs(g_meas - g_ref) / (2.0 * math.sqrt(2.0) * sigma))
    return measurement_fidelity_quadrature(g_meas, g_ref, sigma, sigma_ref)


def measurement_fidelity_quadrature(g_meas: float, g_ref: float, sigma: float,
                                    sigma_ref: float | None = None) -> float:
    """Direct adaptive quadrature of integral max(P_meas - P_ref, 0) dg."""
    if sigma <= 0:
        raise DomainError("sigma must be > 0")
    s2 = sigma if sigma_ref is None else sigma_ref
    if s2 <= 0:
        raise DomainError("sigma must be > 0")

    def gauss(g, mu, s):
        return math.exp(-0.5 * ((g - mu) / s) ** 2) / (math.sqrt(2.0 * math.pi) * s)

    def integrand(g):
        return max(gauss(g, g_meas, sigma) - gauss(g, g_ref, s2), 0.0)

    lo = min(g_meas - 12.0 * sigma, g_ref - 12.0 * s2)
    hi = max(g_meas + 12.0 * sigma, g_ref + 12.0 * s2)
    # break at the means and midpoint so QUADPACK sees the kink
    pts = sorted({g_meas, g_ref, 0.5 * (g_meas + g_ref)})
    val, _ = integrate.quad(integrand, lo, hi, points=pts,
                            epsabs=1e-13, epsrel=1e-12, limit=400)
    return val


def snr(g_meas: float, g_ref: float, env: NoiseEnv) -> float:
    """Signal-to-noise ratio |g_meas - g_ref| / dg_q, both sides in g'.

    The shot-noise level is evaluated at env.g_prime when set, otherwise at
    the measured conductance.
    """
    g_noise = env.g_prime if env.g_prime is not None else g_meas
    _, dg = shot_noise(env, g_noise)
    return abs(g_meas - g_ref) / dg
