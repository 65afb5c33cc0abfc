"""Exchange coupling chain: s-d coupling strength, carrier-mediated RKKY
interaction, Kondo temperature, decoherence rate, coherence/operation time
budget, and the density-distance ratio maps.

Dimensionality conventions (d = 1, 2) are locked to the printed reduced
forms so the definitional identities hold exactly:

    k_F     = pi n_e1            (1D)   sqrt(2 pi n_e2)      (2D)
    rho_F   = m*/(pi hbar^2 k_F) (1D)   m*/(pi hbar^2)       (2D)
    J_sd    = hbar k_F z_1 / m*  (1D)   z_2 hbar^2 / m*      (2D)
    J_d     = (z_d^2 E_F/pi) xi_d F_d'(k_F W), xi_1 = 1, xi_2 = 1/(4 pi^2)
    gamma_d = 2 z_1^2 k_B T/pi   (1D)   z_2^2 k_B T/(8 pi^2) (2D)
    T_d^K   = sqrt(Gamma U)/2 exp(-pi/z_d)

with z_d = Gamma U/[(U - E_m) E_m] and J_sd * pi * rho_F = z_d exactly.
rho_F is a per-length (1D) or per-area (2D) density of states; the total
density of states seen by a dot multiplies rho_F by the channel extent
(the segment length W in 1D, the facing plate W*W in 2D by default),
which sets the default tunneling scale E_m = 2 V_tun via
Gamma = 2 pi rho_tot V_tun^2.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .constants import CONSTANTS, temperature_to_energy
from .errors import DomainError
from .special import f1_prime, f2_prime, g1_prime, g2_prime

__all__ = [
    "CouplingInput",
    "z_factor",
    "j_sd",
    "j_rkky",
    "kondo_temperature",
    "kondo_temperature_kelvin",
    "decoherence_rate",
    "OperationBudget",
    "operation_budget",
    "RegimeReport",
    "regime_check",
    "ratio_map",
]

XI = {1: 1.0, 2: 1.0 / (4.0 * math.pi ** 2)}
ETA = {1: 2.0, 2: 8.0 / math.pi}


@dataclass(frozen=True)
class CouplingInput:
    """Bundle feeding the coupling/decoherence formulas.

    gamma         tunneling broadening (eV)
    u             dot charging energy (eV)
    dimensionality 1 or 2
    n_ed          reduced carrier density, nm^-1 (1D) or nm^-2 (2D)
    w             dot separation = channel segment length (nm)
    temperature   K
    m_eff_ratio   m*/m0
    e_m           Fermi-to-level distance E_F - eps_0 (eV); None selects the
                  default policy E_m = 2 V_tun
    area_mode     2D dot-channel contact area: "plate" (facing plate w*w,
                  default) or "wraparound" (w*(w + 2 hfin), two side walls
                  plus the fin top)
    hfin          fin height for the wrap-around area (nm)
    """

    gamma: float
    u: float
    dimensionality: int
    n_ed: float
    w: float
    temperature: float
    m_eff_ratio: float = 0.2
    e_m: float | None = None
    area_mode: str = "plate"
    hfin: float = 30.0

    def __post_init__(self):
        if self.gamma <= 0 or self.u <= 0 or self.n_ed <= 0 or self.w <= 0:
            raise DomainError("gamma, u, n_ed and w must be > 0")
        if self.dimensionality not in (1, 2):
            raise DomainError("dimensionality must be 1 or 2")
        if self.temperature < 0:
            raise DomainError("temperature must be >= 0")
        if self.m_eff_ratio <= 0:
            raise DomainError("effective mass ratio must be > 0")
        if self.area_mode not in ("plate", "wraparound"):
            raise DomainError("area_mode must be 'plate' or 'wraparound'")

    # --- band quantities -------------------------------------------------

    @property
    def hbar2_over_m(self) -> float:
        """hbar^2/m* in eV nm^2."""
        return 2.0 * CONSTANTS.a02_ry / self.m_eff_ratio

    @property
    def k_f(self) -> float:
        if self.dimensionality == 1:
            return math.pi * self.n_ed
        return math.sqrt(2.0 * math.pi * self.n_ed)

    @property
    def fermi_energy(self) -> float:
        return 0.5 * self.hbar2_over_m * self.k_f ** 2

    @property
    def rho_f(self) -> float:
        """Per-length (1D, 1/(eV nm)) or per-area (2D, 1/(eV nm^2)) DOS."""
        if self.dimensionality == 1:
            return 1.0 / (math.pi * self.hbar2_over_m * self.k_f)
        return 1.0 / (math.pi * self.hbar2_over_m)

    @property
    def channel_extent(self) -> float:
        """Channel segment length (nm) or dot-channel contact area (nm^2)."""
        if self.dimensionality == 1:
            return self.w
        if self.area_mode == "plate":
            return self.w * self.w
        return self.w * (self.w + 2.0 * self.hfin)

    @property
    def rho_total(self) -> float:
        """Total DOS at the Fermi level seen by a dot, 1/eV."""
        return self.rho_f * self.channel_extent

    @property
    def v_tun(self) -> float:
        """Tunneling amplitude from Gamma = 2 pi rho_tot V_tun^2, eV."""
        return math.sqrt(self.gamma / (2.0 * math.pi * self.rho_total))

    @property
    def e_m_effective(self) -> float:
        return 2.0 * self.v_tun if self.e_m is None else self.e_m

    @property
    def gamma_max(self) -> float:
        """Validity ceiling pi rho_tot U^2 / 4 for the coupling expansion."""
        return math.pi * self.rho_total * self.u ** 2 / 4.0

    def range_function(self) -> float:
        x = self.k_f * self.w
        return f1_prime(x) if self.dimensionality == 1 else f2_prime(x)

    def relaxation_function(self) -> float:
        x = self.k_f * self.w
        return g1_prime(x) if self.dimensionality == 1 else g2_prime(x)


def z_factor(inp: CouplingInput) -> float:
    """Dimensionless coupling z = Gamma U / [(U - E_m) E_m]."""
    e_m = inp.e_m_effective
    if not (0.0 < e_m < inp.u):
        raise DomainError(f"E_m = {e_m:g} eV must lie strictly inside (0, U = {inp.u:g} eV)")
    return inp.gamma * inp.u / ((inp.u - e_m) * e_m)


def j_sd(inp: CouplingInput) -> float:
    """s-d exchange strength: hbar k_F z/m* (1D, eV nm) or z hbar^2/m* (2D, eV nm^2).

    Equals z/(pi rho_F) identically under this module's rho_F conventions.
    """
    z = z_factor(inp)
    if inp.dimensionality == 1:
        return inp.hbar2_over_m * inp.k_f * z
    return inp.hbar2_over_m * z


def j_rkky(inp: CouplingInput) -> float:
    """Carrier-mediated exchange J_d = (z^2 E_F/pi) xi_d F_d'(k_F W), eV (signed)."""
    z = z_factor(inp)
    return z * z * inp.fermi_energy / math.pi * XI[inp.dimensionality] \
        * inp.range_function()


def kondo_temperature(inp: CouplingInput) -> float:
    """Kondo scale sqrt(Gamma U)/2 * exp(-pi/z) as an energy in eV."""
    z = z_factor(inp)
    return 0.5 * math.sqrt(inp.gamma * inp.u) * math.exp(-math.pi / z)


def kondo_temperature_kelvin(inp: CouplingInput) -> float:
    return kondo_temperature(inp) / CONSTANTS.k_B


def decoherence_rate(inp: CouplingInput, use_range_function: bool = False) -> float:
    """Carrier-induced spin relaxation rate as an energy, eV.

    gamma_1 = 2 z^2 k_B T/pi, gamma_2 = z^2 k_B T/(8 pi^2); the worst case
    (flag off) drops the relaxation range factor G_d'(k_F W) <= 1.
    """
    z = z_factor(inp)
    kt = temperature_to_energy(inp.temperature)
    if inp.dimensionality == 1:
        rate = 2.0 * z * z * kt / math.pi
    else:
        rate = z * z * kt / (8.0 * math.pi ** 2)
    if use_range_function:
        rate *= inp.relaxation_function()
    return rate


@dataclass(frozen=True)
class OperationBudget:
    tau_op: float        # s, exchange-gate duration from J tau = pi hbar / 2
    tau_coh: float       # s, hbar / gamma
    ratio: float         # tau_coh / tau_op = 2|J|/(pi gamma), operations count
    j_rkky: float        # eV, signed coupling
    rate: float          # eV, worst-case decoherence rate


def operation_budget(inp: CouplingInput) -> OperationBudget:
    """Exchange-gate time, coherence time, and their ratio.

    The ratio obeys the closed form eta_d E_F |F_d'(k_F W)|/(2 pi k_B T)
    independently of Gamma, U and E_m.
    """
    j = j_rkky(inp)
    if j == 0.0:
        raise DomainError("coupling node: F_d'(k_F W) = 0; choose a different "
                          "separation W or density")
    rate = decoherence_rate(inp, use_range_function=False)
    tau_op = math.pi * CONSTANTS.hbar / (2.0 * abs(j))
    if rate == 0.0:
        return OperationBudget(tau_op=tau_op, tau_coh=math.inf, ratio=math.inf,
                               j_rkky=j, rate=rate)
    tau_coh = CONSTANTS.hbar / rate
    return OperationBudget(tau_op=tau_op, tau_coh=tau_coh,
                           ratio=2.0 * abs(j) / (math.pi * rate),
                           j_rkky=j, rate=rate)


def budget_ratio_closed_form(inp: CouplingInput) -> float:
    """eta_d E_F |F_d'(k_F W)| / (2 pi k_B T); the z-independent ratio."""
    kt = temperature_to_energy(inp.temperature)
    if kt == 0.0:
        return math.inf
    return ETA[inp.dimensionality] * inp.fermi_energy \
        * abs(inp.range_function()) / (2.0 * math.pi * kt)


@dataclass(frozen=True)
class RegimeReport:
    """Operating-regime diagnostics; every inequality is reported, none is fatal."""

    thermal_below_coupling: bool      # k_B T < |J|
    coupling_below_zeeman: bool       # |J| < 2 mu_B B_z
    zeeman_below_fermi: bool          # 2 mu_B B_z < E_F
    above_kondo: bool                 # |J| > T_K
    gamma_within_bound: bool          # 10 Gamma <= Gamma_max
    j_rkky: float
    kondo_scale: float
    zeeman: float
    thermal: float
    fermi: float
    gamma_max: float

    @property
    def all_pass(self) -> bool:
        return (self.thermal_below_coupling and self.coupling_below_zeeman
                and self.zeeman_below_fermi and self.above_kondo
                and self.gamma_within_bound)


def regime_check(inp: CouplingInput, b_z: float) -> RegimeReport:
    """Evaluate k_B T < |J| < 2 mu_B B_z < E_F, |J| > T_K, and the
    factor-10 margin against Gamma_max."""
    j = abs(j_rkky(inp))
    tk = kondo_temperature(inp)
    zeeman2 = 2.0 * CONSTANTS.mu_B * b_z
    kt = temperature_to_energy(inp.temperature)
    return RegimeReport(
        thermal_below_coupling=kt < j,
        coupling_below_zeeman=j < zeeman2,
        zeeman_below_fermi=zeeman2 < inp.fermi_energy,
        above_kondo=j > tk,
        gamma_within_bound=10.0 * inp.gamma <= inp.gamma_max,
        j_rkky=j, kondo_scale=tk, zeeman=zeeman2, thermal=kt,
        fermi=inp.fermi_energy, gamma_max=inp.gamma_max,
    )


def ratio_map(dimensionality: int, n3d_grid_cm3, w_grid_nm, temperature: float,
              m_eff_ratio: float = 0.2) -> np.ndarray:
    """Signed coupling-to-decoherence ratio over a density x separation grid.

    Row i corresponds to n3d_grid_cm3[i], column j to w_grid_nm[j]; the cell
    magnitude equals the operation_budget ratio and the sign follows
    F_d'(k_F W), so the oscillation nodes appear as sign changes along W.
    """
    if dimensionality not in (1, 2):
        raise DomainError("dimensionality must be 1 or 2")
    n3d = np.asarray(n3d_grid_cm3, dtype=float)
    w = np.asarray(w_grid_nm, dtype=float)
    if np.any(n3d <= 0) or np.any(w <= 0):
        raise DomainError("grids must be positive")
    kt = temperature_to_energy(temperature)
    if kt == 0.0:
        raise DomainError("ratio map needs T > 0")

    n_ed = (n3d * 1e-21) ** (dimensionality / 3.0)
    a = 2.0 * CONSTANTS.a02_ry / m_eff_ratio
    if dimensionality == 1:
        k_f = math.pi * n_ed
    else:
        k_f = np.sqrt(2.0 * math.pi * n_ed)
    e_f = 0.5 * a * k_f ** 2
    x = k_f[:, None] * w[None, :]
    fd = f1_prime(x) if dimensionality == 1 else f2_prime(x)
    return ETA[dimensionality] * e_f[:, None] * fd / (2.0 * math.pi * kt)
