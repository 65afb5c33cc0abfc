"""Device-level parameter estimators: carrier densities, Fermi energies,
charging energy, confinement levels and their size sensitivity, control-line
magnetics, and the wire power budget.

Geometry lengths are in nm, densities in cm^-3 at the interface (converted
internally to nm units), energies in eV, currents in A, fields in T.
"""

from __future__ import annotations

from dataclasses import dataclass
import math
import warnings

from .constants import CONSTANTS
from .errors import DomainError

CM3_TO_NM3 = 1e-21  # 1 cm^-3 = 1e-21 nm^-3


@dataclass
class DeviceGeometry:
    """Fin/QD/control-line geometry.

    l, w        gate length and fin spacing/width (nm)
    hfin        fin height (nm)
    w_d         tunnel-barrier thickness (nm)
    l_qd        QD edge (nm); defaults to l/2 (cubic dot between fins)
    r           control-line to qubit distance (nm)
    eps_barrier barrier relative permittivity (default 3.9, oxide barrier)
    mu_channel  relative permeability of the channel stack (default 10)
    """

    l: float
    w: float
    w_d: float
    r: float
    hfin: float = 30.0
    l_qd: float | None = None
    eps_barrier: float = 3.9
    mu_channel: float = 10.0

    def __post_init__(self):
        if self.l_qd is None:
            self.l_qd = self.l / 2.0
        for name in ("l", "w", "w_d", "r", "hfin", "l_qd"):
            if getattr(self, name) <= 0:
                raise DomainError(f"geometry field {name} must be > 0")
        if self.eps_barrier <= 0 or self.mu_channel <= 0:
            raise DomainError("material parameters must be > 0")
        if self.l > 28.0:
            warnings.warn(f"gate length {self.l} nm exceeds the 28 nm design envelope",
                          stacklevel=2)


@dataclass
class CarrierSpec:
    """Channel carrier description: bulk density plus effective dimensionality."""

    n3d_cm3: float
    dimensionality: int
    m_eff_ratio: float = 0.2  # m*/m0; 0.2 electrons, 0.5 holes

    def __post_init__(self):
        if self.n3d_cm3 <= 0:
            raise DomainError("carrier density must be > 0")
        if self.dimensionality not in (1, 2):
            raise DomainError("dimensionality must be 1 or 2")
        if self.m_eff_ratio <= 0:
            raise DomainError("effective mass ratio must be > 0")
        if not (1e15 <= self.n3d_cm3 <= 1e20):
            warnings.warn(f"density {self.n3d_cm3:g} cm^-3 outside the gate-tunable "
                          "1e15..1e20 range", stacklevel=2)


def reduced_density(spec: CarrierSpec) -> float:
    """Dimensionality-reduced density n_ed = n3d^(d/3): nm^-1 (1D) or nm^-2 (2D)."""
    n_nm3 = spec.n3d_cm3 * CM3_TO_NM3
    return n_nm3 ** (spec.dimensionality / 3.0)


def fermi_energy(spec: CarrierSpec) -> float:
    """Free-carrier Fermi energy in eV.

    E_F1 = a0^2 Ry (pi n_e1)^2 (m0/m*)   ~ 0.376 n_e1^2 (m0/m*) eV
    E_F2 = a0^2 Ry (2 pi n_e2) (m0/m*)   ~ 0.239 n_e2   (m0/m*) eV
    """
    n_ed = reduced_density(spec)
    inv_mass = 1.0 / spec.m_eff_ratio
    if spec.dimensionality == 1:
        return CONSTANTS.a02_ry * (math.pi * n_ed) ** 2 * inv_mass
    return CONSTANTS.a02_ry * (2.0 * math.pi * n_ed) * inv_mass


def charging_energy(geom: DeviceGeometry) -> float:
    """Coulomb charging energy U = e^2/(2C) in eV.

    The dot capacitance to its two neighboring channels is the parallel-plate
    value for two faces, C = 2 eps L_QD^2 / w_d.
    """
    # C in farad; lengths nm -> m leaves a net 1e-9 factor for L^2/w.
    c_farad = 2.0 * geom.eps_barrier * CONSTANTS.eps0 \
        * (geom.l_qd * geom.l_qd / geom.w_d) * 1e-9
    return CONSTANTS.e_charge / (2.0 * c_farad)


def qd_levels(geom: DeviceGeometry, m_eff_ratio: float,
              quantum_numbers: tuple[int, int, int]) -> float:
    """Particle-in-a-cubic-box level sum_l pi^2 hbar^2 (n_l+1)^2/(2 m* L_QD^2), eV."""
    if any(n < 0 for n in quantum_numbers):
        raise DomainError("quantum numbers must be non-negative")
    if m_eff_ratio <= 0:
        raise DomainError("effective mass ratio must be > 0")
    s = sum((n + 1) ** 2 for n in quantum_numbers)
    return CONSTANTS.a02_ry / m_eff_ratio * math.pi ** 2 * s / geom.l_qd ** 2


@dataclass(frozen=True)
class LevelVariation:
    """Level shift for a dot-size change dL.

    first_order       2 (dL/L_QD) eps_n, the exact first derivative of the
                      1/L^2 spectrum (the level moves opposite to dL; the
                      magnitude convention is used here)
    fixed_coefficient the 15.5 meV * (dL/L_QD) * sum(n_l+1)^2 rule of thumb,
                      calibrated at L_QD = 10 nm and m*/m0 = 0.5
    """

    first_order: float
    fixed_coefficient: float


def qd_level_variation(geom: DeviceGeometry, m_eff_ratio: float,
                       quantum_numbers: tuple[int, int, int], dl: float) -> LevelVariation:
    """First-order level shift for L_QD -> L_QD + dl (|dl| < L_QD)."""
    if abs(dl) >= geom.l_qd:
        raise DomainError(f"|dl| = {abs(dl)} nm must stay below L_QD = {geom.l_qd} nm")
    eps_n = qd_levels(geom, m_eff_ratio, quantum_numbers)
    rel = dl / geom.l_qd
    s = sum((n + 1) ** 2 for n in quantum_numbers)
    return LevelVariation(first_order=2.0 * rel * eps_n,
                          fixed_coefficient=15.5e-3 * rel * s)


def lcl_field(geom: DeviceGeometry, current_a: float) -> float:
    """Field at the qubit from a control-line current: B = mu I/(2 pi r), tesla."""
    mu = geom.mu_channel * CONSTANTS.mu0
    return mu * current_a / (2.0 * math.pi * geom.r * 1e-9)


def lcl_current_for_field(geom: DeviceGeometry, b_tesla: float) -> float:
    """Exact inverse of lcl_field: I = 2 pi r B / mu, ampere."""
    mu = geom.mu_channel * CONSTANTS.mu0
    return 2.0 * math.pi * geom.r * 1e-9 * b_tesla / mu


@dataclass(frozen=True)
class WireBudget:
    current_a: float
    resistance_ohm: float
    per_wire_power_w: float
    max_wires: int


def wire_budget(resistivity_uohm_cm: float, current_density_a_cm2: float,
                width_nm: float, height_nm: float, length_nm: float,
                chip_power_w: float) -> WireBudget:
    """Per-wire current, resistance, dissipation and the chip-level wire count.

    I = j A,  R = rho l / A,  P = I^2 R,  max_wires = floor(chip_power / P).
    """
    for v in (resistivity_uohm_cm, current_density_a_cm2, width_nm, height_nm,
              length_nm, chip_power_w):
        if v <= 0:
            raise DomainError("wire budget inputs must all be > 0")
    area_cm2 = width_nm * height_nm * 1e-14   # nm^2 -> cm^2
    length_cm = length_nm * 1e-7
    current = current_density_a_cm2 * area_cm2
    resistance = resistivity_uohm_cm * 1e-6 * length_cm / area_cm2
    power = current * current * resistance
    return WireBudget(current_a=current, resistance_ohm=resistance,
                      per_wire_power_w=power,
                      max_wires=int(math.floor(chip_power_w / power)))
