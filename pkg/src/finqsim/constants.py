"""Physical constants and elementary energy/field/frequency conversions.

Internal unit system: energies in eV, lengths in nm, times in s, magnetic
fields in T, temperatures in K.  All constants are stored pre-converted to
these units so downstream formulas never carry conversion factors.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

from .errors import DomainError


@dataclass(frozen=True)
class ConstantsTable:
    """Single source of truth for physical constants (CODATA 2018)."""

    hbar: float = 6.582119569e-16        # eV s
    mu_B: float = 5.7883818060e-5        # eV/T (Bohr magneton)
    k_B: float = 8.617333262e-5          # eV/K
    e_charge: float = 1.602176634e-19    # C
    R_K: float = 25812.80745             # ohm, von Klitzing h/e^2
    a0: float = 0.0529177210903          # nm, Bohr radius
    Ry: float = 13.605693122994          # eV, Rydberg energy
    mu0: float = 1.25663706212e-6        # T m / A
    eps0: float = 8.8541878128e-12       # F/m
    g_factor: float = 2.0                # electron g (fixed convention)

    @property
    def a02_ry(self) -> float:
        """a0^2 * Ry = hbar^2/(2 m0) in eV nm^2; drives all band arithmetic."""
        return self.a0 * self.a0 * self.Ry


CONSTANTS = ConstantsTable()


def zeeman_splitting(b_tesla: float, g: float | None = None) -> float:
    """Zeeman energy g*mu_B*B in eV for a field in tesla."""
    if b_tesla < 0:
        raise DomainError(f"magnetic field must be >= 0, got {b_tesla}")
    if g is None:
        g = CONSTANTS.g_factor
    return g * CONSTANTS.mu_B * b_tesla


def energy_to_temperature(e_ev: float) -> float:
    """Convert an energy in eV to the equivalent temperature E/k_B in kelvin."""
    if e_ev < 0:
        raise DomainError(f"energy must be >= 0, got {e_ev}")
    return e_ev / CONSTANTS.k_B


def temperature_to_energy(t_kelvin: float) -> float:
    """k_B*T in eV."""
    if t_kelvin < 0:
        raise DomainError(f"temperature must be >= 0, got {t_kelvin}")
    return CONSTANTS.k_B * t_kelvin


def larmor_frequency(b_tesla: float, g: float | None = None) -> float:
    """Cyclic spin-resonance frequency g*mu_B*B/(2*pi*hbar) in Hz."""
    return larmor_angular_frequency(b_tesla, g) / (2.0 * math.pi)


def larmor_angular_frequency(b_tesla: float, g: float | None = None) -> float:
    """Angular form g*mu_B*B/hbar in rad/s."""
    return zeeman_splitting(b_tesla, g) / CONSTANTS.hbar


def photon_energy(omega_rad_per_s: float) -> float:
    """hbar*omega in eV for an angular frequency in rad/s.

    Note: a 1e7 rad/s drive corresponds to 6.58e-9 eV (nano-eV); quotes of
    the same number in pico-eV are off by three decades.
    """
    return CONSTANTS.hbar * omega_rad_per_s


def constants_rows() -> list[tuple[str, float]]:
    """(name, value) pairs for the CSV dump, in declaration order."""
    c = CONSTANTS
    return [
        ("hbar_eV_s", c.hbar),
        ("mu_B_eV_per_T", c.mu_B),
        ("k_B_eV_per_K", c.k_B),
        ("e_charge_C", c.e_charge),
        ("R_K_ohm", c.R_K),
        ("a0_nm", c.a0),
        ("Ry_eV", c.Ry),
        ("mu0_T_m_per_A", c.mu0),
        ("eps0_F_per_m", c.eps0),
        ("g_factor", c.g_factor),
        ("a0^2*Ry_eV_nm^2", c.a02_ry),
    ]
