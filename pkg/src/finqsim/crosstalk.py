"""Control-line crosstalk: solve the current pattern over N+1 parallel
lines that nulls the field at every qubit except the target, and flag the
geometries where the nearest-neighbor elimination turns singular.

Model: qubit i sits at distance r (nm) under line i; neighboring lines at
pitch L (nm) contribute with the geometric weight p = r/sqrt(r^2 + L^2),
and alternating line orientations are folded into the current signs, so
the working field at qubit i is

    h_i = [I_i - p (I_{i-1} + I_{i+1})] / (2 pi r)          (A/m)

with one-sided brackets at the edges.  Beyond-nearest-neighbor weights
p_m = r/sqrt(r^2 + m^2 L^2) are dropped by the model; superposed_fields
quantifies what the truncation leaves behind.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .constants import CONSTANTS
from .errors import DomainError

COND_LIMIT = 1e12


@dataclass(frozen=True)
class LCLArray:
    """N+1 parallel control lines addressing qubits 0..N; target n."""

    n_lines_minus_one: int   # N: qubit indices run 0..N
    r: float                 # nm, line-qubit distance
    pitch: float             # nm, line spacing L
    target: int
    current: float           # A, target-line current I_n

    def __post_init__(self):
        if self.n_lines_minus_one < 1:
            raise DomainError("need at least two lines")
        if self.r <= 0 or self.pitch < 0:
            raise DomainError("r must be > 0 and pitch >= 0")
        if not (0 <= self.target <= self.n_lines_minus_one):
            raise DomainError("target index out of range")

    @property
    def p(self) -> float:
        return self.r / math.hypot(self.r, self.pitch)

    @classmethod
    def from_p(cls, n: int, target: int, p: float, current: float,
               r: float = 20.0) -> "LCLArray":
        """Build an array directly from the geometric weight p in (0, 1]."""
        if not (0.0 < p <= 1.0):
            raise DomainError("p must lie in (0, 1]")
        pitch = r * math.sqrt(1.0 / (p * p) - 1.0)
        return cls(n_lines_minus_one=n, r=r, pitch=pitch, target=target,
                   current=current)


def solve_currents(arr: LCLArray) -> np.ndarray:
    """Currents I_0..I_N nulling the bracket at every non-target qubit.

    Solves the banded nearest-neighbor system by dense elimination; raises
    when the geometry sits near a forbidden configuration (condition number
    above 1e12, the m p^2 = 1 family).
    """
    n = arr.n_lines_minus_one
    p = arr.p
    unknowns = [i for i in range(n + 1) if i != arr.target]
    col = {i: k for k, i in enumerate(unknowns)}
    a = np.zeros((n, n))
    b = np.zeros(n)

    def add(row, i, coeff):
        if i == arr.target:
            b[row] -= coeff * arr.current
        else:
            a[row, col[i]] += coeff

    row = 0
    for i in range(n + 1):
        if i == arr.target:
            continue
        add(row, i, 1.0)
        if i > 0:
            add(row, i - 1, -p)
        if i < n:
            add(row, i + 1, -p)
        row += 1

    if np.linalg.cond(a) > COND_LIMIT:
        raise DomainError(
            "singular crosstalk geometry: the elimination denominators vanish "
            "on the m*p^2 = 1 family (pitch near sqrt(m-1)*r)")
    x = np.linalg.solve(a, b)
    currents = np.empty(n + 1)
    currents[arr.target] = arr.current
    for i, k in col.items():
        currents[i] = x[k]
    return currents


def bracket_fields(arr: LCLArray, currents: np.ndarray) -> np.ndarray:
    """Working fields h_i = [I_i - p (I_{i-1}+I_{i+1})]/(2 pi r) in A/m.

    Direct evaluation of the model expressions; used both as the residual
    check of solve_currents and as the target-field readout.
    """
    n = arr.n_lines_minus_one
    p = arr.p
    cur = np.asarray(currents, dtype=float)
    if cur.shape != (n + 1,):
        raise DomainError("currents array has the wrong length")
    h = np.empty(n + 1)
    r_m = arr.r * 1e-9
    for i in range(n + 1):
        neigh = 0.0
        if i > 0:
            neigh += cur[i - 1]
        if i < n:
            neigh += cur[i + 1]
        h[i] = (cur[i] - p * neigh) / (2.0 * math.pi * r_m)
    return h


def target_field(arr: LCLArray, currents: np.ndarray) -> float:
    """Field at the target qubit, A/m (H-field convention)."""
    return float(bracket_fields(arr, currents)[arr.target])


def target_b_field(arr: LCLArray, currents: np.ndarray,
                   mu_channel: float = 10.0) -> float:
    """B = mu_r mu_0 h at the target, tesla."""
    return mu_channel * CONSTANTS.mu0 * target_field(arr, currents)


def superposed_fields(arr: LCLArray, currents: np.ndarray,
                      max_neighbor: int | None = None) -> np.ndarray:
    """All-neighbor superposition with weights p_m = r/sqrt(r^2 + m^2 L^2).

    max_neighbor = 1 reproduces bracket_fields exactly; None sums every
    line and quantifies the contributions the model drops.
    """
    n = arr.n_lines_minus_one
    cur = np.asarray(currents, dtype=float)
    m_cap = n if max_neighbor is None else max_neighbor
    r_m = arr.r * 1e-9
    h = np.empty(n + 1)
    for i in range(n + 1):
        total = 0.0
        for j in range(n + 1):
            m = abs(i - j)
            if m > m_cap:
                continue
            w = arr.r / math.hypot(arr.r, m * arr.pitch)
            total += (-1.0) ** m * w * cur[j]
        h[i] = total / (2.0 * math.pi * r_m)
    return h


def forbidden_p_squares(n_max: int) -> list[float]:
    """The p^2 values 1/m, m = 1..n_max, where the elimination breaks down."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    return [1.0 / m for m in range(1, n_max + 1)]


def forbidden_pitches(r: float, n_max: int) -> list[float]:
    """Equivalent forbidden pitches L = sqrt(m-1) r, m = 1..n_max."""
    if r <= 0:
        raise DomainError("r must be > 0")
    return [math.sqrt(m - 1.0) * r for m in range(1, n_max + 1)]


def singularity_check(r: float, pitch: float, n_max: int = 10,
                      tol: float = 1e-6) -> list[int]:
    """Indices m with |m p^2 - 1| < tol for the given geometry."""
    if r <= 0 or pitch < 0:
        raise DomainError("r must be > 0 and pitch >= 0")
    p2 = r * r / (r * r + pitch * pitch)
    return [m for m in range(1, n_max + 1) if abs(m * p2 - 1.0) < tol]
