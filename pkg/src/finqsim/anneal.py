"""Desk-scale exact simulation of the annealing Hamiltonian

    H(t) = sum_{i<j} J_ij (sigma_i . sigma_j)/4
         + sum_i [bz_i sigma_i^z + delta_i Delta(t) sigma_i^x]

with Pauli matrices (eigenvalues +-1), couplings in eV, local fields
stored pre-multiplied by g mu_B as energies, and a piecewise-linear
transverse schedule Delta(t) that must end at zero.  State vectors are
dense; N is capped at 12 spins.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math
import warnings

import numpy as np

from .constants import CONSTANTS, zeeman_splitting
from .device import DeviceGeometry, lcl_field
from .errors import DomainError, ValidationError
from .rkky import CouplingInput, j_rkky

MAX_SPINS = 12


@dataclass
class SpinNetwork:
    """Problem instance: symmetric coupling matrix, local z fields (eV),
    transverse schedule [(t_s, Delta_eV), ...] and integration controls."""

    j: np.ndarray
    bz: np.ndarray
    schedule: list[tuple[float, float]]
    dt: float
    delta_profile: np.ndarray | None = None  # per-spin scale on Delta(t)
    ising_only: bool = False

    def __post_init__(self):
        self.j = np.asarray(self.j, dtype=float)
        self.bz = np.asarray(self.bz, dtype=float)
        n = self.bz.size
        if self.j.shape != (n, n):
            raise DomainError("coupling matrix shape must match the field count")
        if not np.allclose(self.j, self.j.T, atol=0.0):
            raise DomainError("coupling matrix must be symmetric")
        if np.any(np.diag(self.j) != 0.0):
            raise DomainError("coupling matrix must have zero diagonal")
        if n < 1 or n > MAX_SPINS:
            raise DomainError(f"spin count must be 1..{MAX_SPINS}")
        if self.delta_profile is None:
            self.delta_profile = np.ones(n)
        else:
            self.delta_profile = np.asarray(self.delta_profile, dtype=float)
            if self.delta_profile.shape != (n,):
                raise DomainError("delta profile length must match the spin count")
        if not self.schedule:
            raise DomainError("schedule must contain at least one breakpoint")
        ts = [t for t, _ in self.schedule]
        if sorted(ts) != ts:
            raise DomainError("schedule times must be non-decreasing")
        if self.dt <= 0:
            raise DomainError("dt must be > 0")

    @property
    def n_spins(self) -> int:
        return self.bz.size

    @property
    def total_time(self) -> float:
        return self.schedule[-1][0]

    def delta_at(self, t: float) -> float:
        ts = np.array([p[0] for p in self.schedule])
        vs = np.array([p[1] for p in self.schedule])
        return float(np.interp(t, ts, vs))


# ----------------------------------------------------------------------
# Operator assembly (bit arithmetic; the tests rebuild via Kronecker products)
# ----------------------------------------------------------------------

def _sz_diag(n: int) -> np.ndarray:
    """sigma^z eigenvalues per spin: out[i, state] with bit i set -> +1."""
    states = np.arange(2 ** n)
    return np.where((states[None, :] >> np.arange(n)[:, None]) & 1, 1.0, -1.0)


def build_hamiltonian(net: SpinNetwork, t: float) -> np.ndarray:
    """Dense real-symmetric H(t) of dimension 2^N."""
    n = net.n_spins
    dim = 2 ** n
    sz = _sz_diag(n)
    h = np.zeros((dim, dim))

    diag = np.zeros(dim)
    for i in range(n):
        diag += net.bz[i] * sz[i]
        for k in range(i + 1, n):
            if net.j[i, k] != 0.0:
                diag += net.j[i, k] * 0.25 * sz[i] * sz[k]
    h[np.arange(dim), np.arange(dim)] = diag

    if not net.ising_only:
        # sigma_x sigma_x + sigma_y sigma_y flips anti-aligned pairs: matrix
        # element 2*J/4 between the two states differing by bits (i, k).
        states = np.arange(dim)
        for i in range(n):
            for k in range(i + 1, n):
                if net.j[i, k] == 0.0:
                    continue
                anti = ((states >> i) & 1) != ((states >> k) & 1)
                src = states[anti]
                dst = src ^ (1 << i) ^ (1 << k)
                h[dst, src] += 2.0 * net.j[i, k] * 0.25

    delta = net.delta_at(t)
    if delta != 0.0:
        states = np.arange(dim)
        for i in range(n):
            if net.delta_profile[i] == 0.0:
                continue
            h[states ^ (1 << i), states] += delta * net.delta_profile[i]
    return h


@dataclass(frozen=True)
class GroundState:
    energy: float
    states: np.ndarray     # (degeneracy, dim) orthonormal basis
    degeneracy: int


def ground_state(net: SpinNetwork, t: float,
                 degeneracy_rtol: float = 1e-9) -> GroundState:
    """Lowest eigenpair(s) by dense diagonalization; near-degenerate levels
    within degeneracy_rtol of the spectral span are returned together."""
    h = build_hamiltonian(net, t)
    evals, evecs = np.linalg.eigh(h)
    span = max(evals[-1] - evals[0], 1e-300)
    deg = int(np.sum(evals - evals[0] <= degeneracy_rtol * span))
    return GroundState(energy=float(evals[0]), states=evecs[:, :deg].T.copy(),
                       degeneracy=deg)


@dataclass(frozen=True)
class EvolveResult:
    final_state: np.ndarray
    fidelity: float                  # overlap^2 with the Delta=0 ground space
    times: np.ndarray
    energies: np.ndarray             # <H(t)> along the trajectory
    norm_drift: float                # max |norm-1| along the trajectory


def evolve(net: SpinNetwork, initial_state: np.ndarray | None = None,
           energy_samples: int = 200) -> EvolveResult:
    """Unitary midpoint-exponential time stepping of the schedule.

    The propagator over each step is exp(-i H(t+dt/2) dt / hbar) applied via
    the eigendecomposition of the midpoint Hamiltonian, so the norm is
    preserved to roundoff.  The initial state defaults to the ground state
    of H(0).  Fidelity is the squared overlap with the (possibly
    degenerate) ground space of the final Hamiltonian, which must have
    Delta = 0.
    """
    if abs(net.schedule[-1][1]) > 0.0:
        raise DomainError("schedule must end at Delta = 0")
    total = net.total_time
    if total <= 0:
        raise DomainError("total time must be > 0")

    # dt guard: a step must resolve the largest energy scale on the path.
    scale = _energy_scale(net)
    if scale * net.dt / CONSTANTS.hbar > 0.1:
        raise DomainError(
            f"dt too large: energy_scale*dt/hbar = {scale * net.dt / CONSTANTS.hbar:.3g} "
            "> 0.1; reduce dt below "
            f"{0.1 * CONSTANTS.hbar / scale:.3g} s")

    if initial_state is None:
        psi = ground_state(net, 0.0).states[0].astype(complex)
    else:
        psi = np.asarray(initial_state, dtype=complex)
        if psi.shape != (2 ** net.n_spins,):
            raise DomainError("initial state dimension mismatch")
        psi = psi / np.linalg.norm(psi)

    n_steps = max(1, int(math.ceil(total / net.dt)))
    dt = total / n_steps
    sample_every = max(1, n_steps // max(1, energy_samples))
    times = [0.0]
    energies = [float(np.real(psi.conj() @ build_hamiltonian(net, 0.0) @ psi))]
    norm_drift = abs(np.linalg.norm(psi) - 1.0)

    t = 0.0
    for step in range(n_steps):
        h = build_hamiltonian(net, t + 0.5 * dt)
        evals, evecs = np.linalg.eigh(h)
        phases = np.exp(-1j * evals * dt / CONSTANTS.hbar)
        psi = evecs @ (phases * (evecs.conj().T @ psi))
        t += dt
        norm_drift = max(norm_drift, abs(np.linalg.norm(psi) - 1.0))
        if (step + 1) % sample_every == 0 or step == n_steps - 1:
            times.append(t)
            energies.append(float(np.real(psi.conj()
                                          @ build_hamiltonian(net, t) @ psi)))

    g = ground_state(net, total)
    fidelity = float(np.sum(np.abs(g.states @ psi.conj()) ** 2))
    return EvolveResult(final_state=psi, fidelity=fidelity,
                        times=np.array(times), energies=np.array(energies),
                        norm_drift=norm_drift)


def _energy_scale(net: SpinNetwork) -> float:
    delta_max = max(abs(v) for _, v in net.schedule)
    return (float(np.sum(np.abs(net.j))) / 4.0 + float(np.sum(np.abs(net.bz)))
            + delta_max * float(np.sum(np.abs(net.delta_profile))))


def total_spin_expectation(state: np.ndarray) -> float:
    """<S_total^2> with S = sum sigma/2; conserved by pure exchange terms."""
    psi = np.asarray(state, dtype=complex)
    dim = psi.size
    n = int(round(math.log2(dim)))
    sz = _sz_diag(n)
    states = np.arange(dim)
    acc = 0.75 * n * float(np.vdot(psi, psi).real)
    for i in range(n):
        for k in range(i + 1, n):
            zz = float(np.vdot(psi, 0.25 * sz[i] * sz[k] * psi).real)
            anti = ((states >> i) & 1) != ((states >> k) & 1)
            flipped = np.zeros_like(psi)
            src = states[anti]
            flipped[src ^ (1 << i) ^ (1 << k)] = psi[src]
            xy = 0.5 * float(np.vdot(psi, flipped).real)
            acc += 2.0 * (zz + xy)
    return acc


# ----------------------------------------------------------------------
# Device-derived instances and the problem-file interface
# ----------------------------------------------------------------------

def couplings_from_device(base: CouplingInput, separations: np.ndarray,
                          geometry: DeviceGeometry, line_currents: np.ndarray,
                          schedule: list[tuple[float, float]], dt: float) -> SpinNetwork:
    """Assemble a SpinNetwork from pairwise dot separations (nm) and the
    per-qubit control-line currents (A).

    J_ij comes from the carrier-mediated coupling at separation W_ij; a
    pair sitting on an oscillation node gets J_ij = 0 with a warning.
    Local fields are g mu_B B(I_i) with B from the line geometry.
    """
    sep = np.asarray(separations, dtype=float)
    n = sep.shape[0]
    if sep.shape != (n, n):
        raise DomainError("separation matrix must be square")
    cur = np.asarray(line_currents, dtype=float)
    if cur.shape != (n,):
        raise DomainError("need one line current per qubit")

    from dataclasses import replace as _replace
    j = np.zeros((n, n))
    for i in range(n):
        for k in range(i + 1, n):
            if sep[i, k] <= 0.0:
                continue
            val = j_rkky(_replace(base, w=float(sep[i, k])))
            if val == 0.0:
                warnings.warn(f"pair ({i},{k}) sits on a coupling node; J set to 0",
                              stacklevel=2)
            j[i, k] = j[k, i] = val
    bz = np.array([zeeman_splitting(lcl_field(geometry, c)) for c in cur])
    return SpinNetwork(j=j, bz=bz, schedule=schedule, dt=dt)


def load_problem(path, dt: float) -> SpinNetwork:
    """Read a plain-text problem file.

    Lines: `i j J_eV` (coupling), `field i Bz_eV`, `schedule t_s Delta_eV`;
    blank lines and `#` comments are skipped.
    """
    couplings = {}
    fields = {}
    schedule = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                if parts[0] == "field" and len(parts) == 3:
                    fields[int(parts[1])] = float(parts[2])
                elif parts[0] == "schedule" and len(parts) == 3:
                    schedule.append((float(parts[1]), float(parts[2])))
                elif len(parts) == 3:
                    i, k, val = int(parts[0]), int(parts[1]), float(parts[2])
                    if i == k:
                        raise ValueError("self-coupling")
                    couplings[(min(i, k), max(i, k))] = val
                else:
                    raise ValueError("unrecognized line")
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: {exc}: {raw.rstrip()}") from exc
    indices = set(fields)
    for i, k in couplings:
        indices.update((i, k))
    if not indices:
        raise ValidationError(f"{path}: no spins defined")
    n = max(indices) + 1
    j = np.zeros((n, n))
    for (i, k), val in couplings.items():
        j[i, k] = j[k, i] = val
    bz = np.zeros(n)
    for i, val in fields.items():
        bz[i] = val
    if not schedule:
        raise ValidationError(f"{path}: no schedule lines")
    return SpinNetwork(j=j, bz=bz, schedule=schedule, dt=dt)
