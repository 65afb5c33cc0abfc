"""Bessel functions J0, J1, Y0, Y1, the sine integral, and the RKKY
range/relaxation functions built from them.

Evaluation is delegated to scipy.special (Cephes, ~1e-15 accurate); the
test suite checks every function against independent quadrature/series
oracles.  Range-function conventions:

    F1'(x) = si(2x)                      1D coupling
    F2'(x) = J0(x)Y0(x) + J1(x)Y1(x)     2D coupling
    G1'(x) = (1 - cos 2x)/2              1D relaxation
    G2'(x) = 1 - J0(x)^2                 2D relaxation

with the lowercase sine integral si(x) = Si(x) - pi/2, which decays to 0
for large x (so F1' has a decaying oscillatory envelope).
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np
from scipy import special as _sp

from .errors import DomainError

__all__ = [
    "RangeFunctionKind",
    "bessel_j",
    "bessel_y",
    "sine_integral_si",
    "range_function",
    "f1_prime",
    "f2_prime",
    "g1_prime",
    "g2_prime",
]


def _as_array(x):
    a = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(a)):
        raise DomainError("argument must be finite")
    return a


def _maybe_scalar(a, x):
    return float(a) if np.isscalar(x) or np.ndim(x) == 0 else a


def bessel_j(n: int, x) -> float | np.ndarray:
    """Bessel function of the first kind, order 0 or 1."""
    if n not in (0, 1):
        raise DomainError(f"order must be 0 or 1, got {n}")
    a = _as_array(x)
    out = _sp.j0(a) if n == 0 else _sp.j1(a)
    return _maybe_scalar(out, x)


def bessel_y(n: int, x) -> float | np.ndarray:
    """Bessel function of the second kind, order 0 or 1.  Requires x > 0."""
    if n not in (0, 1):
        raise DomainError(f"order must be 0 or 1, got {n}")
    a = _as_array(x)
    if np.any(a <= 0):
        raise DomainError("Y_n is singular at x <= 0; handle x = 0 explicitly")
    out = _sp.y0(a) if n == 0 else _sp.y1(a)
    return _maybe_scalar(out, x)


def sine_integral_si(x) -> float | np.ndarray:
    """Lowercase sine integral si(x) = Si(x) - pi/2 for x >= 0."""
    a = _as_array(x)
    if np.any(a < 0):
        raise DomainError("si(x) is defined here for x >= 0 only")
    si_upper, _ = _sp.sici(a)
    out = si_upper - 0.5 * math.pi
    return _maybe_scalar(out, x)


def f1_prime(x):
    """1D RKKY range function si(2x)."""
    a = _as_array(x)
    return _maybe_scalar(sine_integral_si(2.0 * a), x)


def f2_prime(x):
    """2D RKKY range function J0*Y0 + J1*Y1; singular limit at x = 0."""
    a = _as_array(x)
    if np.any(a <= 0):
        raise DomainError("F2' involves Y0/Y1 and is singular at x <= 0")
    out = _sp.j0(a) * _sp.y0(a) + _sp.j1(a) * _sp.y1(a)
    return _maybe_scalar(out, x)


def g1_prime(x):
    """1D relaxation factor (1 - cos 2x)/2, bounded in [0, 1]."""
    a = _as_array(x)
    if np.any(a < 0):
        raise DomainError("G1' is defined here for x >= 0 only")
    out = 0.5 * (1.0 - np.cos(2.0 * a))
    return _maybe_scalar(out, x)


def g2_prime(x):
    """2D relaxation factor 1 - J0(x)^2, bounded in [0, 1]."""
    a = _as_array(x)
    if np.any(a < 0):
        raise DomainError("G2' is defined here for x >= 0 only")
    j = _sp.j0(a)
    out = 1.0 - j * j
    return _maybe_scalar(out, x)


@dataclass(frozen=True)
class RangeFunctionKind:
    """Selects the dimensionality (1|2) and flavor (coupling F' | relaxation G')."""

    dimensionality: int
    flavor: str  # "coupling" or "relaxation"

    def __post_init__(self):
        if self.dimensionality not in (1, 2):
            raise DomainError(f"dimensionality must be 1 or 2, got {self.dimensionality}")
        if self.flavor not in ("coupling", "relaxation"):
            raise DomainError(f"flavor must be 'coupling' or 'relaxation', got {self.flavor!r}")


_DISPATCH = {
    (1, "coupling"): f1_prime,
    (2, "coupling"): f2_prime,
    (1, "relaxation"): g1_prime,
    (2, "relaxation"): g2_prime,
}


def range_function(kind: RangeFunctionKind, x) -> float | np.ndarray:
    """Evaluate the selected range function at x >= 0 (x > 0 for 2D coupling)."""
    return _DISPATCH[(kind.dimensionality, kind.flavor)](x)


# Named table for the CLI `fn` subcommand.
FUNCTIONS_BY_NAME = {
    "J0": lambda x: bessel_j(0, x),
    "J1": lambda x: bessel_j(1, x),
    "Y0": lambda x: bessel_y(0, x),
    "Y1": lambda x: bessel_y(1, x),
    "si": sine_integral_si,
    "F1p": f1_prime,
    "F2p": f2_prime,
    "G1p": g1_prime,
    "G2p": g2_prime,
}
