"""Umbral plane waves on a space-time lattice with steps b (space) and a (time)."""

import math
from dataclasses import dataclass
from fractions import Fraction

from .._numeric import gauss_pow, is_exact, lattice_index
from ..core import umbral_exp
from ..errors import DomainError


@dataclass(frozen=True)
class WaveParams:
    omega: object
    k: object
    a: object
    b: object

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise DomainError("wave lattice spacings must be positive")


def _exact_power(re, im, n):
    if n >= 0:
        return gauss_pow(re, im, n)
    r, i = gauss_pow(re, im, -n)
    d = r * r + i * i
    return Fraction(r) / d, Fraction(-i) / d


def plane_wave_parts(params, x, t):
    """(Re F, Im F) of F = (1 + i w a)^(t/a) (1 - i k b)^(x/b), exact on an exact lattice."""
    w, k, a, b = params.omega, params.k, params.a, params.b
    m = lattice_index(t, a, tol=0.0)
    n = lattice_index(x, b, tol=0.0)
    if not (is_exact(w, k, a, b, x, t) and m is not None and n is not None):
        raise DomainError("exact plane wave needs exact parameters on lattice points")
    tr, ti = _exact_power(Fraction(1), w * a, m)
    xr, xi = _exact_power(Fraction(1), -k * b, n)
    return tr * xr - ti * xi, tr * xi + ti * xr


def plane_wave(params, x, t):
    """F(x, t) = (1 + i w a)^(t/a) (1 - i k b)^(x/b)."""
    p = params
    return complex(umbral_exp(1j * p.omega, t, p.a)) * complex(umbral_exp(-1j * p.k, x, p.b))


def _arcsin(v):
    if abs(v) > 1:
        raise DomainError(f"arcsin needs |argument| <= 1, got {v}")
    return math.asin(v)


def refraction_index(params):
    """(b arcsin a) / (a arcsin b)."""
    a, b = float(params.a), float(params.b)
    return (b * _arcsin(a)) / (a * _arcsin(b))


def phase_velocity(params, variant="arcsin"):
    """Phase velocity of the umbral plane wave.

    "arcsin": (w/k) a arcsin(b) / (b arcsin(a)).
    "arctan": the same expression with arctan in place of arcsin.
    "dispersion": ratio of the actual phase advances per unit time and
    per unit length, (arctan(w a)/a) / (arctan(k b)/b).
    """
    w, k, a, b = (float(v) for v in (params.omega, params.k, params.a, params.b))
    if variant == "arcsin":
        return (w / k) * a * _arcsin(b) / (b * _arcsin(a))
    if variant == "arctan":
        return (w / k) * a * math.atan(b) / (b * math.atan(a))
    if variant == "dispersion":
        return (math.atan(w * a) / a) / (math.atan(k * b) / b)
    raise ValueError(f"unknown variant {variant!r}")
