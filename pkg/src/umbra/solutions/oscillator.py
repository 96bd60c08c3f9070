"""Umbral harmonic oscillator: Delta X = P, Delta P = -X."""

import math
from dataclasses import dataclass, replace

from .._numeric import is_exact, lattice_index, ratio
from ..core import umbral_power_base, umbral_trig


@dataclass(frozen=True)
class OscillatorState:
    X: object
    P: object
    t: object
    a: object


def oscillator_frequency(a):
    """arctan(a)/a, the phase advance per unit time; 1 in the continuum."""
    a = float(a)
    if a == 0:
        return 1.0
    return math.atan(a) / a


def oscillator_energy(state):
    """(X**2 + P**2)/2 * (1 + a**2)**(-t/a), constant along every trajectory."""
    a = state.a
    damp = umbral_power_base(1 + a * a, -ratio(state.t, a))
    return (state.X * state.X + state.P * state.P) * damp / 2


def _trig(dt, a):
    return umbral_trig(dt, a)


def _spiral(dt, a):
    a, dt = float(a), float(dt)
    r = (1 + a * a) ** (dt / (2 * a))
    w = oscillator_frequency(a)
    return r * math.sin(w * dt), r * math.cos(w * dt)


def oscillator_evolve(state0, t, route="trig"):
    """Advance ``state0`` to time ``t``.

    route="trig" uses Sin/Cos built from powers of 1 + i a and stays exact on
    the lattice; route="spiral" uses the polar form (1+a^2)^(t/2a) (cos, sin)(w t).
    """
    dt = t - state0.t
    a = state0.a
    if route == "trig":
        on_lattice = lattice_index(dt, a, tol=0.0 if is_exact(dt, a) else 1e-12)
        s, c = _trig(dt, a) if on_lattice is not None else _spiral(dt, a)
    elif route == "spiral":
        s, c = _spiral(dt, a)
    else:
        raise ValueError(f"unknown route {route!r}")
    X0, P0 = state0.X, state0.P
    return replace(state0, X=X0 * c + P0 * s, P=P0 * c - X0 * s, t=t)


def oscillator_trajectory(state0, steps, route="trig"):
    """States at t0, t0 + a, ..., t0 + steps*a."""
    return [oscillator_evolve(state0, state0.t + j * state0.a, route) for j in range(steps + 1)]
