"""Residuals of difference operators on sampled solutions, and continuum-limit tables."""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import GridFunction, Lattice, umbral_exp
from .errors import InsufficientSamplesError
from .solutions import (
    OscillatorState,
    WaveParams,
    WhittakerParams,
    c1c2_closed,
    inverse_square_closed,
    oscillator_evolve,
    plane_wave,
    plane_wave_parts,
    um_airy,
    um_airy_parts,
    um_gaussian,
    whittaker_a2_closed,
)


@dataclass(frozen=True)
class DifferenceOperatorSpec:
    """sum_i c_i(x) * (Delta^m_i Y)(x + j_i a).

    Each term is (coefficient, shift j, order m); a coefficient is either a
    number or a callable of x.
    """

    terms: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(tuple(t) for t in self.terms))

    @property
    def reach(self):
        return max(j + m for _, j, m in self.terms)


@dataclass(frozen=True)
class ResidualReport:
    name: str
    max_abs: float
    location: int
    per_point: tuple
    scale: float = 1.0
    bound: float = None
    relative: bool = False

    @property
    def max_rel(self):
        return self.max_abs / self.scale if self.scale else self.max_abs

    @property
    def passed(self):
        if self.bound is None:
            return True
        return (self.max_rel if self.relative else self.max_abs) <= self.bound

    def as_dict(self):
        return {
            "suite": self.name,
            "max_abs": float(self.max_abs),
            "max_rel": float(self.max_rel),
            "location": self.location,
            "bound": self.bound,
            "relative": self.relative,
            "passed": self.passed,
            "points": len(self.per_point),
        }


def _diffs(vals, j, m, a):
    # (Delta^m Y)(x_i + j a) for every admissible i
    out = list(vals[j:])
    for _ in range(m):
        out = [(out[i + 1] - out[i]) / a for i in range(len(out) - 1)]
    return out


def apply_operator(op, F):
    """Pointwise action of ``op`` on the grid ``F``; the result is shorter by op.reach."""
    n_out = len(F) - op.reach
    if n_out < 1:
        raise InsufficientSamplesError(f"operator reaches {op.reach} steps, grid has {len(F)} samples")
    a = F.spacing
    xs = F.xs[:n_out]
    acc = [0] * n_out
    for coeff, j, m in op.terms:
        d = _diffs(F.samples, j, m, a)
        for i in range(n_out):
            c = coeff(xs[i]) if callable(coeff) else coeff
            acc[i] = acc[i] + c * d[i]
    return GridFunction(F.lattice, F.origin, acc)


def report(name, residual, F=None, bound=None, relative=False):
    mags = [abs(v) for v in residual.samples]
    loc = max(range(len(mags)), key=mags.__getitem__)
    scale = max(abs(v) for v in F.samples) if F is not None else 1.0
    return ResidualReport(name, mags[loc], loc, tuple(residual.samples), float(scale) or 1.0,
                          bound, relative)


# ---------------------------------------------------------------------------
# named operators
# ---------------------------------------------------------------------------

def oscillator_operator():
    """Delta^2 Y + Y."""
    return DifferenceOperatorSpec([(1, 0, 2), (1, 0, 0)], "oscillator")


def whittaker_operator(kappa, mu, a):
    """Delta^2 Y + kappa/(x+a) Y(x+a) + (1/4 - mu^2)/((x+a)(x+2a)) Y(x+2a) - Y/4."""
    terms = [(1, 0, 2), (lambda x: kappa / (x + a), 1, 0), (-0.25, 0, 0)]
    c = 0.25 - mu * mu
    if c != 0:
        terms.append((lambda x: c / ((x + a) * (x + 2 * a)), 2, 0))
    return DifferenceOperatorSpec(terms, "whittaker")


def inverse_square_operator(kappa, a, mu=None):
    """Delta^2 Y + kappa/((x+a)(x+2a)) Y(x+2a) - mu Y, with mu = 1/a^2 by default."""
    if mu is None:
        mu = 1 / (a * a)
    return DifferenceOperatorSpec(
        [(1, 0, 2), (lambda x: kappa / ((x + a) * (x + 2 * a)), 2, 0), (-mu, 0, 0)],
        "inverse_square",
    )


def airy_operator(a):
    """Delta^2 Y(x+a) - (x+a) Y(x), i.e. Delta^2 Y(x) = x Y(x-a) shifted by one step."""
    return DifferenceOperatorSpec([(1, 1, 2), (lambda x: -(x + a), 0, 0)], "airy")


def airy_operator_unshifted(a):
    """Delta^2 Y(x) - x Y(x+a); the variant that the sampled solutions do not satisfy."""
    return DifferenceOperatorSpec([(1, 0, 2), (lambda x: -x, 1, 0)], "airy_unshifted")


def gaussian_operator(a):
    """Delta G(x+a) + 2 (x+a) G(x), i.e. Delta G(x) = -2 x G(x-a) shifted by one step."""
    return DifferenceOperatorSpec([(1, 1, 1), (lambda x: 2 * (x + a), 0, 0)], "gaussian_first_order")


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

# absolute bounds, except for the geometrically growing families listed in
# RELATIVE_SUITES, whose residuals are divided by max |Y| over the window
TOLERANCE_PROFILES = {
    "default": {
        "oscillator": 0.0,
        "whittaker_half": 1e-10,
        "inverse_square": 1e-12,
        "whittaker_general": 1e-12,
        "airy": 1e-6,
        "gaussian_first_order": 1e-10,
        "plane_wave": 1e-12,
    },
    "strict": {
        "oscillator": 0.0,
        # samples reach ~1e4 on the default window; this is a few ulps
        "whittaker_half": 5e-11,
        "inverse_square": 1e-13,
        "whittaker_general": 1e-13,
        "airy": 1e-9,
        "gaussian_first_order": 1e-12,
        "plane_wave": 1e-14,
    },
    "loose": {
        "oscillator": 0.0,
        "whittaker_half": 1e-8,
        "inverse_square": 1e-9,
        "whittaker_general": 1e-9,
        "airy": 1e-4,
        "gaussian_first_order": 1e-8,
        "plane_wave": 1e-10,
    },
}

RELATIVE_SUITES = frozenset({"inverse_square", "whittaker_general"})

SUITE_DEFAULTS = {
    "oscillator": {"a": Fraction(1), "X0": Fraction(1), "P0": Fraction(0), "steps": 100},
    "whittaker_half": {"kappa": 2, "start": 1, "stop": 41},
    "inverse_square": {"kappa": 0.1875, "a": 1.0, "C1": 1.0, "C2": 0.0, "start": 1, "stop": 20},
    "whittaker_general": {"kappa": 0.7, "mu": 0.3, "C1": 1.0, "C2": 0.5, "start": 0.5, "count": 20},
    "airy": {"a": 0.5, "count": 7, "method": "quadrature"},
    "gaussian_first_order": {"a": 0.5, "count": 9, "method": "u_identity"},
    "plane_wave": {"omega": Fraction(1, 2), "k": Fraction(1, 2), "a": Fraction(1, 2),
                   "b": Fraction(1, 2), "size": 6, "exact": False},
}

SUITES = tuple(SUITE_DEFAULTS)


def _grid(f, a, origin, count, allow_negative=False):
    return GridFunction.sample(f, Lattice(a, allow_negative=allow_negative), origin, count)


def _suite_oscillator(c):
    a = c["a"]
    s0 = OscillatorState(c["X0"], c["P0"], 0 * a, a)
    X = _grid(lambda t: oscillator_evolve(s0, t).X, a, 0 * a, c["steps"] + 3)
    return apply_operator(oscillator_operator(), X), X


def _suite_whittaker_half(c):
    k = c["kappa"]
    count = (c["stop"] - c["start"]) // 2 + 1
    Y = _grid(lambda x: c1c2_closed(k, x, c.get("C1", 1), c.get("C2", 0)), 2, c["start"], count + 2)
    return apply_operator(whittaker_operator(k, 0.5, 2), Y), Y


def _suite_inverse_square(c):
    k, a = c["kappa"], c["a"]
    count = c["stop"] - c["start"] + 1
    Y = _grid(lambda x: inverse_square_closed(k, a, x, c["C1"], c["C2"]), a, c["start"] * a, count + 2)
    return apply_operator(inverse_square_operator(k, a), Y), Y


def _suite_whittaker_general(c):
    p = WhittakerParams(c["kappa"], c["mu"], c["C1"], c["C2"])
    Y = _grid(lambda x: whittaker_a2_closed(p, x), 2, c["start"], c["count"] + 2)
    return apply_operator(whittaker_operator(p.kappa, p.mu, 2), Y), Y


def _suite_airy(c):
    a = c["a"]
    if c["method"] == "series_exact":
        a = Fraction(a).limit_denominator(1 << 20)
        parts = [_grid(lambda x, i=i: um_airy_parts(x, a)[i], a, 0 * a, c["count"] + 3) for i in (0, 1)]
        res = [apply_operator(airy_operator(a), g) for g in parts]
        worst = max(res, key=lambda r: max(abs(v) for v in r.samples))
        return worst, parts[0]
    Y = _grid(lambda x: um_airy(x, a, c["method"]), a, 0.0, c["count"] + 3, allow_negative=True)
    return apply_operator(airy_operator(a), Y), Y


def _suite_gaussian(c):
    a = c["a"]
    if c["method"] == "series":
        a = Fraction(a).limit_denominator(1 << 20)
    G = _grid(lambda x: um_gaussian(x, a, c["method"]), a, 0 * a, c["count"] + 2)
    return apply_operator(gaussian_operator(a), G), G


def _wave_residual(rows, n, a, b):
    # (Delta_x^2 - Delta_t^2) F on the n x n corner of the sample table
    out = []
    for j in range(n):
        for i in range(n):
            dxx = (rows[j][i + 2] - 2 * rows[j][i + 1] + rows[j][i]) / (b * b)
            dtt = (rows[j + 2][i] - 2 * rows[j + 1][i] + rows[j][i]) / (a * a)
            out.append(dxx - dtt)
    return out


def _suite_plane_wave(c):
    p = WaveParams(c["omega"], c["k"], c["a"], c["b"])
    n = c["size"]
    pts = [[(i * p.b, j * p.a) for i in range(n + 2)] for j in range(n + 2)]
    if c["exact"]:
        # linear operator with real coefficients: treat the two parts separately
        parts = [[plane_wave_parts(p, x, t) for x, t in row] for row in pts]
        re = _wave_residual([[v[0] for v in row] for row in parts], n, p.a, p.b)
        im = _wave_residual([[v[1] for v in row] for row in parts], n, p.a, p.b)
        res = [complex(r, i) if (r or i) else 0 for r, i in zip(re, im)]
        mags = [abs(complex(*v)) for row in parts for v in row]
    else:
        vals = [[plane_wave(p, x, t) for x, t in row] for row in pts]
        res = _wave_residual(vals, n, p.a, p.b)
        mags = [abs(v) for row in vals for v in row]
    return GridFunction(Lattice(p.a), 0, res), GridFunction(Lattice(p.a), 0, mags)


_RUNNERS = {
    "oscillator": _suite_oscillator,
    "whittaker_half": _suite_whittaker_half,
    "inverse_square": _suite_inverse_square,
    "whittaker_general": _suite_whittaker_general,
    "airy": _suite_airy,
    "gaussian_first_order": _suite_gaussian,
    "plane_wave": _suite_plane_wave,
}


def residual_suite(name, config=None, profile="default"):
    """Build the named solution grid, apply its operator and report the residual."""
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    c = dict(SUITE_DEFAULTS[name])
    c.update(config or {})
    residual, F = _RUNNERS[name](c)
    bound = TOLERANCE_PROFILES[profile][name]
    return report(name, residual, F, bound, name in RELATIVE_SUITES)


def run_all(profile="default", configs=None):
    configs = configs or {}
    return [residual_suite(n, configs.get(n), profile) for n in SUITES]


# ---------------------------------------------------------------------------
# continuum limit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContinuumTable:
    rows: tuple
    monotone: bool
    non_monotone_at: tuple = field(default_factory=tuple)


def continuum_limit_check(family, reference, xs, schedule):
    """max_x |family(x, a) - reference(x)| for each a in a strictly decreasing schedule."""
    schedule = list(schedule)
    if any(b >= a for a, b in zip(schedule, schedule[1:])) or schedule[-1] <= 0:
        raise ValueError("schedule must decrease strictly and stay positive")
    ref = [reference(x) for x in xs]
    rows = []
    for a in schedule:
        dev = max(abs(family(x, a) - r) for x, r in zip(xs, ref))
        rows.append((a, dev))
    bad = tuple(rows[i + 1][0] for i in range(len(rows) - 1) if not rows[i + 1][1] < rows[i][1])
    return ContinuumTable(tuple(rows), not bad, bad)


def umbral_exp_family(lam=1.0):
    return lambda x, a: umbral_exp(lam, x, a)
