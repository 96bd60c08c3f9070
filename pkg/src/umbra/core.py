"""Lattice arithmetic: basic polynomials, umbral powers, the umbral
exponential and trigonometric pair, and the forward difference."""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from ._numeric import gauss_pow, is_exact, lattice_index, nearest_int, ratio
from .errors import BranchCutError, DomainError, InsufficientSamplesError, PoleError


@dataclass(frozen=True)
class Lattice:
    """One umbral variable with step ``spacing``.

    ``mode`` is "exact" when the spacing is an int or Fraction and "float"
    otherwise.  Nonpositive spacings are refused unless ``allow_negative``.
    """

    spacing: object
    allow_negative: bool = False

    def __post_init__(self):
        a = self.spacing
        if isinstance(a, int) and not isinstance(a, bool):
            object.__setattr__(self, "spacing", Fraction(a))
            a = self.spacing
        if a == 0:
            raise DomainError("lattice spacing must be nonzero")
        if a < 0 and not self.allow_negative:
            raise DomainError(f"lattice spacing must be positive, got {a}")

    @property
    def mode(self):
        return "exact" if is_exact(self.spacing) else "float"

    def point(self, origin, j):
        return origin + j * self.spacing

    def points(self, origin, count):
        return [origin + j * self.spacing for j in range(count)]

    def index(self, x):
        """Integer N with x = N*a, or None."""
        return lattice_index(x, self.spacing)


def _spacing(a):
    return a.spacing if isinstance(a, Lattice) else a


@dataclass(frozen=True)
class GridFunction:
    """Samples F(origin + j*a), j = 0..len-1."""

    lattice: Lattice
    origin: object
    samples: tuple

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))

    @classmethod
    def sample(cls, f, lattice, origin, count):
        if not isinstance(lattice, Lattice):
            lattice = Lattice(lattice)
        return cls(lattice, origin, [f(x) for x in lattice.points(origin, count)])

    @property
    def spacing(self):
        return self.lattice.spacing

    @property
    def xs(self):
        return self.lattice.points(self.origin, len(self.samples))

    def __len__(self):
        return len(self.samples)

    def __getitem__(self, j):
        return self.samples[j]

    def __iter__(self):
        return iter(self.samples)

    def shifted(self, j):
        """Drop the first j samples; the origin moves by j*a."""
        return GridFunction(self.lattice, self.lattice.point(self.origin, j), self.samples[j:])

    def map(self, f):
        return GridFunction(self.lattice, self.origin, [f(v) for v in self.samples])


def falling_factorial(t, a, n):
    """[t]^n = t (t - a) ... (t - (n-1) a), as a literal product."""
    a = _spacing(a)
    if n < 0:
        raise ValueError("falling_factorial needs n >= 0")
    out = 1
    for j in range(n):
        out = out * (t - j * a)
    return out


def rising_factorial_inverse(t, a, n):
    """[1/t]^n = 1 / ((t + a)(t + 2a) ... (t + n a))."""
    a = _spacing(a)
    if n < 1:
        raise ValueError("rising_factorial_inverse needs n >= 1")
    den = 1
    for j in range(1, n + 1):
        f = t + j * a
        if f == 0:
            raise PoleError(f"factor t + {j}a vanishes", index=j)
        den = den * f
    if is_exact(den):
        return Fraction(1) / den
    return 1 / den


def umbral_power_gamma(x, a, gamma_exp):
    """a^gamma Gamma(x/a + 1) / Gamma(x/a - gamma + 1), the continued power [x]^gamma.

    Integer exponents reduce to the literal products above (exact when the
    inputs are); anything else goes through the gamma-ratio kernel.
    """
    from .specfun import gamma_ratio

    a = _spacing(a)
    g = nearest_int(gamma_exp, 0.0)
    if g is not None:
        if g >= 0:
            return falling_factorial(x, a, g)
        return rising_factorial_inverse(x, a, -g)
    s = ratio(x, a)
    sf = float(s) if not isinstance(s, complex) else s
    r = gamma_ratio([sf + 1], [sf - gamma_exp + 1])
    if isinstance(a, complex) or a < 0:
        return cmath.exp(gamma_exp * cmath.log(a)) * r
    return float(a) ** gamma_exp * r


def umbral_power_base(base, power):
    """base**power on the principal branch, exact for exact base and integer power."""
    n = nearest_int(power, 0.0)
    if n is not None and (is_exact(base) or not isinstance(power, Fraction)):
        if is_exact(base) and n < 0:
            return Fraction(1) / Fraction(base) ** -n
        return base ** n
    return _principal_pow(base, power)


def _principal_pow(base, power):
    if isinstance(base, complex) or base < 0:
        if base == 0:
            return 0.0
        return cmath.exp(complex(power) * cmath.log(complex(base)))
    if base == 0:
        return 0.0 if complex(power).real > 0 else math.inf
    if isinstance(power, complex):
        return cmath.exp(power * math.log(base))
    return float(base) ** float(power)


def umbral_exp(lam, t, a):
    """(1 + lam a)^(t/a): the Delta-eigenfunction with eigenvalue lam.

    For t/a an integer this is a plain (exact) power.  Otherwise the
    principal branch is used and a base on the closed negative real axis
    raises BranchCutError.
    """
    a = _spacing(a)
    base = 1 + lam * a
    n = lattice_index(t, a, tol=0.0) if is_exact(t, a) else lattice_index(t, a)
    if n is not None:
        if n >= 0:
            return base ** n
        if base == 0:
            raise PoleError("umbral exponential has a pole at 1 + lam a = 0", index=n)
        if is_exact(base):
            return Fraction(1) / Fraction(base) ** -n
        return base ** n
    b = complex(base)
    if b.imag == 0 and b.real <= 0:
        raise BranchCutError(f"1 + lam a = {base} lies on the branch cut for t/a = {t / a}")
    if isinstance(base, complex):
        return cmath.exp(ratio(t, a) * cmath.log(b))
    return float(base) ** float(ratio(t, a))


def umbral_trig(t, a):
    """(Sin[t], Cos[t]), the imaginary and real parts of (1 + i a)^(t/a)."""
    a = _spacing(a)
    n = lattice_index(t, a, tol=0.0) if is_exact(t, a) else lattice_index(t, a)
    if n is not None and n >= 0:
        c, s = gauss_pow(Fraction(1) if is_exact(a) else 1.0, a, n)
        return s, c
    # negative or off-lattice t: (1+a^2)^(t/2a) (sin, cos)(t arctan(a)/a)
    a = float(a)
    t = float(t)
    r = (1 + a * a) ** (t / (2 * a))
    phase = t * math.atan(a) / a
    return r * math.sin(phase), r * math.cos(phase)


def forward_difference(F, order=1):
    """Delta^order F with Delta F(t) = (F(t + a) - F(t)) / a."""
    if order < 1:
        raise ValueError("order must be a positive integer")
    if len(F) < order + 1:
        raise InsufficientSamplesError(
            f"need at least {order + 1} samples for a difference of order {order}, got {len(F)}"
        )
    a = F.spacing
    vals = list(F.samples)
    for _ in range(order):
        vals = [(vals[j + 1] - vals[j]) / a for j in range(len(vals) - 1)]
    return GridFunction(F.lattice, F.origin, vals)
