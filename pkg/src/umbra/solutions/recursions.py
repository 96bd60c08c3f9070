"""One-term recursions Y(x + s) = r(x) Y(x) and their closed-form solutions.

At spacing a = 2 the umbral Whittaker equation, and at mu a^2 = 1 the
umbral inverse-square equation, both collapse to a single multiplicative
step.  The general solution then carries two constants: one gamma-ratio
particular solution times C1, plus a period-s multiple of it times C2.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .._numeric import is_exact, neg_one_pow
from ..core import GridFunction, Lattice
from ..errors import PoleError
from ..specfun import gamma, gamma_ratio, rgamma


def _div(num, den):
    if den == 0:
        raise ZeroDivisionError("ratio denominator vanishes")
    if is_exact(num, den):
        return Fraction(num) / den
    return num / den


def first_order_iterate(ratio, x0, Y0, steps, stride):
    """Samples Y(x0 + j*stride), j = 0..steps, from Y(x + stride) = ratio(x) Y(x)."""
    ys = [Y0]
    x = x0
    y = Y0
    for j in range(steps):
        try:
            r = ratio(x)
        except ZeroDivisionError as exc:
            raise PoleError(f"recursion multiplier is singular at x = {x} (step {j})", index=j) from exc
        if not cmath.isfinite(r):
            raise PoleError(f"recursion multiplier is singular at x = {x} (step {j})", index=j)
        y = r * y
        ys.append(y)
        x = x + stride
    return GridFunction(Lattice(stride, allow_negative=True), x0, ys)


def whittaker_half_ratio(kappa):
    """Multiplier 2 (x - 2 kappa)/x for stride 2 (mu = 1/2)."""
    return lambda x: _div(2 * (x - 2 * kappa), x)


def whittaker_a2_ratio(kappa, mu):
    """Multiplier 2 (x + 2)(x - 2 kappa) / ((x + 1 + 2 mu)(x + 1 - 2 mu)) for stride 2."""
    return lambda x: _div(2 * (x + 2) * (x - 2 * kappa), (x + 1 + 2 * mu) * (x + 1 - 2 * mu))


def inverse_square_ratio(kappa, a):
    """Multiplier 2 s (s + 1) / (s^2 + s + kappa), s = x/a, for stride a."""
    def r(x):
        s = _div(x, a)
        return _div(2 * s * (s + 1), s * s + s + kappa)
    return r


@dataclass(frozen=True)
class WhittakerParams:
    kappa: object
    mu: object = Fraction(1, 2)
    C1: complex = 1
    C2: complex = 0


def _pow2(e):
    return cmath.exp(e * math.log(2)) if isinstance(e, complex) else 2.0 ** e


def _signed_inf(c):
    if isinstance(c, complex):
        return complex(math.inf, 0) if c.imag == 0 else complex(math.inf, math.inf)
    return math.copysign(math.inf, c)


def _c1_term(C1, numer, denom):
    if C1 == 0:
        return 0.0
    try:
        return C1 * gamma_ratio(numer, denom)
    except PoleError:
        return _signed_inf(C1)


def whittaker_a2_closed(params, x):
    """General solution of Y(x+2) = 2(x+2)(x-2k) Y(x) / ((x+1+2m)(x+1-2m)).

    Y = 2^(x/2) / (G(x/2+1/2+m) G(x/2+1/2-m))
          * (G(1+x/2) G(x/2-k) C1 + C2 / (G(-x/2) G(1+k-x/2))).

    The C2 part is entire and evaluated with reciprocal gammas.  Where the C1
    part has a pole the result is an infinity carrying the sign of C1.
    """
    k, m = float(params.kappa), float(params.mu)
    h = x / 2
    c1 = _c1_term(params.C1, [1 + h, h - k], [h + 0.5 + m, h + 0.5 - m])
    if cmath.isinf(c1):
        return c1
    c2 = 0.0
    if params.C2 != 0:
        c2 = params.C2 * rgamma(h + 0.5 + m) * rgamma(h + 0.5 - m) * rgamma(-h) * rgamma(1 + k - h)
    return _pow2(h) * (c1 + c2)


def c1c2_closed(kappa, x, C1=1, C2=0):
    """mu = 1/2 solution  2^(x/2) G(x/2-k)/G(x/2) C1 + (-2)^(x/2) C2 / (G(x/2) G(1-x/2+k)).

    (-2)^(x/2) is taken on the principal branch, (-1)^(x/2) = exp(i pi x/2).
    """
    k = float(kappa)
    h = x / 2
    c1 = _c1_term(C1, [h - k], [h])
    if cmath.isinf(c1):
        return c1
    c2 = 0.0
    if C2 != 0:
        c2 = C2 * neg_one_pow(h) * rgamma(h) * rgamma(1 - h + k)
    return _pow2(h) * (c1 + c2)


def c1c2_constants(kappa, Y_top, Y_two):
    """(C1, C2) from Y(2 + 2 kappa) and Y(2), valid for 0 < kappa < 1."""
    k = float(kappa)
    if not 0 < k < 1:
        raise ValueError("constant recovery needs 0 < kappa < 1")
    C1 = gamma(1 + k) / 2 ** (1 + k) * Y_top
    C2 = math.pi / math.sin(math.pi * k) * C1 - 0.5 * gamma(k) * Y_two
    return C1, C2


def inverse_square_roots(kappa):
    d = cmath.sqrt(1 - 4 * kappa)
    if d.imag == 0:
        d = d.real
    return (1 + d) / 2, (1 - d) / 2


def inverse_square_closed(kappa, a, x, C1=1, C2=0):
    """General solution of Y(x+a) = 2 s(s+1) Y(x) / ((s + r+)(s + r-)), s = x/a.

    Y = 2^s / (G(s + r+) G(s + r-)) * (G(1+s) G(s) C1 + C2 / (G(-s) G(1-s))),
    r+- = (1 +- sqrt(1 - 4 kappa))/2.
    """
    s = x / a
    rp, rm = inverse_square_roots(kappa)
    c1 = _c1_term(C1, [1 + s, s], [s + rp, s + rm])
    if cmath.isinf(c1):
        return c1
    c2 = 0.0
    if C2 != 0:
        c2 = C2 * rgamma(s + rp) * rgamma(s + rm) * rgamma(-s) * rgamma(1 - s)
    out = _pow2(s) * (c1 + c2)
    if isinstance(out, complex) and not any(isinstance(v, complex) for v in (kappa, a, x, C1, C2)):
        # conjugate roots: the gamma product is |G(s + r+)|^2, real up to rounding
        return out.real
    return out
