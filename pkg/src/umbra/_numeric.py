"""Small helpers for the exact/float numeric tower.

Values are plain Python numbers: ``int`` and ``Fraction`` are exact,
``float`` and ``complex`` are not.  Mixing demotes to float the usual way.
"""

import cmath
import math
from fractions import Fraction
from numbers import Number

# snapping tolerance for float lattice indices such as 0.3/0.1
INDEX_TOL = 1e-12


def is_exact(*values):
    return all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in values)


def exact(v):
    """Promote an exact value to ``Fraction`` so that division stays exact."""
    return Fraction(v) if isinstance(v, int) else v


def is_real(v):
    return not isinstance(v, complex)


def real_if_close(v):
    if isinstance(v, complex) and v.imag == 0.0:
        return v.real
    return v


def nearest_int(v, tol=INDEX_TOL):
    """Return ``v`` as an int when it is (numerically) an integer, else None."""
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else None
    if isinstance(v, complex):
        if abs(v.imag) > tol * max(1.0, abs(v.real)):
            return None
        v = v.real
    if not math.isfinite(v):
        return None
    r = round(v)
    if abs(v - r) <= tol * max(1.0, abs(v)):
        return int(r)
    return None


def nonpositive_int(v, tol=INDEX_TOL):
    n = nearest_int(v, tol)
    if n is not None and n <= 0:
        return n
    return None


def ratio(x, a):
    """x/a, exact when both are exact."""
    if is_exact(x, a):
        return Fraction(x) / Fraction(a)
    return x / a


def lattice_index(x, a, tol=INDEX_TOL):
    """Integer N with x == N*a, or None."""
    return nearest_int(ratio(x, a), tol)


def neg_one_pow(s):
    """(-1)**s on the principal branch, exact for integer and half-integer s."""
    n = nearest_int(s, 0.0)
    if n is not None:
        return -1 if n % 2 else 1
    n2 = nearest_int(2 * s, 0.0)
    if n2 is not None:
        return 1j if n2 % 4 == 1 else -1j
    return cmath.exp(1j * math.pi * s)


def gauss_pow(re, im, n):
    """(re + i*im)**n for a nonnegative integer n, componentwise so exact inputs stay exact."""
    if n < 0:
        raise ValueError("gauss_pow needs n >= 0")
    rr, ri = 1, 0
    br, bi = re, im
    while n:
        if n & 1:
            rr, ri = rr * br - ri * bi, rr * bi + ri * br
        br, bi = br * br - bi * bi, 2 * br * bi
        n >>= 1
    return rr, ri


def is_number(v):
    return isinstance(v, Number) and not isinstance(v, bool)
