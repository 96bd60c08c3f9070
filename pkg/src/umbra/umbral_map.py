"""Umbral transforms.

A continuum function f(x) = sum c_n x**n is sent to F(x) = sum c_n [x]^n.
Three routes are offered: the term-by-term power series, the Fourier
functional  F(x) = int dw/2pi fhat(w) (1 + i w a)**(x/a), and closed-form
rewrites of hypergeometric sources x**g e**(l x) pFq(alpha; beta; c x**k).
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from ._numeric import is_exact, lattice_index, ratio
from ._quad import QuadBudget, cquad
from .core import falling_factorial, umbral_exp
from .errors import ConvergenceError, DomainError, PoleError, QuadratureError
from .specfun import (
    MAX_TERMS,
    SMALL_TERMS_NEEDED,
    HyperSpec,
    Prefactor,
    incomplete_gamma_upper_scaled,
    pochhammer,
)


# ---------------------------------------------------------------------------
# power-series route
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UmbralSeries:
    """Coefficients c_n of f(x) = sum c_n x**n.

    ``coefficients`` is either a finite sequence (zero beyond its end) or a
    callable n -> c_n.
    """

    coefficients: object
    radius_hint: float = None

    def coefficient(self, n):
        c = self.coefficients
        if callable(c):
            return c(n)
        return c[n] if n < len(c) else 0

    @property
    def finite_length(self):
        return None if callable(self.coefficients) else len(self.coefficients)

    def derivative(self):
        return UmbralSeries(lambda n: (n + 1) * self.coefficient(n + 1), self.radius_hint)

    @classmethod
    def exponential(cls, lam):
        """e**(lam x)."""
        lam = Fraction(lam) if isinstance(lam, int) else lam
        return cls(lambda n: lam ** n / math.factorial(n))

    @classmethod
    def geometric(cls):
        """1/(1 - x)."""
        return cls(lambda n: 1, radius_hint=1.0)

    @classmethod
    def gaussian(cls):
        """exp(-x**2)."""
        def c(n):
            if n % 2:
                return 0
            m = n // 2
            return Fraction((-1) ** m, math.factorial(m))
        return cls(c)

    @classmethod
    def hypergeometric(cls, numer, denom, scale=1, k=1):
        """pFq(numer; denom; scale * x**k)."""
        exact_params = is_exact(*numer, *denom, scale)

        def c(n):
            if n % k:
                return 0
            m = n // k
            v = Fraction(1) if exact_params else 1.0
            for p in numer:
                v *= pochhammer(p, m)
            for q in denom:
                v /= pochhammer(q, m)
            return v * scale ** m / math.factorial(m)
        return cls(c)

    @classmethod
    def from_source(cls, inp):
        """Series of x**gamma e**(lam x) pFq(alpha; beta; c x**k) for integer gamma >= 0."""
        g = inp.gamma_exp
        if not (isinstance(g, int) or (isinstance(g, Fraction) and g.denominator == 1)) or g < 0:
            raise ValueError("a power series needs a nonnegative integer overall power")
        g = int(g)
        h = inp.hyper
        hyp = cls.hypergeometric(h.numer, h.denom, h.z, inp.k)
        lam = Fraction(inp.lambda_exp) if isinstance(inp.lambda_exp, int) else inp.lambda_exp

        def c(n):
            if n < g:
                return 0
            m = n - g
            return sum(lam ** (m - i) / math.factorial(m - i) * hyp.coefficient(i)
                       for i in range(m + 1))
        return cls(c)


def umbral_series_transform(series, x, a, tol=1e-16):
    """sum c_n [x]^n.

    On the lattice (x/a = N a nonnegative integer) the sum stops at n = N and
    is exact for exact input.  Off the lattice, partial sums run until three
    consecutive terms are below ``tol`` relative to the total, capped at
    10**5 terms.
    """
    n_stop = lattice_index(x, a, tol=0.0) if is_exact(x, a) else lattice_index(x, a)
    if n_stop is not None and n_stop >= 0:
        total = 0
        basic = 1
        for n in range(n_stop + 1):
            total += series.coefficient(n) * basic
            basic = basic * (x - n * a)
        return total
    limit = series.finite_length
    total = 0.0
    basic = 1.0
    small = 0
    for n in range(MAX_TERMS if limit is None else limit):
        term = series.coefficient(n) * basic
        total += term
        basic = basic * (x - n * a)
        if term == 0 or abs(term) <= tol * abs(total):
            small += 1
            if small >= SMALL_TERMS_NEEDED:
                return total
        else:
            small = 0
    if limit is not None:
        return total
    raise ConvergenceError(
        f"umbral series did not converge in {MAX_TERMS} terms at x = {x}",
        terms=MAX_TERMS, estimate=total,
    )


# ---------------------------------------------------------------------------
# hypergeometric mapping rules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LemmaInput:
    """Source  x**gamma_exp * e**(lambda_exp x) * pFq(hyper.numer; hyper.denom; hyper.z * x**k).

    ``hyper.z`` plays the role of the scale c multiplying x**k.
    """

    gamma_exp: object
    lambda_exp: object
    k: int
    hyper: HyperSpec
    a: object

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")


def _new_numer(x, a, gamma_exp, k):
    s = ratio(x, a)
    if is_exact(s, gamma_exp):
        return tuple((Fraction(j) + gamma_exp - s) / k for j in range(k))
    return tuple((j + gamma_exp - s) / k for j in range(k))


def _check_base(a, lam):
    base = 1 + a * lam
    if base == 0:
        raise PoleError("1 + a*lambda vanishes")
    return base


def umbral_hyper_map(inp, x):
    """Umbral image at x of x**g e**(l x) pFq(alpha; beta; c x**k), as a HyperSpec.

    The result is
        a**g Gamma(x/a+1)/Gamma(x/a-g+1) (1+a l)**(x/a-g)
          * p+kFq(alpha, (g-x/a)/k, ..., (k-1+g-x/a)/k; beta; c (-a k/(1+a l))**k).
    """
    a, g, lam, k = inp.a, inp.gamma_exp, inp.lambda_exp, inp.k
    base = _check_base(a, lam)
    h = inp.hyper
    if is_exact(a, base, h.z):
        w = Fraction(-a * k) / base
    else:
        w = -a * k / base
    z = h.z * w ** k
    numer = h.numer + _new_numer(x, a, g, k)
    exp_power = ratio(x, a) - g
    pre = Prefactor(scalar=1, exp_base=base, exp_power=exp_power, power=(x, a, g))
    return HyperSpec(numer, h.denom, z, pre)


def hyper_map_linear(spec, x, a):
    """pFq(alpha; beta; x) -> p+1Fq(alpha, -x/a; beta; -a)."""
    return HyperSpec(spec.numer + (-ratio(x, a),), spec.denom, spec.z * -a)


def hyper_map_power(spec, k, x, a):
    """pFq(alpha; beta; c x**k) -> p+kFq(alpha, (j - x/a)/k, j < k; beta; c (-a k)**k)."""
    s = ratio(x, a)
    if is_exact(s):
        extra = tuple((Fraction(j) - s) / k for j in range(k))
    else:
        extra = tuple((j - s) / k for j in range(k))
    w = Fraction(-a * k) if is_exact(a) else -a * k
    return HyperSpec(spec.numer + extra, spec.denom, spec.z * w ** k)


def hyper_map_exp(spec, lam, k, x, a):
    """e**(lam x) pFq(alpha; beta; c x**k) -> (1 + a lam)**(x/a) p+kFq(...; c (-a k/(1 + a lam))**k)."""
    base = _check_base(a, lam)
    s = ratio(x, a)
    if is_exact(s):
        extra = tuple((Fraction(j) - s) / k for j in range(k))
    else:
        extra = tuple((j - s) / k for j in range(k))
    w = Fraction(-a * k) / base if is_exact(a, base, spec.z) else -a * k / base
    return HyperSpec(spec.numer + extra, spec.denom, spec.z * w ** k,
                     Prefactor(exp_base=base, exp_power=s))


# ---------------------------------------------------------------------------
# Fourier route
# ---------------------------------------------------------------------------

class _Delta:
    def __repr__(self):
        return "DELTA"


DELTA = _Delta()


@dataclass(frozen=True)
class Spectrum:
    """Analytically known transform fhat(w) = int f(t) e**(-i w t) dt."""

    fhat: object
    cutoff: float = math.inf


@dataclass(frozen=True)
class Lines:
    """Point spectrum: f(t) = sum weight * e**(i w t) over (w, weight) pairs."""

    lines: tuple


@dataclass(frozen=True)
class Signal:
    """A plain real function f(t); its transform is computed by quadrature."""

    f: object
    support: tuple = (-math.inf, math.inf)


SIGNAL_BUDGET = QuadBudget(epsabs=1e-9, epsrel=1e-7)


def _umbral_wave(w, s, a):
    # (1 + i w a)**s on the principal branch; the base has real part 1
    return cmath.exp(s * cmath.log(complex(1.0, w * a)))


def _fourier_piece(g, lo, hi, w, budget):
    # int_lo^hi g(t) e**(-i w t) dt for real g and lo finite, with
    # QUADPACK's Fourier weights handling the oscillation
    if w == 0:
        v, _ = cquad(g, lo, hi, budget, real_only=True)
        return complex(v)
    c, _ = cquad(g, lo, hi, budget, real_only=True, weight="cos", wvar=abs(w))
    s, _ = cquad(g, lo, hi, budget, real_only=True, weight="sin", wvar=abs(w))
    return complex(c, -math.copysign(s, w) if s else 0.0)


def _signal_spectrum(sig, budget):
    lo, hi = sig.support
    f = sig.f

    def fhat(w):
        if lo > -math.inf:
            return _fourier_piece(f, lo, hi, w, budget)
        # reflect the left half line: int_{-inf}^{c} f(t) e**(-i w t) dt
        # equals int_{-c}^{inf} f(-u) e**(i w u) du
        c = min(hi, 0.0)
        left = _fourier_piece(lambda u: f(-u), -c, math.inf, -w, budget)
        if hi == c:
            return left
        return left + _fourier_piece(f, c, hi, w, budget)
    return fhat


SIGNAL_FLOOR = 1e-10


def _signal_cutoff(fhat, s, a):
    # quadrature noise in fhat is amplified by the growing wave at large |w|;
    # stop at the first doubling where the integrand is below the noise floor
    peak = abs(fhat(0.0))
    w = 1.0
    while w < 1e6:
        tail = max(abs(fhat(v) * _umbral_wave(v, s, a)) for v in (w, -w))
        if tail <= SIGNAL_FLOOR * peak:
            return w
        w *= 2
    raise QuadratureError(f"spectrum of the signal does not decay fast enough (x/a = {s})")


def fourier_umbral_transform(source, x, a, quad=QuadBudget()):
    """int dw/2pi fhat(w) (1 + i w a)**(x/a).

    ``source`` is DELTA, a Spectrum, a Lines point spectrum or a Signal.
    The delta case has no decaying integrand on the real w line; it is
    evaluated on the unit arc u = 1 + i w a = e**(i phi), |phi| < pi/2, which
    gives the regularized value sin(pi (1 + x/a)/2) / (pi (a + x)).
    """
    s = float(ratio(x, a))
    a = float(a)
    if source is DELTA:
        if abs(1 + s) < 1e-15:
            return 1 / (2 * a)
        val, _ = cquad(lambda phi: cmath.exp(1j * (s + 1) * phi), -math.pi / 2, math.pi / 2, quad)
        return (val / (2 * math.pi * a)).real
    if isinstance(source, Lines):
        return sum(wt * umbral_exp(1j * w, x, a) for w, wt in source.lines)
    if isinstance(source, Signal):
        fhat = _signal_spectrum(source, SIGNAL_BUDGET)
        quad = QuadBudget(epsabs=max(quad.epsabs, 1e-7), epsrel=max(quad.epsrel, 1e-5),
                          limit=quad.limit)
        cutoff = _signal_cutoff(fhat, s, a)
    elif isinstance(source, Spectrum):
        fhat = source.fhat
        cutoff = source.cutoff
    else:
        raise TypeError(f"unsupported Fourier source {source!r}")
    val, _ = cquad(lambda w: fhat(w) * _umbral_wave(w, s, a), -cutoff, cutoff, quad)
    val /= 2 * math.pi
    return val.real if abs(val.imag) <= 1e-14 * max(1.0, abs(val.real)) else val


def gaussian_spectrum(width=1.0):
    """Spectrum of exp(-(t/width)**2)."""
    return Spectrum(lambda w: width * math.sqrt(math.pi) * math.exp(-(w * width) ** 2 / 4))


# ---------------------------------------------------------------------------
# 1/(1 - t)
# ---------------------------------------------------------------------------

def rational_geom_transform(t, a):
    """Umbral image of 1/(1 - t): e**(1/a) a**(t/a) Gamma(t/a + 1, 1/a)."""
    s = float(ratio(t, a))
    a = float(a)
    if not a > 0:
        raise DomainError("rational_geom_transform needs a > 0")
    if not s > -1:
        raise DomainError(f"rational_geom_transform needs t/a > -1, got {s}")
    return incomplete_gamma_upper_scaled(s + 1, 1 / a) / a


def rational_geom_lattice_sum(t, a):
    """The same image as the finite sum of [t]^n when t/a is a nonnegative integer."""
    n = lattice_index(t, a, tol=0.0) if is_exact(t, a) else lattice_index(t, a)
    if n is None or n < 0:
        raise DomainError("finite sum needs t/a a nonnegative integer")
    return sum(falling_factorial(t, a, j) for j in range(n + 1))
