"""Umbral images of hypergeometric-type solutions: whittakerM, Airy Ai and
the Gaussian."""

import cmath
import math
from fractions import Fraction

from .._numeric import is_exact, lattice_index, ratio
from .._quad import QuadBudget, cquad_segments
from ..errors import DomainError
from ..specfun import AIRY_C1, AIRY_C2, HyperSpec, airy_ai_ref, hyper_eval, kummer_m, tricomi_u
from ..umbral_map import LemmaInput, umbral_hyper_map

AIRY_BUDGET = QuadBudget(epsabs=1e-14, epsrel=1e-12, limit=400)
_ROT = cmath.exp(1j * math.pi / 6)


def whittaker_m(kappa, mu, x):
    """Continuum M_{kappa,mu}(x) = e^(-x/2) x^(mu+1/2) M(mu-kappa+1/2, 1+2mu, x), x > 0."""
    return math.exp(-x / 2) * x ** (mu + 0.5) * kummer_m(mu - kappa + 0.5, 1 + 2 * mu, x)


def whittaker_m_source(kappa, mu, a):
    half = Fraction(1, 2) if is_exact(kappa, mu) else 0.5
    h = HyperSpec((mu - kappa + half,), (1 + 2 * mu,), 1)
    return LemmaInput(mu + half, -half, 1, h, a)


def um_whittaker_m_spec(kappa, mu, x, a):
    return umbral_hyper_map(whittaker_m_source(kappa, mu, a), x)


def um_whittaker_m(kappa, mu, x, a):
    """Umbral whittakerM for 0 < a < 2:

    G(x/a+1)/G(x/a-mu+1/2) a^(mu+1/2) (1-a/2)^(x/a-mu-1/2)
        * 2F1(mu+1/2-kappa, mu+1/2-x/a; 2mu+1; 2a/(a-2)).
    """
    if not 0 < a < 2:
        raise DomainError(f"um_whittaker_m needs 0 < a < 2, got {a}; use whittaker_a2_closed at a = 2")
    return hyper_eval(um_whittaker_m_spec(kappa, mu, x, a))


# ---------------------------------------------------------------------------
# Airy
# ---------------------------------------------------------------------------

def _airy_sources(a):
    third = Fraction(1, 3) if is_exact(a) else 1 / 3
    f = LemmaInput(0, 0, 3, HyperSpec((), (2 * third,), third * third), a)
    g = LemmaInput(1, 0, 3, HyperSpec((), (4 * third,), third * third), a)
    return f, g


def um_airy_parts(x, a):
    """The two terminating 3F1 pieces (F, G) with UmAiryAi = c1 F - c2 G.

    F = 3F1(-N/3, (1-N)/3, (2-N)/3; 2/3; -3a^3) and
    G = x 3F1((1-N)/3, (2-N)/3, (3-N)/3; 4/3; -3a^3), N = x/a.
    Exact for exact x and a.  Each piece solves the difference equation on
    its own.
    """
    n = lattice_index(x, a, tol=0.0) if is_exact(x, a) else lattice_index(x, a)
    if n is None or n < 0:
        raise DomainError(f"series route needs x/a a nonnegative integer, got x/a = {ratio(x, a)}")
    f, g = _airy_sources(a)
    return hyper_eval(umbral_hyper_map(f, x)), hyper_eval(umbral_hyper_map(g, x))


def _airy_upper_limit(s, a):
    r = 4.0
    while r ** 3 / 3 - abs(s) * math.log1p(abs(a) * r) < 45:
        r *= 1.25
    return r


def um_airy_quadrature(x, a, budget=AIRY_BUDGET):
    """(1/pi) Re int_0^inf e^(i s^3/3) (1 + i s a)^(x/a) ds along arg s = pi/6.

    On that ray e^(i s^3/3) = e^(-r^3/3), and the branch point s = i/a lies
    on the imaginary axis, so the rotation crosses no singularity for either
    sign of a.
    """
    s = float(ratio(x, a))
    a = float(a)
    r_max = _airy_upper_limit(s, a)
    breaks = [r_max * j / 6 for j in range(7)]

    def integrand(r):
        w = r * _ROT
        return _ROT * cmath.exp(-r ** 3 / 3 + s * cmath.log(1 + 1j * a * w))
    val, _ = cquad_segments(integrand, breaks, budget)
    return val.real / math.pi


def um_airy(x, a, method="quadrature"):
    """Umbral Airy Ai; a = 0 gives the continuum function."""
    if a == 0:
        return airy_ai_ref(x)
    if method == "quadrature":
        return um_airy_quadrature(x, a)
    if method == "series":
        if a < 0:
            raise DomainError("series route needs a > 0")
        f, g = um_airy_parts(x, a)
        return AIRY_C1 * float(f) - AIRY_C2 * float(g)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Gaussian
# ---------------------------------------------------------------------------

def um_gaussian_spec(x, a):
    source = LemmaInput(0, 0, 2, HyperSpec((), (), -1), a)
    return umbral_hyper_map(source, x)


def um_gaussian(x, a, method="u_identity"):
    """Umbral image G(x, a) of exp(-x^2).

    "series": the terminating 2F0(-x/2a, (1-x/a)/2;; -4a^2), exact on the lattice.
    "u_identity": (2a)^(x/a-1) U((1-x/a)/2, 3/2, 1/(4a^2)), any real x.
    """
    if a == 0:
        return math.exp(-x * x)
    if method == "series":
        n = lattice_index(x, a, tol=0.0) if is_exact(x, a) else lattice_index(x, a)
        if n is None or n < 0:
            raise DomainError("series route needs x/a a nonnegative integer")
        return hyper_eval(um_gaussian_spec(x, a))
    if method == "u_identity":
        if not a > 0:
            raise DomainError("u_identity route needs a > 0")
        s = float(ratio(x, a))
        a = float(a)
        return (2 * a) ** (s - 1) * tricomi_u((1 - s) / 2, 1.5, 1 / (4 * a * a))
    raise ValueError(f"unknown method {method!r}")
