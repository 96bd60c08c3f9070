"""One-soliton Toda lattice: the continuum-time solution and its time-umbral image.

With z = -alpha e^(-beta n) and c = gamma a, the umbral coordinate at t = m a is

    Q(n, m a) = q(n, 0) + sum_{j=1}^m c^j C(m, j) [Phi(z e^-beta, 1-j, 0) - Phi(z, 1-j, 0)]

where Phi(., 1-j, 0) is the rational Lerch sum from specfun.  The momentum
P = Delta Q has the same structure with one extra power of k.
"""

import math
from dataclasses import dataclass

from ..errors import ConvergenceError, DomainError
from ..specfun import MAX_TERMS, lerch_nonpos


@dataclass(frozen=True)
class TodaParams:
    q0: float = 0.0
    alpha: float = 1.0
    beta: float = 1.0
    branch: int = 1

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError("alpha must be positive")
        if self.beta == 0:
            raise DomainError("beta must be nonzero")
        if self.branch not in (1, -1):
            raise DomainError("branch must be +1 or -1")

    @property
    def gamma(self):
        return self.branch * 2 * math.sinh(self.beta / 2)

    @property
    def velocity(self):
        return self.gamma / self.beta


def _softplus(u):
    return u + math.log1p(math.exp(-u)) if u > 0 else math.log1p(math.exp(u))


def _logistic(u):
    if u >= 0:
        return 1 / (1 + math.exp(-u))
    e = math.exp(u)
    return e / (1 + e)


def toda_continuum(n, t, params):
    """(q, p) of the continuum-time soliton at site n, time t."""
    la = math.log(params.alpha)
    g, b = params.gamma, params.beta
    u0 = la - b * n + g * t
    u1 = la - b * (n + 1) + g * t
    q = params.q0 + _softplus(u0) - _softplus(u1)
    p = g * (_logistic(u0) - _logistic(u1))
    return q, p


def _z(n, params):
    return -params.alpha * math.exp(-params.beta * n)


def _check_domain(z, continue_analytically):
    if abs(z) >= 1 and not continue_analytically:
        raise DomainError(
            f"|z| = {abs(z):.6g} >= 1: the soliton series diverges at this site "
            "(pass continue_analytically=True to use the rational closed form)"
        )


def _binomial_sum(n, m, a, params, shift, continue_analytically):
    z = _z(n, params)
    _check_domain(z, continue_analytically)
    zb = z * math.exp(-params.beta)
    c = params.gamma * a
    total = 0.0
    for j in range(1 if shift == 0 else 0, m + 1):
        r = lerch_nonpos(zb, j + shift) - lerch_nonpos(z, j + shift)
        total += c ** j * math.comb(m, j) * r
    return total


def toda_umbral(n, m, a, params, continue_analytically=False):
    """Umbral Q(n, m a) from the closed rational form.

    The defining series converges only for |z| < 1; elsewhere a DomainError
    is raised unless ``continue_analytically`` is set, in which case the
    rational functions (and q(n, 0)) supply the continuation.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    q, _ = toda_continuum(n, 0.0, params)
    if m == 0:
        _check_domain(_z(n, params), continue_analytically)
        return q
    return q + _binomial_sum(n, m, a, params, 0, continue_analytically)


def toda_umbral_momentum(n, m, a, params, continue_analytically=False):
    """Umbral P(n, m a) = gamma sum_{j=0}^m C(m, j) (gamma a)^j [Phi(z e^-b, -j, 0) - Phi(z, -j, 0)]."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return params.gamma * _binomial_sum(n, m, a, params, 1, continue_analytically)


def toda_series(n, m, a, params, tol=1e-18):
    """Q(n, m a) by direct summation of sum_k z^k/k (e^(-k beta) - 1)(1 + gamma a k)^m.

    Terms are added until |z|^k (1 + |c| k)^m drops below ``tol``.
    """
    z = _z(n, params)
    if abs(z) >= 1:
        raise DomainError(f"|z| = {abs(z):.6g} >= 1: series diverges")
    c = params.gamma * a
    b = params.beta
    terms = []
    zk = 1.0
    for k in range(1, MAX_TERMS):
        zk *= z
        terms.append(zk / k * math.expm1(-k * b) * (1 + c * k) ** m)
        if abs(zk) * (1 + abs(c) * k) ** m < tol:
            return params.q0 + math.fsum(terms)
    raise ConvergenceError("Toda series did not converge", terms=MAX_TERMS)
