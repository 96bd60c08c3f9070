"""Complex-valued wrapper around scipy's adaptive QUADPACK routines."""

import math
import warnings
from dataclasses import dataclass

from scipy import integrate

from .errors import QuadratureError


@dataclass(frozen=True)
class QuadBudget:
    """Tolerances and subdivision limit handed to every adaptive integral."""

    epsabs: float = 1e-13
    epsrel: float = 1e-11
    limit: int = 200

    def accepts(self, value, err, scale=0.0):
        return err <= max(self.epsabs, self.epsrel * max(abs(value), scale)) * 100


def _real_quad(f, lo, hi, budget, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(
            f, lo, hi, epsabs=budget.epsabs, epsrel=budget.epsrel,
            limit=budget.limit, full_output=1, **kw,
        )
    return out[0], out[1]


def cquad(f, lo, hi, budget=QuadBudget(), *, real_only=False, scale=0.0, **kw):
    """Integrate a complex function on [lo, hi]; returns (value, error estimate).

    Raises QuadratureError when the estimate is far outside the budget.  A
    piece of a larger integral can pass ``scale``, the magnitude of the whole,
    so that its relative tolerance is measured against that.
    """
    re, err_re = _real_quad(lambda t: complex(f(t)).real, lo, hi, budget, **kw)
    if real_only:
        value, err = re, err_re
    else:
        im, err_im = _real_quad(lambda t: complex(f(t)).imag, lo, hi, budget, **kw)
        value, err = complex(re, im), math.hypot(err_re, err_im)
    if not math.isfinite(err) or not budget.accepts(value, err, scale):
        raise QuadratureError(
            f"quadrature on [{lo}, {hi}] missed its budget (error estimate {err:.3g})",
            estimate=err,
        )
    return value, err


def cquad_segments(f, breaks, budget=QuadBudget(), *, real_only=False, scale=0.0):
    """Sum of cquad over consecutive segments of ``breaks``.

    The segments are judged jointly: the summed error estimate must fit the
    budget relative to the summed magnitudes of the pieces, so a segment
    that is small next to its neighbours is not held to its own size.
    """
    total = 0.0 if real_only else 0j
    err = 0.0
    mass = 0.0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        v, e = cquad(f, lo, hi, budget, real_only=real_only, scale=math.inf)
        total += v
        err += e
        mass += abs(v)
    if not math.isfinite(err) or not budget.accepts(total, err, max(mass, scale)):
        raise QuadratureError(
            f"quadrature on [{breaks[0]}, {breaks[-1]}] missed its budget (error estimate {err:.3g})",
            estimate=err,
        )
    return total, err
