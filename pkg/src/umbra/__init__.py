"""Umbral calculus on an infinite lattice.

Continuum functions are mapped to lattice counterparts that solve the
corresponding forward-difference equations exactly.
"""

__version__ = "0.1.0"

from .core import (
    GridFunction,
    Lattice,
    falling_factorial,
    forward_difference,
    rising_factorial_inverse,
    umbral_exp,
    umbral_power_gamma,
    umbral_trig,
)
from .errors import (
    BranchCutError,
    ConvergenceError,
    DegenerateParameterError,
    DomainError,
    InsufficientSamplesError,
    ModeError,
    PoleError,
    QuadratureError,
    UmbraError,
)
from .specfun import (
    ConvergenceClass,
    ConvergenceKind,
    HyperSpec,
    Prefactor,
    airy_ai_ref,
    gauss_2f1_ext,
    hyper_eval,
    incomplete_gamma_upper,
    kummer_m,
    lerch_nonpos,
    log_gamma,
    pfq_classify,
    pfq_eval,
    tricomi_u,
)
from .umbral_map import (
    DELTA,
    LemmaInput,
    Lines,
    Signal,
    Spectrum,
    UmbralSeries,
    fourier_umbral_transform,
    rational_geom_transform,
    umbral_hyper_map,
    umbral_series_transform,
)
