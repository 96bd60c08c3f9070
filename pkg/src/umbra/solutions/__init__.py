"""Closed-form umbral solutions."""

from .hyper import (
    um_airy,
    um_airy_parts,
    um_airy_quadrature,
    um_gaussian,
    um_gaussian_spec,
    um_whittaker_m,
    um_whittaker_m_spec,
    whittaker_m,
    whittaker_m_source,
)
from .oscillator import (
    OscillatorState,
    oscillator_energy,
    oscillator_evolve,
    oscillator_frequency,
    oscillator_trajectory,
)
from .recursions import (
    WhittakerParams,
    c1c2_closed,
    c1c2_constants,
    first_order_iterate,
    inverse_square_closed,
    inverse_square_ratio,
    inverse_square_roots,
    whittaker_a2_closed,
    whittaker_a2_ratio,
    whittaker_half_ratio,
)
from .toda import TodaParams, toda_continuum, toda_series, toda_umbral, toda_umbral_momentum
from .waves import WaveParams, phase_velocity, plane_wave, plane_wave_parts, refraction_index
