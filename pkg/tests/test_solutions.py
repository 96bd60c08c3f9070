import cmath
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from umbra.core import GridFunction, Lattice, forward_difference
from umbra.errors import DomainError, PoleError
from umbra.solutions import (
    OscillatorState,
    TodaParams,
    WaveParams,
    WhittakerParams,
    c1c2_closed,
    c1c2_constants,
    first_order_iterate,
    inverse_square_closed,
    inverse_square_ratio,
    oscillator_energy,
    oscillator_evolve,
    oscillator_frequency,
    oscillator_trajectory,
    phase_velocity,
    plane_wave,
    plane_wave_parts,
    refraction_index,
    toda_continuum,
    toda_series,
    toda_umbral,
    toda_umbral_momentum,
    um_airy,
    um_airy_parts,
    um_gaussian,
    um_whittaker_m,
    um_whittaker_m_spec,
    whittaker_a2_closed,
    whittaker_a2_ratio,
    whittaker_half_ratio,
    whittaker_m,
    whittaker_m_source,
)
from umbra.specfun import airy_ai_ref
from umbra.umbral_map import UmbralSeries, umbral_series_transform
from umbra.verify import airy_operator, airy_operator_unshifted, apply_operator, gaussian_operator

F = Fraction
AI0 = 0.35502805388781723926


def rel_err(got, want):
    return abs(got - want) / max(abs(want), 1e-300)


# --- oscillator -----------------------------------------------------------

def test_oscillator_period_eight_at_unit_spacing():
    s = oscillator_evolve(OscillatorState(F(1), F(0), 0, F(1)), 8)
    assert (s.X, s.P) == (16, 0)
    assert oscillator_frequency(1) == pytest.approx(math.pi / 4, rel=1e-15)
    assert oscillator_frequency(0) == 1.0


def test_oscillator_identity_at_zero_time():
    s0 = OscillatorState(F(2, 3), F(-1, 5), 0, F(1))
    assert oscillator_evolve(s0, 0) == s0


@settings(max_examples=60, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(0.05, 2), st.floats(-6, 6))
def test_oscillator_routes_agree(X0, P0, a, t):
    s0 = OscillatorState(X0, P0, 0.0, a)
    trig = oscillator_evolve(s0, t)
    spiral = oscillator_evolve(s0, t, route="spiral")
    scale = max(1.0, abs(trig.X), abs(trig.P))
    assert abs(trig.X - spiral.X) <= 1e-12 * scale
    assert abs(trig.P - spiral.P) <= 1e-12 * scale


def test_oscillator_energy_is_conserved_exactly():
    for a in (F(1), F(1, 3), F(5, 2)):
        traj = oscillator_trajectory(OscillatorState(F(3, 4), F(-2), 0, a), 100)
        e0 = oscillator_energy(traj[0])
        assert all(oscillator_energy(s) == e0 for s in traj)
        assert isinstance(e0, Fraction)


def test_oscillator_solves_difference_equation_exactly():
    a = F(2, 7)
    traj = oscillator_trajectory(OscillatorState(F(1), F(1, 2), 0, a), 30)
    X = GridFunction(Lattice(a), 0, [s.X for s in traj])
    P = GridFunction(Lattice(a), 0, [s.P for s in traj])
    assert list(forward_difference(X)) == list(P)[:-1]
    assert list(forward_difference(X, 2)) == [-v for v in list(X)[:-2]]


def test_oscillator_rejects_unknown_route():
    with pytest.raises(ValueError):
        oscillator_evolve(OscillatorState(1, 0, 0, 1), 1, route="euler")


# --- one-term recursions --------------------------------------------------

def test_first_order_iterate_examples():
    Y = first_order_iterate(whittaker_half_ratio(1), 1, F(1), 1, 2)
    assert list(Y) == [1, -2]
    even = first_order_iterate(whittaker_half_ratio(1), 2, F(1), 10, 2)
    assert list(even)[1:] == [0] * 10


def test_first_order_iterate_pole_names_the_step():
    with pytest.raises(PoleError) as info:
        first_order_iterate(whittaker_half_ratio(1), -4, F(1), 5, 2)
    assert info.value.index == 2


def test_iteration_matches_closed_form():
    kappa = 0.35
    Y = first_order_iterate(whittaker_half_ratio(kappa), 1.0, c1c2_closed(kappa, 1.0), 200, 2)
    worst = max(rel_err(y, c1c2_closed(kappa, x)) for x, y in zip(Y.xs, Y))
    assert worst < 1e-10


def test_a2_closed_satisfies_recursion():
    p = WhittakerParams(kappa=2, mu=0.5, C1=1, C2=0)
    r = whittaker_a2_ratio(2, 0.5)
    poles = set()
    for x in range(1, 21):
        y, y2 = whittaker_a2_closed(p, float(x)), whittaker_a2_closed(p, x + 2.0)
        if math.isinf(y):
            poles.add(x)
            continue
        assert abs(y2 - r(x) * y) <= 1e-12 * max(abs(y2), 1e-300)
    # G(x/2 - kappa) has poles at x = 2, 4 inside the window
    assert poles == {2, 4}
    assert whittaker_a2_closed(p, 4.0) == math.inf


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(-3, 3), st.floats(-3, 3), st.floats(0.1, 15))
def test_a2_closed_reduces_to_c1c2_at_half(kappa, C1, C2, x):
    got = whittaker_a2_closed(WhittakerParams(kappa, 0.5, C1, 0), x)
    want = c1c2_closed(kappa, x, C1, 0)
    if math.isinf(want):
        assert got == want
    else:
        assert abs(got - want) <= 1e-12 * max(1.0, abs(want))
    # the C2 parts differ by the period-2 factor -sin(pi x/2) e**(-i pi x/2)/pi
    if abs(x / 2 - round(x / 2)) > 1e-3:
        c2 = whittaker_a2_closed(WhittakerParams(kappa, 0.5, 0, C2), x)
        c2_elem = c1c2_closed(kappa, x, 0, C2)
        factor = -math.sin(math.pi * x / 2) * cmath.exp(-1j * math.pi * x / 2) / math.pi
        assert abs(c2 - factor * c2_elem) <= 1e-12 * max(1.0, abs(c2))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 3), st.floats(-0.45, 0.45), st.floats(-12, 12))
def test_a2_closed_c2_part_is_entire(kappa, mu, x):
    v = whittaker_a2_closed(WhittakerParams(kappa, mu, 0, 1), x)
    assert cmath.isfinite(v)


def test_a2_closed_general_mu_recursion():
    kappa, mu = 0.7, 0.3
    p = WhittakerParams(kappa, mu, 1.0, 0.5)
    r = whittaker_a2_ratio(kappa, mu)
    for x in (0.5 + 0.37 * j for j in range(20)):
        y, y2 = whittaker_a2_closed(p, x), whittaker_a2_closed(p, x + 2)
        assert abs(y2 - r(x) * y) <= 1e-12 * max(abs(y2), abs(y), 1.0)


def test_c1c2_period_two():
    kappa = 0.3
    for x in (0.3 + 0.71 * j for j in range(20)):
        if abs(x - round(x)) < 1e-3:
            continue
        q0 = c1c2_closed(kappa, x, 0, 1) / c1c2_closed(kappa, x, 1, 0)
        q2 = c1c2_closed(kappa, x + 2, 0, 1) / c1c2_closed(kappa, x + 2, 1, 0)
        assert abs(q2 - q0) <= 1e-12 * abs(q0)


def test_c1c2_constants_round_trip():
    kappa = 0.5
    for C1, C2 in ((1.0, 0.0), (0.3, -1.2), (-2.0, 0.75)):
        got = c1c2_constants(kappa, c1c2_closed(kappa, 2 + 2 * kappa, C1, C2), c1c2_closed(kappa, 2, C1, C2))
        assert abs(got[0] - C1) < 1e-12 and abs(got[1] - C2) < 1e-12
    with pytest.raises(ValueError):
        c1c2_constants(1.5, 1.0, 1.0)


def test_c1_poles_become_signed_infinities():
    assert c1c2_closed(1, 2.0, 1, 0) == math.inf
    assert c1c2_closed(1, 2.0, -3, 5) == -math.inf


def test_inverse_square_recursion():
    kappa, a = 3 / 16, 1.0
    r = inverse_square_ratio(kappa, a)
    for n in range(1, 21):
        x = n * a
        y, y2 = inverse_square_closed(kappa, a, x), inverse_square_closed(kappa, a, x + a)
        assert abs(y2 - r(x) * y) <= 1e-12 * abs(y2)


def test_inverse_square_free_case_is_geometric():
    for x in (0.4, 1.7, 6.25):
        ratio = inverse_square_closed(0, 0.5, x + 0.5) / inverse_square_closed(0, 0.5, x)
        assert ratio == pytest.approx(2, rel=1e-13)


def test_inverse_square_c2_part_has_period_a():
    kappa, a = 0.1, 0.75
    for x in (0.31, 1.13, 2.9, 4.47):
        q0 = inverse_square_closed(kappa, a, x, 0, 1) / inverse_square_closed(kappa, a, x, 1, 0)
        q1 = inverse_square_closed(kappa, a, x + a, 0, 1) / inverse_square_closed(kappa, a, x + a, 1, 0)
        assert abs(q1 - q0) <= 1e-12 * abs(q0)


def test_inverse_square_complex_roots_give_real_values():
    kappa, a = 1.3, 1.0
    r = inverse_square_ratio(kappa, a)
    for x in (1.0, 2.5, 7.0):
        y = inverse_square_closed(kappa, a, x)
        assert isinstance(y, float)
        assert abs(inverse_square_closed(kappa, a, x + a) - r(x) * y) <= 1e-12 * abs(r(x) * y)


# --- umbral whittakerM ----------------------------------------------------

def test_um_whittaker_frozen_values():
    assert um_whittaker_m(0.3, 0.7, 1.3, 1.5) == pytest.approx(1.2978649538035942, rel=1e-12)
    assert um_whittaker_m(1, 0.5, 1 / 3, 0.5) == pytest.approx(0.36688080543273630, rel=1e-12)


def test_um_whittaker_continuum_limit_is_monotone():
    devs = [abs(um_whittaker_m(1, 0.5, 2.0, 2.0 ** -k) - whittaker_m(1, 0.5, 2.0)) for k in range(4, 9)]
    assert all(b < a for a, b in zip(devs, devs[1:]))
    assert devs[-1] < 1e-2


def test_um_whittaker_matches_series_on_lattice():
    kappa, mu, a = F(1, 3), F(1, 2), F(1)
    series = UmbralSeries.from_source(whittaker_m_source(kappa, mu, a))
    for n in range(11):
        x = n * a
        want = float(umbral_series_transform(series, x, a))
        assert abs(um_whittaker_m(kappa, mu, x, a) - want) <= 1e-10 * max(1.0, abs(want))


def test_um_whittaker_trivial_hypergeometric_part():
    mu = 0.25
    spec = um_whittaker_m_spec(mu + 0.5, mu, 1.7, 0.5)
    assert um_whittaker_m(mu + 0.5, mu, 1.7, 0.5) == pytest.approx(spec.prefactor.value(), rel=1e-14)


def test_um_whittaker_spacing_domain():
    for a in (2, 2.5, 0, -1):
        with pytest.raises(DomainError):
            um_whittaker_m(1, 0.5, 1.0, a)


# --- umbral Airy ----------------------------------------------------------

@pytest.mark.parametrize("a", [0.25, 0.7, 1.0, -0.5])
def test_um_airy_at_origin(a):
    assert um_airy(0, a) == pytest.approx(AI0, rel=1e-12)


def test_um_airy_quadrature_vs_series():
    assert abs(um_airy(2, 0.5) - um_airy(2, 0.5, "series")) < 1e-6
    assert abs(um_airy(2, 0.5) - um_airy(2, 0.5, "series")) < 1e-12


def test_um_airy_continuum_limit():
    ref = airy_ai_ref(1.0)
    devs = [abs(um_airy(1.0, 2.0 ** -k) - ref) for k in range(2, 8)]
    assert all(b < a for a, b in zip(devs, devs[1:]))
    # first order in a
    assert all(0.4 < b / a < 0.6 for a, b in zip(devs, devs[1:]))
    assert um_airy(1.0, 0) == ref


def test_um_airy_negative_spacing():
    assert isinstance(um_airy(1.5, -0.5), float)
    with pytest.raises(DomainError):
        um_airy(1.5, -0.5, "series")
    with pytest.raises(DomainError):
        um_airy(0.3, 0.5, "series")
    with pytest.raises(ValueError):
        um_airy(1.0, 0.5, "bogus")


@pytest.mark.parametrize("a", [F(1, 2), F(1)])
def test_um_airy_parts_solve_difference_equation_exactly(a):
    parts = [um_airy_parts(n * a, a) for n in range(13)]
    for k in range(2):
        grid = GridFunction(Lattice(a), 0, [p[k] for p in parts])
        res = apply_operator(airy_operator(a), grid)
        assert all(v == 0 for v in res)
        assert all(isinstance(v, Fraction) for v in grid)


@pytest.mark.parametrize("a", [0.5, 1.0])
def test_um_airy_quadrature_solves_difference_equation(a):
    grid = GridFunction.sample(lambda x: um_airy(x, a), Lattice(a), 0, 13)
    assert max(abs(v) for v in apply_operator(airy_operator(a), grid)) < 1e-6


def test_um_airy_unshifted_operator_is_not_satisfied():
    # the unshifted form Delta^2 Y(x) = x Y(x+a) leaves an O(1) residual
    a = F(1, 2)
    grid = GridFunction.sample(lambda x: um_airy(x, a, "series"), Lattice(a), 0, 12)
    res = max(abs(v) for v in apply_operator(airy_operator_unshifted(a), grid))
    assert res == pytest.approx(0.21444089705682945, rel=1e-9)


# --- umbral Gaussian ------------------------------------------------------

@pytest.mark.parametrize("a", [0.1, 0.5, 1.0, 3.0])
def test_um_gaussian_at_origin(a):
    assert um_gaussian(0, a) == pytest.approx(1, rel=1e-13)


def test_um_gaussian_frozen_values():
    assert um_gaussian(1, F(1, 4), "series") == F(19, 64)
    assert um_gaussian(1, 0.25) == pytest.approx(0.296875, rel=1e-13)
    assert um_gaussian(2, F(1), "series") == -1
    assert abs(um_gaussian(2, 1.0) - (-1)) < 1e-9


def test_um_gaussian_is_not_even():
    for method in ("u_identity",):
        assert abs(um_gaussian(1, 0.5, method) - um_gaussian(-1, 0.5, method)) > 1e-2
    assert um_gaussian(1, F(1, 2), "series") == F(1, 2)
    assert um_gaussian(-1, 0.5) == pytest.approx(0.48425568771737579, rel=1e-13)


@settings(max_examples=60, deadline=None)
@given(st.floats(-3, 3), st.floats(0.1, 1.5))
def test_um_gaussian_against_mpmath(x, a):
    s = mpmath.mpf(x) / a
    want = (2 * mpmath.mpf(a)) ** (s - 1) * mpmath.hyperu((1 - s) / 2, 1.5, 1 / (4 * mpmath.mpf(a) ** 2))
    assert um_gaussian(x, a) == pytest.approx(float(want), rel=1e-11, abs=1e-14)


def test_um_gaussian_first_order_equation():
    a = 0.5
    grid = GridFunction.sample(lambda x: um_gaussian(x, a), Lattice(a), -2.0, 12)
    assert max(abs(v) for v in apply_operator(gaussian_operator(a), grid)) < 1e-10
    exact = GridFunction.sample(lambda x: um_gaussian(x, F(1, 2), "series"), Lattice(F(1, 2)), 0, 12)
    assert all(v == 0 for v in apply_operator(gaussian_operator(F(1, 2)), exact))


def test_um_gaussian_continuum_and_domain():
    assert um_gaussian(1.3, 0) == math.exp(-1.3 * 1.3)
    with pytest.raises(DomainError):
        um_gaussian(0.3, 0.5, "series")
    with pytest.raises(DomainError):
        um_gaussian(0.3, -0.5)
    with pytest.raises(ValueError):
        um_gaussian(1, 0.5, "bogus")


# --- plane waves ----------------------------------------------------------

def test_phase_velocity_symmetric_and_continuum():
    assert phase_velocity(WaveParams(2.0, 0.5, 0.3, 0.3)) == pytest.approx(4.0, rel=1e-15)
    assert phase_velocity(WaveParams(2.0, 0.5, 1e-7, 2e-7)) == pytest.approx(4.0, rel=1e-12)
    assert refraction_index(WaveParams(1, 1, 0.4, 0.4)) == pytest.approx(1, rel=1e-15)


def test_phase_velocity_variants():
    p = WaveParams(1.0, 1.0, 0.5, 0.25)
    assert phase_velocity(p) == pytest.approx(0.5 * math.asin(0.25) / (0.25 * math.asin(0.5)), rel=1e-15)
    assert phase_velocity(p, "arctan") == pytest.approx(0.5 * math.atan(0.25) / (0.25 * math.atan(0.5)), rel=1e-15)
    assert phase_velocity(p, "dispersion") == pytest.approx((math.atan(0.5) / 0.5) / (math.atan(0.25) / 0.25))
    with pytest.raises(DomainError):
        phase_velocity(WaveParams(1, 1, 1.5, 0.5))
    with pytest.raises(ValueError):
        phase_velocity(p, "bogus")
    with pytest.raises(DomainError):
        WaveParams(1, 1, 0, 0.5)


def test_plane_wave_solves_wave_equation_exactly():
    h = F(1, 2)
    p = WaveParams(h, h, h, h)
    grid = [[complex(*map(float, plane_wave_parts(p, i * h, j * h))) for j in range(6)] for i in range(6)]
    exact = [[plane_wave_parts(p, i * h, j * h) for j in range(6)] for i in range(6)]
    for i in range(4):
        for j in range(4):
            for k in range(2):
                dxx = (exact[i + 2][j][k] - 2 * exact[i + 1][j][k] + exact[i][j][k]) / h ** 2
                dtt = (exact[i][j + 2][k] - 2 * exact[i][j + 1][k] + exact[i][j][k]) / h ** 2
                assert dxx == dtt
            assert abs(plane_wave(p, i * h, j * h) - grid[i][j]) < 1e-15


def test_plane_wave_parts_needs_lattice():
    with pytest.raises(DomainError):
        plane_wave_parts(WaveParams(F(1), F(1), F(1, 2), F(1, 2)), F(1, 3), 0)


# --- Toda -----------------------------------------------------------------

FIG = TodaParams(q0=0.0, alpha=1.0, beta=1.0, branch=1)

# Q(n, m) at a = 1 from the defining series summed in mpmath at 40 digits
TODA_ORACLE = {
    1: (0.18633367647525034, 0.34238973459896544, 0.59795809373182346, 0.96537203224723958, 1.369454494300022478),
    2: (0.078340659469230438, 0.15314602585941206, 0.29292222018353131, 0.54189702621625862, 0.95128302346208846),
    3: (0.030437423655932318, 0.061119164249734514, 0.12168549552879017, 0.23915042734621446, 0.46074905379322598),
    4: (0.011434579428691672, 0.023204412184404585, 0.046937930671735211, 0.094485079171091321, 0.18879485795151727),
    5: (0.0042396633513876191, 0.0086379451070612482, 0.017578061673396720, 0.035706543764671659, 0.072333305209274184),
}


def test_toda_params():
    assert FIG.gamma == pytest.approx(1.0421906109874948, rel=1e-15)
    assert TodaParams(branch=-1).gamma == -FIG.gamma
    for bad in ({"alpha": 0}, {"beta": 0}, {"branch": 2}):
        with pytest.raises(DomainError):
            TodaParams(**bad)


def test_toda_continuum_limits():
    assert toda_continuum(60, 0.0, FIG)[0] == pytest.approx(0.0, abs=1e-20)
    assert toda_continuum(-40, 0.0, FIG)[0] == pytest.approx(1.0, rel=1e-15)
    h = 1e-5
    dq = (toda_continuum(0, h, FIG)[0] - toda_continuum(0, -h, FIG)[0]) / (2 * h)
    assert abs(dq - toda_continuum(0, 0.0, FIG)[1]) < 1e-8


def test_toda_continuum_translation():
    shift = FIG.beta / FIG.gamma
    for n, t in ((0, 0.0), (3, -1.2), (-2, 2.5)):
        assert toda_continuum(n, t + shift, FIG)[0] == pytest.approx(toda_continuum(n - 1, t, FIG)[0], rel=1e-13)


@pytest.mark.parametrize("n", range(1, 6))
def test_toda_umbral_frozen(n):
    for m, want in enumerate(TODA_ORACLE[n]):
        assert toda_umbral(n, m, 1, FIG) == pytest.approx(want, rel=1e-13)


def test_toda_umbral_at_zero_time():
    for n in (1, 3, 7):
        assert toda_umbral(n, 0, 0.5, FIG) == toda_continuum(n, 0.0, FIG)[0]


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("m", range(5))
def test_toda_closed_form_vs_series(n, m):
    assert abs(toda_umbral(n, m, 1, FIG) - toda_series(n, m, 1, FIG)) < 1e-10


def test_toda_momentum_is_difference_of_coordinate():
    a = 0.5
    for n in (1, 2, 4):
        for m in range(4):
            dq = (toda_umbral(n, m + 1, a, FIG) - toda_umbral(n, m, a, FIG)) / a
            assert abs(dq - toda_umbral_momentum(n, m, a, FIG)) < 1e-13


def test_toda_domain_flag():
    with pytest.raises(DomainError):
        toda_umbral(0, 2, 1, FIG)
    with pytest.raises(DomainError):
        toda_series(-1, 2, 1, FIG)
    assert math.isfinite(toda_umbral(-1, 2, 1, FIG, continue_analytically=True))
    with pytest.raises(ValueError):
        toda_umbral(1, -1, 1, FIG)
