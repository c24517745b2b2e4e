import math

import numpy as np
import pytest

from phasewave import (NATURAL_UNITS, BlowupError, ConfigurationError, Field2D, GridSpec,
                       PhasePoint, PolynomialPotential, evolve_fd, moyal_rhs,
                       poly_derivative, polar_from_xy, propagate_exact, radial_kernel,
                       sample_field, snapshot, stationary_field, transport_residual,
                       wave_residual, StandingWaveSpec, standing_wave_field)
from phasewave.evolution import _fd_weights

P = NATURAL_UNITS


def kernel_times_sin(kappa, amplitude=1.0):
    def W0(x, p):
        rho, phi = polar_from_xy(P, x, p)
        return amplitude * radial_kernel(P, 0, rho) * np.sin(kappa * phi)
    return W0


# ---------------------------------------------------------------- grid types

def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(rho_max=4.0, n_rho=8, n_phi=1)
    with pytest.raises(ValueError):
        GridSpec(rho_max=0.0, n_rho=8, n_phi=32)
    with pytest.raises(ValueError):
        GridSpec(rho_max=4.0, n_rho=8, n_phi=32, dt=-0.1)


def test_evolve_needs_enough_angular_nodes():
    # sampling allows small grids; the time stepper does not
    grid = GridSpec(rho_max=4.0, n_rho=4, n_phi=8, dt=0.01)
    f0 = sample_field(stationary_field(P, 0), grid, 0.0, P)
    with pytest.raises(ConfigurationError, match="n_phi"):
        evolve_fd(f0, P, 0.5)


def test_field_validation():
    grid = GridSpec(rho_max=4.0, n_rho=4, n_phi=16)
    with pytest.raises(ValueError):
        Field2D(grid=grid, values=np.zeros((4, 8)), time_tag=0.0)
    bad = np.zeros((4, 16))
    bad[1, 3] = np.inf
    with pytest.raises(ValueError):
        Field2D(grid=grid, values=bad, time_tag=0.0)


def test_grid_nodes_exclude_origin():
    grid = GridSpec(rho_max=4.0, n_rho=4, n_phi=16)
    assert grid.rho_nodes() == pytest.approx([1.0, 2.0, 3.0, 4.0])
    assert grid.phi_nodes()[0] == 0.0
    assert len(grid.phi_nodes()) == 16


# ---------------------------------------------------------- exact propagation

def test_propagate_exact_leaves_stationary_unchanged():
    W = stationary_field(P, 2)
    for t in (0.3, 2.7):
        adv = propagate_exact(snapshot(W, 0.0), P, t)
        for x, p in ((0.7, -0.3), (0.0, 1.2)):
            assert adv(x, p) == pytest.approx(W(x, p, 0.0), rel=1e-14)


def test_propagate_exact_shifts_single_chirality_phase():
    kappa = 3
    W0 = kernel_times_sin(kappa)
    t = 0.41
    adv = propagate_exact(W0, P, t)
    for x, p in ((0.8, 0.5), (-0.4, 1.1)):
        rho, phi = polar_from_xy(P, x, p)
        expected = radial_kernel(P, 0, rho) * math.sin(kappa * phi + kappa * P.omega * t)
        assert float(adv(x, p)) == pytest.approx(float(expected), rel=1e-12, abs=1e-15)


def test_propagate_exact_full_rotation_identity():
    W0 = kernel_times_sin(2)
    adv = propagate_exact(W0, P, 2.0 * math.pi / P.omega)
    for x, p in ((0.8, 0.5), (-1.4, 0.2)):
        assert float(adv(x, p)) == pytest.approx(float(W0(x, p)), abs=1e-12)


def test_propagate_exact_rotation_is_ring_shift():
    grid = GridSpec(rho_max=3.0, n_rho=6, n_phi=32)
    W0 = kernel_times_sin(2)
    base = sample_field(lambda x, p, t: W0(x, p), grid, 0.0, P)
    k = 5
    t = k * grid.delta_phi / P.omega
    adv = propagate_exact(W0, P, t)
    rotated = sample_field(lambda x, p, _t: adv(x, p), grid, t, P)
    assert np.max(np.abs(rotated.values - np.roll(base.values, -k, axis=1))) <= 1e-12


# ------------------------------------------------------------------ fd solver

def test_evolve_requires_dt():
    grid = GridSpec(rho_max=4.0, n_rho=4, n_phi=32)
    f0 = sample_field(stationary_field(P, 0), grid, 0.0, P)
    with pytest.raises(ConfigurationError):
        evolve_fd(f0, P, 1.0)


def test_evolve_rejects_cfl_violation():
    grid = GridSpec(rho_max=4.0, n_rho=4, n_phi=32, dt=2.0 * 2.0 * math.pi / 32)
    f0 = sample_field(stationary_field(P, 0), grid, 0.0, P)
    with pytest.raises(ConfigurationError, match="Courant"):
        evolve_fd(f0, P, 1.0)


def test_evolve_rejects_backward_time():
    grid = GridSpec(rho_max=4.0, n_rho=4, n_phi=32, dt=0.01)
    f0 = sample_field(stationary_field(P, 0), grid, 1.0, P)
    with pytest.raises(ConfigurationError):
        evolve_fd(f0, P, 0.5)


def test_evolve_detects_nonfinite_values():
    grid = GridSpec(rho_max=4.0, n_rho=4, n_phi=32, dt=0.01)
    f0 = sample_field(stationary_field(P, 0), grid, 0.0, P)
    f0.values[2, 7] = np.nan  # in-place corruption bypasses construction checks
    with pytest.raises(BlowupError):
        evolve_fd(f0, P, 0.5)


def test_evolve_phi_independent_field_is_exact():
    grid = GridSpec(rho_max=4.0, n_rho=8, n_phi=64, dt=0.5 * 2.0 * math.pi / 64)
    f0 = sample_field(stationary_field(P, 3), grid, 0.0, P)
    f1 = evolve_fd(f0, P, 2.0 * math.pi / P.omega)
    assert np.max(np.abs(f1.values - f0.values)) < 1e-10


def test_evolve_partial_final_step():
    grid = GridSpec(rho_max=4.0, n_rho=4, n_phi=32, dt=0.125)
    f0 = sample_field(stationary_field(P, 0), grid, 0.0, P)
    out = evolve_fd(f0, P, 0.3)
    assert out.time_tag == 0.3
    assert out.meta["steps"] == 3  # two whole steps plus one partial


def test_evolve_conserves_ring_sums():
    spec = StandingWaveSpec(ell=3, A=2.0, C=5.0)
    grid = GridSpec(rho_max=4.0, n_rho=8, n_phi=64, dt=0.5 * 2.0 * math.pi / 64)
    f0 = sample_field(standing_wave_field(P, 0, spec), grid, 0.0, P)
    f1 = evolve_fd(f0, P, 2.0 * math.pi / P.omega)
    drift = np.max(np.abs(f1.values.sum(axis=1) - f0.values.sum(axis=1)))
    assert drift <= 1e-8


def test_evolve_first_order_convergence():
    W0 = kernel_times_sin(2)
    period = 2.0 * math.pi / P.omega
    errors = []
    for n_phi in (128, 256, 512):
        dphi = 2.0 * math.pi / n_phi
        grid = GridSpec(rho_max=4.0, n_rho=8, n_phi=n_phi, dt=0.5 * dphi / P.omega)
        f0 = sample_field(lambda x, p, t: W0(x, p), grid, 0.0, P)
        f1 = evolve_fd(f0, P, period)
        errors.append(float(np.max(np.abs(f1.values - f0.values))))
    for k in range(2):
        order = math.log2(errors[k] / errors[k + 1])
        assert 0.8 <= order <= 1.2


# ------------------------------------------------------------------ residuals

def _triplet(W, grid, t_center, dt):
    return [sample_field(W, grid, t_center + k * dt, P) for k in (-1, 0, 1)]


def test_residual_grid_mismatch_rejected():
    g1 = GridSpec(rho_max=4.0, n_rho=4, n_phi=32)
    g2 = GridSpec(rho_max=4.0, n_rho=4, n_phi=64)
    W = stationary_field(P, 0)
    fields = [sample_field(W, g, t, P) for g, t in ((g1, 0.0), (g1, 0.1), (g2, 0.2))]
    with pytest.raises(ConfigurationError):
        wave_residual(fields, P)


def test_residual_nonuniform_times_rejected():
    grid = GridSpec(rho_max=4.0, n_rho=4, n_phi=32)
    W = stationary_field(P, 0)
    fields = [sample_field(W, grid, t, P) for t in (0.0, 0.1, 0.35)]
    with pytest.raises(ConfigurationError):
        transport_residual(fields, P)


def test_residuals_vanish_for_stationary_field():
    # node coordinates pass through cos/sin, so ring values differ in the
    # last bits; dividing by delta_phi^2 leaves residuals at ~1e-14
    grid = GridSpec(rho_max=4.0, n_rho=6, n_phi=32)
    fields = _triplet(stationary_field(P, 2), grid, 0.5, 0.01)
    assert np.max(np.abs(wave_residual(fields, P).values)) <= 1e-12
    assert np.max(np.abs(transport_residual(fields, P).values)) <= 1e-12


def _residual_scan(W, t_center):
    wave_max, transport_max = [], []
    for n_phi in (64, 128, 256):
        dt = 0.5 * (2.0 * math.pi / n_phi) / P.omega
        grid = GridSpec(rho_max=4.0, n_rho=12, n_phi=n_phi)
        fields = _triplet(W, grid, t_center, dt)
        wave_max.append(np.max(np.abs(wave_residual(fields, P).values)))
        transport_max.append(np.max(np.abs(transport_residual(fields, P).values)))
    return wave_max, transport_max


def test_standing_wave_satisfies_wave_equation_only():
    spec = StandingWaveSpec(ell=3, A=2.0, C=5.0)
    W = standing_wave_field(P, 0, spec)
    t_c = 0.3 * spec.period(P.omega)
    wave_max, transport_max = _residual_scan(W, t_c)
    assert wave_max[0] / wave_max[1] >= 3.5
    assert wave_max[1] / wave_max[2] >= 3.5
    assert transport_max[2] > 0.1 * transport_max[0]


def test_standing_wave_transport_residual_limit_is_analytic():
    # W_t - omega W_phi = -kern * (2A/C) * Omega * cos(Omega t - kappa phi)
    spec = StandingWaveSpec(ell=3, A=2.0, C=5.0)
    W = standing_wave_field(P, 0, spec)
    t_c = 0.3 * spec.period(P.omega)
    n_phi = 512
    dt = 0.25 * (2.0 * math.pi / n_phi) / P.omega
    grid = GridSpec(rho_max=4.0, n_rho=12, n_phi=n_phi)
    res = transport_residual(_triplet(W, grid, t_c, dt), P).values
    rho = grid.rho_nodes()[:, None]
    phi = grid.phi_nodes()[None, :]
    omega_w = spec.omega_wave(P.omega)
    analytic = (-radial_kernel(P, 0, rho) * (2.0 * spec.A / spec.C) * omega_w
                * np.cos(omega_w * t_c - spec.kappa * phi))
    assert np.max(np.abs(res - analytic)) <= 0.05 * np.max(np.abs(analytic))


def test_single_chirality_satisfies_both_equations():
    kappa = 6

    def W(x, p, t):
        rho, phi = polar_from_xy(P, x, p)
        return radial_kernel(P, 0, rho) * (1.0 + 0.5 * np.sin(kappa * (phi + P.omega * t)))

    wave_max, transport_max = _residual_scan(W, 0.21)
    assert wave_max[0] / wave_max[1] >= 3.5 and wave_max[1] / wave_max[2] >= 3.5
    assert transport_max[0] / transport_max[1] >= 3.5
    assert transport_max[1] / transport_max[2] >= 3.5


# ------------------------------------------------------------------ potentials

def test_polynomial_evaluation_and_degree():
    U = PolynomialPotential((1.0, 0.0, 3.0))
    assert U(2.0) == 13.0
    assert U.degree == 2
    assert PolynomialPotential((1.0, 2.0, 0.0)).degree == 1
    assert PolynomialPotential(()).degree == 0


def test_polynomial_degree_cap():
    with pytest.raises(ConfigurationError):
        PolynomialPotential(tuple(range(14)))


def test_poly_derivative_examples():
    assert poly_derivative(PolynomialPotential((0.0, 0.0, 1.0)), 1).coeffs == (0.0, 2.0)
    assert poly_derivative(PolynomialPotential((1.0, 2.0, 3.0)), 3).coeffs == (0.0,)
    d3 = poly_derivative(PolynomialPotential((0.0, 0.0, 0.0, 0.0, 1.0)), 3)
    assert d3.coeffs == (0.0, 24.0)
    with pytest.raises(ValueError):
        poly_derivative(PolynomialPotential((1.0,)), -1)


# -------------------------------------------------------------------- weights

def test_fd_weights_known_stencils():
    assert _fd_weights(0.0, np.array([-1.0, 0.0, 1.0]), 1) == pytest.approx([-0.5, 0.0, 0.5])
    assert _fd_weights(0.0, np.array([-1.0, 0.0, 1.0]), 2) == pytest.approx([1.0, -2.0, 1.0])
    assert _fd_weights(0.0, np.arange(-2.0, 3.0), 3) == pytest.approx([-0.5, 1.0, 0.0, -1.0, 0.5])


def test_fd_weights_differentiate_exponential():
    a = 0.9
    for order in (1, 3, 5):
        r = (order + 3) // 2
        h = 0.05
        offsets = np.arange(-r, r + 1) * h
        w = _fd_weights(0.0, offsets, order)
        est = float(np.dot(w, np.exp(a * offsets)))
        assert est == pytest.approx(a**order, rel=1e-4)


# ------------------------------------------------------------------ moyal rhs

class _MustNotBeCalled:
    def __call__(self, *args):
        raise AssertionError("field evaluated for a quadratic potential")


def test_moyal_rhs_vanishes_for_quadratic_potentials():
    pts = [PhasePoint(0.3, -0.4), PhasePoint(1.5, 2.0)]
    for coeffs in ((0.0, 0.0, 0.5), (2.0, 1.7, 0.9), (0.0, 3.0)):
        U = PolynomialPotential(coeffs)
        for pt in pts:
            assert moyal_rhs(U, _MustNotBeCalled(), pt, hbar=1.0) == 0.0


@pytest.mark.parametrize("hbar", [1.0, 0.5])
def test_moyal_rhs_cubic_single_term(hbar):
    W = stationary_field(NATURAL_UNITS, 2)
    U = PolynomialPotential((0.0, 0.0, 0.0, 1.0))
    for pt in (PhasePoint(0.3, -0.4), PhasePoint(1.1, 0.7)):
        closed = -(hbar**2 / 4.0) * W.p_derivative(3, pt.x, pt.p)
        assert moyal_rhs(U, W, pt, hbar) == pytest.approx(closed, rel=1e-12)
        plain = lambda x, p, t=0.0: W(x, p, t)
        assert moyal_rhs(U, plain, pt, hbar) == pytest.approx(closed, rel=1e-6, abs=1e-10)


def test_moyal_rhs_quartic_single_term():
    W = stationary_field(NATURAL_UNITS, 1)
    U = PolynomialPotential((0.0, 0.0, 0.0, 0.0, 1.0))
    for pt in (PhasePoint(0.6, -0.2), PhasePoint(-0.8, 0.9)):
        closed = -P.hbar**2 * pt.x * W.p_derivative(3, pt.x, pt.p)
        assert moyal_rhs(U, W, pt, P.hbar) == pytest.approx(closed, rel=1e-12)


def test_moyal_rhs_degree_twelve_runs():
    W = stationary_field(NATURAL_UNITS, 0)
    U = PolynomialPotential((0.0,) * 12 + (1.0,))
    val = moyal_rhs(U, W, PhasePoint(0.5, 0.3), 1.0)
    assert math.isfinite(val)
