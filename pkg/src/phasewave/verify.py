"""Numerical verification suite.

Every analytic identity the library claims is re-derived numerically here:
normalization and mean energy by phase-space quadrature, marginal
identities by line quadrature against the closed-form densities, node and
snapshot geometry of the standing wave, residual behaviour of sampled
fields under the transport and membrane wave equations, and the
degeneration of the quantum transport series for quadratic potentials.
Each check returns a machine-readable result with its target, tolerance
and runtime; a report is produced whether or not the checks pass.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from .evolution import (GridSpec, PolynomialPotential, evolve_fd, moyal_rhs,
                        propagate_exact, transport_residual, wave_residual)
from .extended import (StandingWaveSpec, check_parity, extended_field, normalization,
                       running_wave_profile, standing_wave_field)
from .gridio import sample_field
from .oscillator import NATURAL_UNITS, PhasePoint, polar_from_xy
from .quadrature import (QuadratureSpec, laguerre_energy_identity, marginal_over_p,
                         marginal_over_x, mean_energy, phase_space_integral)
from .wigner import (momentum_density, position_density, radial_kernel,
                     stationary_field, wigner_from_wavefunction, wigner_stationary)


@dataclass
class CheckResult:
    """One verification outcome with provenance of its target value."""

    name: str
    provenance: str
    target: str
    computed: str
    tolerance: float
    passed: bool
    runtime_s: float
    details: dict = dc_field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.name}: target {self.target}, got {self.computed} "
                f"(tol {self.tolerance:g}, {self.runtime_s:.2f}s)")


@dataclass
class VerificationReport:
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self):
        out = [c.line() for c in self.checks]
        out.append(f"{'ALL CHECKS PASSED' if self.passed else 'CHECK FAILURES PRESENT'} "
                   f"({sum(c.passed for c in self.checks)}/{len(self.checks)})")
        return out

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "provenance": c.provenance, "target": c.target,
                 "computed": c.computed, "tolerance": c.tolerance, "passed": c.passed,
                 "runtime_s": c.runtime_s, "details": c.details}
                for c in self.checks
            ],
        }


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def check_stationary_normalization(params=NATURAL_UNITS, tol: float = 1e-8,
                                   quad: QuadratureSpec | None = None,
                                   n_max: int = 8) -> CheckResult:
    """Phase-space integral of every stationary state equals 1."""
    def run():
        devs = {}
        for n in range(n_max + 1):
            val = phase_space_integral(stationary_field(params, n), params, quad)
            devs[n] = abs(val - 1.0)
        return devs

    devs, dt = _timed(run)
    worst = max(devs.values())
    return CheckResult(
        name="stationary_normalization",
        provenance="quasi-probability densities integrate to 1 (exact)",
        target="1 for n = 0..%d" % n_max,
        computed=f"max |integral - 1| = {worst:.3e}",
        tolerance=tol, passed=worst < tol, runtime_s=dt,
        details={"deviation_by_n": {str(k): v for k, v in devs.items()}},
    )


def check_extended_normalization(params=NATURAL_UNITS, tol: float = 1e-10) -> CheckResult:
    """Computed normalization of the standing wave equals 1/C."""
    def run():
        worst = 0.0
        cases = {}
        for ell in (1, 2, 3):
            for C in (1.0, 5.0):
                spec = StandingWaveSpec(ell=ell, A=2.0, C=C)
                norm = normalization(spec.to_profile())
                dev = abs(norm.N - 1.0 / C)
                cases[f"ell={ell},C={C:g}"] = dev
                worst = max(worst, dev)
        return worst, cases

    (worst, cases), dt = _timed(run)
    return CheckResult(
        name="extended_normalization",
        provenance="counter-propagating sine pair has zero angular mean, so N = 1/C",
        target="N = 1/C for ell in {1,2,3}, C in {1,5}",
        computed=f"max |N - 1/C| = {worst:.3e}",
        tolerance=tol, passed=worst < tol, runtime_s=dt, details=cases,
    )


def check_marginal_identities(params=NATURAL_UNITS, tol: float = 1e-6,
                              quad: QuadratureSpec | None = None) -> CheckResult:
    """Marginals of the standing-wave family reproduce the eigenstate densities."""
    def run():
        pts = np.linspace(-3.0, 3.0, 21)
        worst = 0.0
        worst_case = ""
        for n in (0, 1, 5):
            for ell in (1, 3):
                spec = StandingWaveSpec(ell=ell, A=0.4, C=1.0)
                W = standing_wave_field(params, n, spec)
                T = spec.period(params.omega)
                for t in (0.0, T / 8.0, T / 4.0, T / 2.0):
                    for x in pts:
                        dev = abs(marginal_over_p(W, params, float(x), t, quad)
                                  - position_density(params, n, float(x)))
                        if dev > worst:
                            worst, worst_case = dev, f"n={n},ell={ell},t={t:.4g},x={x:g}"
                    for p in pts:
                        dev = abs(marginal_over_x(W, params, float(p), t, quad)
                                  - momentum_density(params, n, float(p)))
                        if dev > worst:
                            worst, worst_case = dev, f"n={n},ell={ell},t={t:.4g},p={p:g}"
        return worst, worst_case

    (worst, worst_case), dt = _timed(run)
    return CheckResult(
        name="marginal_identities",
        provenance="odd angular factor averages to zero against the even kernel",
        target="marginals match |Psi_n|^2 and |Psi~_n|^2 at 21 points each",
        computed=f"max deviation = {worst:.3e} at {worst_case}",
        tolerance=tol, passed=worst < tol, runtime_s=dt,
        details={"amplitude_ratio_A_over_C": 0.4, "worst_case": worst_case},
    )


def check_energy_spectrum(params=NATURAL_UNITS, tol: float = 1e-6,
                          quad: QuadratureSpec | None = None) -> CheckResult:
    """Mean energy is n + 1/2 and time independent for the standing wave."""
    def run():
        worst = 0.0
        details = {}
        for n in range(9):
            val = mean_energy(stationary_field(params, n), params, 0.0, quad)
            details[f"stationary n={n}"] = val
            worst = max(worst, abs(val - (n + 0.5)))
        spec = StandingWaveSpec(ell=3, A=2.0, C=5.0)
        T = spec.period(params.omega)
        for n in (0, 5):
            vals = [mean_energy(standing_wave_field(params, n, spec), params, t, quad)
                    for t in (0.0, T / 8.0, T / 4.0, T / 2.0)]
            details[f"standing n={n}"] = vals
            worst = max(worst, max(abs(v - (n + 0.5)) for v in vals))
            worst = max(worst, max(vals) - min(vals))
        return worst, details

    (worst, details), dt = _timed(run)
    return CheckResult(
        name="energy_spectrum",
        provenance="oscillator levels n + 1/2 in units of hbar*omega (closed form)",
        target="mean energy = n + 1/2, time independent",
        computed=f"max deviation/spread = {worst:.3e}",
        tolerance=tol, passed=worst < tol, runtime_s=dt, details={},
    )


def check_laguerre_moment_identity(tol: float = 1e-9,
                                   quad: QuadratureSpec | None = None) -> CheckResult:
    """Quadrature of exp(-2e) L_n(4e) e over [0, inf) equals (-1)^n (2n+1)/4."""
    def run():
        worst = 0.0
        for n in range(9):
            val = laguerre_energy_identity(n, quad)
            exact = (-1.0) ** n * (2 * n + 1) / 4.0
            worst = max(worst, abs(val - exact))
        return worst

    worst, dt = _timed(run)
    return CheckResult(
        name="laguerre_moment_identity",
        provenance="closed-form Gaussian-Laguerre moment (-1)^n (2n+1)/4",
        target="identity holds for n = 0..8",
        computed=f"max deviation = {worst:.3e}",
        tolerance=tol, passed=worst < tol, runtime_s=dt,
    )


def check_transform_oracle_agreement(params=NATURAL_UNITS, tol: float = 1e-7,
                                     quad: QuadratureSpec | None = None) -> CheckResult:
    """Fourier-transform construction agrees with the closed form on a grid."""
    def run():
        pts = np.linspace(-3.0, 3.0, 9)
        worst = 0.0
        for n in (0, 1, 2, 3, 5):
            for x in pts:
                for p in pts:
                    pt = PhasePoint(float(x), float(p))
                    dev = abs(wigner_from_wavefunction(params, n, pt, quad)
                              - wigner_stationary(params, n, pt))
                    worst = max(worst, dev)
        return worst

    worst, dt = _timed(run)
    return CheckResult(
        name="transform_oracle_agreement",
        provenance="independent eigenfunction Fourier transform of the same state",
        target="agreement on a 9x9 grid for n in {0,1,2,3,5}",
        computed=f"max |transform - closed form| = {worst:.3e}",
        tolerance=tol, passed=worst < tol, runtime_s=dt,
    )


def check_node_antinode_structure(params=NATURAL_UNITS, tol: float = 1e-12) -> CheckResult:
    """Node lines pin the stationary values; antinodes maximize the deviation."""
    from .extended import antinode_angles, node_angles, standing_wave_eval
    from .oscillator import from_polar, PolarPoint

    def run():
        spec = StandingWaveSpec(ell=3, A=2.0, C=5.0)
        T = spec.period(params.omega)
        worst_node = 0.0
        for n in (0, 5):
            for rho in (0.4, 0.9, 1.6, 2.4):
                for t in (0.0, T / 8.0, T / 3.0, 0.77 * T):
                    for phi in node_angles(spec):
                        pt = from_polar(params, PolarPoint(rho, float(phi)))
                        dev = abs(standing_wave_eval(params, n, spec, pt, t)
                                  - wigner_stationary(params, n, pt))
                        worst_node = max(worst_node, dev)

        # antinode extremality at t = 0 on a dense angular grid
        phis = 2.0 * math.pi * np.arange(720) / 720
        anti = antinode_angles(spec)
        anti_idx = np.rint(anti / (2.0 * math.pi / 720)).astype(int)
        extremal_ok = True
        margin = math.inf
        for n in (0, 5):
            for rho in (0.7, 1.1):
                kern = radial_kernel(params, n, rho)
                diff = np.abs(kern * (2.0 * spec.A / spec.C) * np.sin(2 * spec.ell * phis))
                top = diff.max()
                if np.any(np.abs(diff[anti_idx] - top) > 1e-12 * max(1.0, top)):
                    extremal_ok = False
                mask = np.ones(720, dtype=bool)
                for j in anti_idx:
                    mask[max(j - 1, 0):j + 2] = False
                margin = min(margin, float(top - diff[mask].max()))
        return worst_node, extremal_ok, margin

    (worst_node, extremal_ok, margin), dt = _timed(run)
    passed = worst_node < tol and extremal_ok and margin > 0.0
    return CheckResult(
        name="node_antinode_structure",
        provenance="standing-wave factor vanishes at nodes, is extremal at antinodes",
        target="node values match the stationary state; antinodes attain the max deviation",
        computed=f"max node deviation = {worst_node:.3e}, antinode max attained: {extremal_ok}",
        tolerance=tol, passed=passed, runtime_s=dt,
        details={"margin_to_next_best_angle": margin},
    )


def check_snapshot_identities(params=NATURAL_UNITS, tol: float = 1e-12) -> CheckResult:
    """Quarter-period snapshots equal the stationary state; full period repeats."""
    def run():
        spec = StandingWaveSpec(ell=3, A=2.0, C=5.0)
        T = spec.period(params.omega)
        grid = GridSpec(rho_max=4.5, n_rho=48, n_phi=96)
        worst_quarter = 0.0
        worst_period = 0.0
        for n in (0, 5):
            W = standing_wave_field(params, n, spec)
            Wn = stationary_field(params, n)
            ref = sample_field(Wn, grid, 0.0, params).values
            for t in (T / 4.0, 3.0 * T / 4.0):
                got = sample_field(W, grid, t, params).values
                worst_quarter = max(worst_quarter, float(np.max(np.abs(got - ref))))
            at0 = sample_field(W, grid, 0.0, params).values
            atT = sample_field(W, grid, T, params).values
            worst_period = max(worst_period, float(np.max(np.abs(atT - at0))))
        return worst_quarter, worst_period

    (worst_quarter, worst_period), dt = _timed(run)
    passed = worst_quarter < tol and worst_period == 0.0
    return CheckResult(
        name="snapshot_identities",
        provenance="cos(Omega t) vanishes at quarter periods and repeats after T",
        target="quarter-period snapshots = stationary state; t=0 and t=T bitwise equal",
        computed=f"quarter dev = {worst_quarter:.3e}, period dev = {worst_period:.3e}",
        tolerance=tol, passed=passed, runtime_s=dt,
    )


def check_positivity_edge(params=NATURAL_UNITS) -> CheckResult:
    """Ground-state minimum flips sign exactly when 2A/C crosses 1."""
    def run():
        grid = GridSpec(rho_max=4.0, n_rho=512, n_phi=512)
        mins = {}
        for A in (2.0, 3.0):
            spec = StandingWaveSpec(ell=3, A=A, C=5.0)
            W = standing_wave_field(params, 0, spec)
            mins[A] = float(sample_field(W, grid, 0.0, params).values.min())
        return mins

    mins, dt = _timed(run)
    passed = mins[2.0] >= 0.0 and mins[3.0] < 0.0
    return CheckResult(
        name="positivity_edge",
        provenance="bracket 1 + (2A/C) sin stays positive iff 2A/C < 1",
        target="min >= 0 for A=2, C=5; min < 0 for A=3, C=5 (ell=3, ground state)",
        computed=f"min(A=2) = {mins[2.0]:.3e}, min(A=3) = {mins[3.0]:.3e}",
        tolerance=0.0, passed=passed, runtime_s=dt,
    )


def _residual_maxima(params, field_factory, resolutions, t_center):
    wave_max, transport_max = [], []
    for n_phi, dt_step in resolutions:
        grid = GridSpec(rho_max=4.0, n_rho=24, n_phi=n_phi, dt=dt_step)
        fields = [sample_field(field_factory, grid, t_center + k * dt_step, params)
                  for k in (-1, 0, 1)]
        wave_max.append(float(np.max(np.abs(wave_residual(fields, params).values))))
        transport_max.append(float(np.max(np.abs(transport_residual(fields, params).values))))
    return wave_max, transport_max


def check_residual_discrimination(params=NATURAL_UNITS) -> CheckResult:
    """Standing wave solves the membrane equation but not one-way transport.

    The two-chirality standing wave satisfies the second-order membrane
    equation (wave residual refines to zero at second order) while its
    counter-propagating component violates the first-order transport
    equation (transport residual converges to a nonzero smooth limit).  A
    single-chirality wave satisfies both.  The suite reports both residuals
    rather than deciding which equation should govern.
    """
    def run():
        spec = StandingWaveSpec(ell=3, A=2.0, C=5.0)
        T = spec.period(params.omega)
        resolutions = []
        for n_phi in (64, 128, 256):
            dphi = 2.0 * math.pi / n_phi
            resolutions.append((n_phi, 0.5 * dphi / params.omega))
        standing = standing_wave_field(params, 0, spec)
        wave_s, transport_s = _residual_maxima(params, standing, resolutions, 0.3 * T)

        from .extended import WaveProfile
        single_profile = WaveProfile(f=lambda th: 0.5 * np.sin(th), g=lambda th: 0.0,
                                     C=1.0, kappa=6)
        single = extended_field(params, 0, single_profile)
        wave_1, transport_1 = _residual_maxima(params, single, resolutions, 0.3 * T)

        return {
            "standing_wave_residual": wave_s,
            "standing_transport_residual": transport_s,
            "single_chirality_wave_residual": wave_1,
            "single_chirality_transport_residual": transport_1,
        }

    data, dt = _timed(run)
    ws = data["standing_wave_residual"]
    ts = data["standing_transport_residual"]
    w1 = data["single_chirality_wave_residual"]
    t1 = data["single_chirality_transport_residual"]
    wave_ok = ws[0] / ws[1] >= 3.5 and ws[1] / ws[2] >= 3.5
    transport_persists = ts[2] > 0.1 * ts[0]
    single_ok = (w1[0] / w1[1] >= 3.5 and w1[1] / w1[2] >= 3.5
                 and t1[0] / t1[1] >= 3.5 and t1[1] / t1[2] >= 3.5)
    return CheckResult(
        name="residual_discrimination",
        provenance="two-chirality sums solve the membrane equation only; "
                   "single chirality solves both",
        target="wave residual shrinks >= 3.5x per refinement; transport residual persists",
        computed=(f"wave ratios {ws[0]/ws[1]:.2f}, {ws[1]/ws[2]:.2f}; "
                  f"transport fine/coarse = {ts[2]/ts[0]:.3f}"),
        tolerance=3.5, passed=wave_ok and transport_persists and single_ok,
        runtime_s=dt, details=data,
    )


def check_solver_convergence(params=NATURAL_UNITS) -> CheckResult:
    """Upwind solver converges to the exact rotation at first order."""
    def run():
        kappa = 2

        def W0(x, p):
            rho, phi = polar_from_xy(params, x, p)
            return radial_kernel(params, 0, rho) * np.sin(kappa * phi)

        period = 2.0 * math.pi / params.omega
        errors = []
        # 64 angular nodes is still pre-asymptotic for the accumulated
        # upwind diffusion over a full period; start at 128.
        for n_phi in (128, 256, 512):
            dphi = 2.0 * math.pi / n_phi
            grid = GridSpec(rho_max=4.0, n_rho=16, n_phi=n_phi, dt=0.5 * dphi / params.omega)
            start = sample_field(lambda x, p, t: W0(x, p), grid, 0.0, params)
            evolved = evolve_fd(start, params, period)
            exact = propagate_exact(W0, params, period)
            target = sample_field(lambda x, p, t: exact(x, p), grid, period, params)
            errors.append(float(np.max(np.abs(evolved.values - target.values))))
        orders = [math.log2(errors[k] / errors[k + 1]) for k in range(2)]
        return errors, orders

    (errors, orders), dt = _timed(run)
    passed = all(0.8 <= o <= 1.2 for o in orders)
    return CheckResult(
        name="solver_convergence",
        provenance="first-order upwind truncation analysis",
        target="observed order in [0.8, 1.2] across three grids over one period",
        computed=f"orders = {orders[0]:.3f}, {orders[1]:.3f}",
        tolerance=0.2, passed=passed, runtime_s=dt,
        details={"errors": errors},
    )


def check_running_wave_rejection(params=NATURAL_UNITS, threshold: float = 1e-3) -> CheckResult:
    """A single running cosine wave fails parity and breaks the marginals.

    Measured with n = 0, kappa = 2, A/C = 0.4, t = 0 at 21 sample points
    x in [-3, 3]; the 1e-3 deviation floor is a measured property of this
    configuration (brute-force scans put the actual deviation near 4e-2),
    not an analytic constant.
    """
    def run():
        profile = running_wave_profile(A=0.4, C=1.0, kappa=2)
        report = check_parity(params, profile)
        W = extended_field(params, 0, profile)
        worst = 0.0
        # the x = 0 line crosses the origin, where this profile is genuinely
        # discontinuous (its angular factor has no node on the axes), so the
        # line quadrature cannot converge there; every other line is smooth
        for x in np.linspace(-3.0, 3.0, 21):
            if abs(x) < 1e-9:
                continue
            dev = abs(marginal_over_p(W, params, float(x), 0.0)
                      - position_density(params, 0, float(x)))
            worst = max(worst, dev)
        return report, worst

    (report, worst), dt = _timed(run)
    passed = (not report.passed) and worst > threshold
    return CheckResult(
        name="running_wave_rejection",
        provenance="even-in-p cosine chirality violates the oddness hypothesis",
        target=f"parity check fails and marginal deviation exceeds {threshold:g}",
        computed=(f"parity passed = {report.passed}, max marginal deviation = {worst:.3e}"),
        tolerance=threshold, passed=passed, runtime_s=dt,
        details={"parity_violation_xbar": report.max_violation_xbar,
                 "parity_violation_p": report.max_violation_p},
    )


class _MustNotEvaluate:
    """Field stand-in proving that no derivative is taken for quadratic potentials."""

    def __call__(self, *args):
        raise AssertionError("field evaluated for a quadratic potential")


def check_moyal_degeneration(params=NATURAL_UNITS, tol: float = 1e-6) -> CheckResult:
    """Quantum transport series vanishes for quadratic potentials; matches
    the single surviving closed-form term for x^3 and x^4."""
    def run():
        hbar = params.hbar
        quadratic = PolynomialPotential((params.alpha**2 / (2 * params.m * params.omega**2),
                                         params.alpha, 0.5 * params.m * params.omega**2))
        shifted = PolynomialPotential((0.3, 1.7, 0.9))
        pts = [PhasePoint(0.3, -0.4), PhasePoint(1.1, 0.7)]
        for U in (quadratic, shifted):
            for pt in pts:
                if moyal_rhs(U, _MustNotEvaluate(), pt, hbar) != 0.0:
                    return math.inf, math.inf
        W = stationary_field(params, 2)
        cubic = PolynomialPotential((0.0, 0.0, 0.0, 1.0))
        quartic = PolynomialPotential((0.0, 0.0, 0.0, 0.0, 1.0))
        worst_exact = 0.0
        worst_fd = 0.0
        plain = lambda x, p, t=0.0: W(x, p, t)  # hides p_derivative: forces the FD path
        for pt in pts:
            wppp = W.p_derivative(3, pt.x, pt.p)
            closed_cubic = -(hbar**2 / 4.0) * wppp
            closed_quartic = -hbar**2 * pt.x * wppp
            for U, closed in ((cubic, closed_cubic), (quartic, closed_quartic)):
                scale = max(1.0, abs(closed))
                worst_exact = max(worst_exact, abs(moyal_rhs(U, W, pt, hbar) - closed) / scale)
                worst_fd = max(worst_fd, abs(moyal_rhs(U, plain, pt, hbar) - closed) / scale)
        return worst_exact, worst_fd

    (worst_exact, worst_fd), dt = _timed(run)
    passed = worst_exact < tol and worst_fd < tol
    return CheckResult(
        name="moyal_degeneration",
        provenance="odd derivatives above the potential degree vanish; "
                   "x^3 and x^4 leave one closed-form term",
        target="exactly 0 for quadratic potentials; closed-form single term otherwise",
        computed=f"max rel deviation: exact path {worst_exact:.3e}, FD path {worst_fd:.3e}",
        tolerance=tol, passed=passed, runtime_s=dt,
    )


#: Check registry: name -> (constructor, accepts a tolerance override).
SUITES = {
    "stationary_normalization": (check_stationary_normalization, True),
    "extended_normalization": (check_extended_normalization, True),
    "marginal_identities": (check_marginal_identities, True),
    "energy_spectrum": (check_energy_spectrum, True),
    "laguerre_moment_identity": (check_laguerre_moment_identity, True),
    "transform_oracle_agreement": (check_transform_oracle_agreement, True),
    "node_antinode_structure": (check_node_antinode_structure, True),
    "snapshot_identities": (check_snapshot_identities, True),
    "positivity_edge": (check_positivity_edge, False),
    "residual_discrimination": (check_residual_discrimination, False),
    "solver_convergence": (check_solver_convergence, False),
    "running_wave_rejection": (check_running_wave_rejection, False),
    "moyal_degeneration": (check_moyal_degeneration, True),
}


def run_suite(names=("all",), tol_override: float | None = None) -> VerificationReport:
    """Run the named checks (or all of them) and collect a report.

    ``tol_override`` replaces the default absolute tolerance of every check
    that takes one; ratio-based checks are unaffected.
    """
    if isinstance(names, str):
        names = (names,)
    expanded = []
    for name in names:
        if name == "all":
            expanded.extend(SUITES)
        elif name in SUITES:
            expanded.append(name)
        else:
            raise ValueError(f"unknown suite {name!r}; known: all, {', '.join(SUITES)}")
    seen = []
    for name in expanded:
        if name not in seen:
            seen.append(name)
    checks = []
    for name in seen:
        fn, takes_tol = SUITES[name]
        if tol_override is not None and takes_tol:
            checks.append(fn(tol=tol_override))
        else:
            checks.append(fn())
    return VerificationReport(checks=checks)
