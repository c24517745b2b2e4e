"""Phase-space quadrature: full-plane integrals, marginals, mean energy.

Integrands here are Gaussian-damped and smooth, so fixed-size rules with a
single Richardson-style mesh halving are enough: composite trapezoid on the
periodic angle (spectrally accurate), Gauss-Legendre in the radius, and
composite Simpson on marginal lines.  Every routine reports convergence
failure as :class:`~phasewave.errors.AccuracyError` instead of returning a
value it cannot back with an error estimate.

Fields are callables ``W(x, p, t)`` accepting numpy arrays in ``x, p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import AccuracyError, ConfigurationError
from .oscillator import TWO_PI, OscillatorParams, xy_from_polar
from .special import check_order, laguerre

#: Largest admissible ratio between the radial kernel tail and its peak.
_TAIL_BOUND = 1e-14


@dataclass(frozen=True)
class QuadratureSpec:
    """Discretization sizes and tolerance for the verification integrals.

    Parameters
    ----------
    rho_max : float
        Truncation radius of the polar disk.  Must leave the Gaussian
        kernel tail exp(-m rho_max^2 / (hbar omega)) below 1e-14 of its
        peak for the parameters in use; the disk integrators enforce this.
    n_rho, n_phi : int
        Radial (Gauss-Legendre) and angular (periodic trapezoid) node
        counts for disk integrals.
    line_window : float
        Half-width of 1-D marginal integrals in units of the Gaussian
        width of the integrand.
    n_line : int
        Panel count for 1-D integrals (rounded up to even for Simpson).
    tol : float
        Absolute tolerance requested from every integral.
    """

    rho_max: float = 7.0
    n_rho: int = 512
    n_phi: int = 512
    line_window: float = 9.0
    n_line: int = 2048
    tol: float = 1e-8

    def __post_init__(self):
        if not (math.isfinite(self.rho_max) and self.rho_max > 0.0):
            raise ValueError(f"rho_max must be positive, got {self.rho_max}")
        if not (math.isfinite(self.line_window) and self.line_window > 0.0):
            raise ValueError(f"line_window must be positive, got {self.line_window}")
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise ValueError(f"tol must be positive, got {self.tol}")
        for name in ("n_rho", "n_phi", "n_line"):
            if getattr(self, name) < 8:
                raise ValueError(f"{name} must be at least 8, got {getattr(self, name)}")


DEFAULT_QUAD = QuadratureSpec()


@lru_cache(maxsize=64)
def _leggauss(n):
    return np.polynomial.legendre.leggauss(n)


def _check_tail(params, rho_max):
    tail = math.exp(-params.m * rho_max**2 / (params.hbar * params.omega))
    if tail > _TAIL_BOUND:
        raise ConfigurationError(
            f"rho_max={rho_max} leaves a kernel tail {tail:.3e} above {_TAIL_BOUND:g}; "
            "enlarge the truncation radius"
        )


def _disk_sum(W, params, n_rho, n_phi, rho_max, t, radial_weight):
    """One fixed-size evaluation of (m/omega) * integral of W rho drho dphi."""
    xg, wg = _leggauss(n_rho)
    rho = 0.5 * rho_max * (xg + 1.0)
    wr = 0.5 * rho_max * wg
    phi = TWO_PI * np.arange(n_phi) / n_phi
    x, p = xy_from_polar(params, rho[:, None], phi[None, :])
    vals = np.asarray(W(x, p, t), dtype=float)
    vals = np.broadcast_to(vals, x.shape) * rho[:, None]
    if radial_weight is not None:
        vals = vals * radial_weight(rho)[:, None]
    ring = vals.sum(axis=1) * (TWO_PI / n_phi)
    return params.m / params.omega * float(np.dot(wr, ring))


def _disk_integral(W, params, quad, t, radial_weight, label):
    _check_tail(params, quad.rho_max)
    coarse = _disk_sum(W, params, quad.n_rho // 2, quad.n_phi // 2, quad.rho_max, t, radial_weight)
    fine = _disk_sum(W, params, quad.n_rho, quad.n_phi, quad.rho_max, t, radial_weight)
    est = abs(fine - coarse)
    if est <= quad.tol:
        return fine, est
    finer = _disk_sum(W, params, 2 * quad.n_rho, 2 * quad.n_phi, quad.rho_max, t, radial_weight)
    est = abs(finer - fine)
    if est > quad.tol:
        raise AccuracyError(
            f"{label}: estimate {est:.3e} above tol {quad.tol:g} after refinement",
            value=finer,
            estimate=est,
        )
    return finer, est


def _simpson(vals, h):
    return h / 3.0 * (vals[0] + vals[-1] + 4.0 * vals[1:-1:2].sum() + 2.0 * vals[2:-1:2].sum())


def _line_integral(f, a, b, n_panels, tol, label):
    """Composite Simpson with one halving-based refinement and error estimate."""
    n = int(n_panels)
    n += n % 2
    for _ in range(2):
        xs = np.linspace(a, b, n + 1)
        vals = np.asarray(f(xs), dtype=float)
        vals = np.broadcast_to(vals, xs.shape)
        h = (b - a) / n
        fine = _simpson(vals, h)
        coarse = _simpson(vals[::2], 2.0 * h)
        est = abs(fine - coarse)
        if est <= tol:
            return float(fine), float(est)
        n *= 2
    raise AccuracyError(
        f"{label}: estimate {est:.3e} above tol {tol:g} after refinement",
        value=float(fine),
        estimate=float(est),
    )


def phase_space_integral(W, params: OscillatorParams, quad: QuadratureSpec | None = None,
                         t: float = 0.0, return_error: bool = False):
    """Integral of W over the whole phase plane.

    Computed in polar coordinates with the Jacobian dx dp =
    (m/omega) rho drho dphi; raises ``AccuracyError`` if the mesh-halving
    estimate stays above ``quad.tol``.
    """
    quad = quad or DEFAULT_QUAD
    value, est = _disk_integral(W, params, quad, t, None, "phase_space_integral")
    return (value, est) if return_error else value


def mean_energy(W, params: OscillatorParams, t: float = 0.0,
                quad: QuadratureSpec | None = None, return_error: bool = False):
    """Dimensionless mean energy: integral of eps(xbar, p) W over the plane.

    Multiply by hbar*omega for the physical energy.
    """
    quad = quad or DEFAULT_QUAD
    scale = params.m / (2.0 * params.hbar * params.omega)

    def weight(rho):
        return scale * rho**2

    value, est = _disk_integral(W, params, quad, t, weight, "mean_energy")
    return (value, est) if return_error else value


def marginal_over_p(W, params: OscillatorParams, x, t: float = 0.0,
                    quad: QuadratureSpec | None = None, return_error: bool = False):
    """Integral of W over p at fixed x.

    Runs in Cartesian variables over a window of ``line_window`` Gaussian
    momentum widths sqrt(m hbar omega).
    """
    quad = quad or DEFAULT_QUAD
    half = quad.line_window * math.sqrt(params.m * params.hbar * params.omega)
    value, est = _line_integral(lambda ps: W(x, ps, t), -half, half, quad.n_line,
                                quad.tol, "marginal_over_p")
    return (value, est) if return_error else value


def marginal_over_x(W, params: OscillatorParams, p, t: float = 0.0,
                    quad: QuadratureSpec | None = None, return_error: bool = False):
    """Integral of W over x at fixed p.

    The window is centered on the shifted origin xbar = 0 and spans
    ``line_window`` Gaussian position widths sqrt(hbar/(m omega)).
    """
    quad = quad or DEFAULT_QUAD
    half = quad.line_window * math.sqrt(params.hbar / (params.m * params.omega))
    center = -params.shift
    value, est = _line_integral(lambda xs: W(xs, p, t), center - half, center + half,
                                quad.n_line, quad.tol, "marginal_over_x")
    return (value, est) if return_error else value


def _gl_line(f, a, b, n):
    xg, wg = _leggauss(n)
    xs = 0.5 * (b - a) * (xg + 1.0) + a
    return 0.5 * (b - a) * float(np.dot(wg, np.asarray(f(xs), dtype=float)))


def laguerre_energy_identity(n, quad: QuadratureSpec | None = None,
                             return_error: bool = False):
    """Numerically evaluate integral_0^inf exp(-2 eps) L_n(4 eps) eps d(eps).

    The exact value is (-1)^n (2n+1)/4; the integrand is negligible beyond
    eps = 40 for every admissible order, so the rule integrates [0, 40].
    """
    n = check_order(n)
    quad = quad or DEFAULT_QUAD

    def f(eps):
        return np.exp(-2.0 * eps) * laguerre(n, 4.0 * eps) * eps

    n_nodes = max(quad.n_rho, 128)
    coarse = _gl_line(f, 0.0, 40.0, n_nodes // 2)
    fine = _gl_line(f, 0.0, 40.0, n_nodes)
    est = abs(fine - coarse)
    if est > quad.tol:
        finer = _gl_line(f, 0.0, 40.0, 2 * n_nodes)
        est = abs(finer - fine)
        if est > quad.tol:
            raise AccuracyError(
                f"laguerre_energy_identity: estimate {est:.3e} above tol {quad.tol:g}",
                value=finer, estimate=est,
            )
        fine = finer
    return (fine, est) if return_error else fine
