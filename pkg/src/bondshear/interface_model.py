"""Statistics of the van der Waals energy across a rough bonded interface.

The local gap ``d`` between the two surfaces is modelled as a normal
distribution truncated to ``[d_min, d_max]``, where ``d_min`` is a single
hydroxyl length and ``d_max = sqrt(2) * (rms_top + rms_bottom)``. The flat
plate energy ``W(d) = -A / (12 pi d^2)`` is then averaged over that
distribution.

``E[d^-2]`` of a truncated normal has no elementary closed form, so the
energy moments use adaptive quadrature in the standardized variable.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import integrate, optimize
from scipy.special import log_ndtr, ndtr

from . import reference

QUAD_RTOL = 1e-6
_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)
# exp(-70) ~ 4e-31: density beyond this many log-units below its peak is dropped
_TAIL_LOG_CUTOFF = 70.0


class DegenerateInterfaceError(ValueError):
    """Roughness too small for the gap range to exceed ``d_min``."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""


class CalibrationError(ArithmeticError):
    """Calibration targets are infeasible or the fit failed to converge."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


def vdw_energy(hamaker, separation):
    """Interaction energy per unit area (J/m^2) of two flat half-spaces.

    Negative for a positive Hamaker constant. Accepts scalars or arrays.
    """
    d = np.asarray(separation, dtype=float)
    if np.any(~(d > 0)):
        raise ValueError("separation must be positive")
    w = -hamaker / (12.0 * np.pi * d * d)
    return float(w) if w.ndim == 0 else w


def _log_mass(a, b):
    """log(Phi(b) - Phi(a)) for a <= b, stable in both tails."""
    if b <= a:
        return -math.inf
    if a >= 0:
        la, lb = log_ndtr(-a), log_ndtr(-b)
        return float(la + math.log1p(-math.exp(lb - la)))
    if b <= 0:
        la, lb = log_ndtr(a), log_ndtr(b)
        return float(lb + math.log1p(-math.exp(la - lb)))
    return math.log(ndtr(b) - ndtr(a))


@dataclass(frozen=True)
class SeparationDistribution:
    """Normal(location, scale) truncated to [d_min, d_max]; all lengths in m."""

    d_min: float
    d_max: float
    location: float
    scale: float
    _log_norm: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (0 < self.d_min < self.d_max) or not math.isfinite(self.d_max):
            raise ValueError(f"need 0 < d_min < d_max, got d_min={self.d_min!r}, d_max={self.d_max!r}")
        if not (self.scale > 0) or not math.isfinite(self.scale) or not math.isfinite(self.location):
            raise ValueError(f"scale must be positive and finite, got {self.scale!r}")
        log_norm = _log_mass(self.alpha, self.beta)
        if not math.isfinite(log_norm):
            raise ValueError("truncation window carries no representable probability mass")
        object.__setattr__(self, "_log_norm", log_norm)

    @property
    def alpha(self):
        return (self.d_min - self.location) / self.scale

    @property
    def beta(self):
        return (self.d_max - self.location) / self.scale

    def pdf(self, d):
        d = np.asarray(d, dtype=float)
        z = (d - self.location) / self.scale
        dens = np.exp(-0.5 * z * z - _LOG_SQRT_2PI - self._log_norm) / self.scale
        return np.where((d >= self.d_min) & (d <= self.d_max), dens, 0.0)

    def cdf(self, d):
        if d <= self.d_min:
            return 0.0
        if d >= self.d_max:
            return 1.0
        z = (d - self.location) / self.scale
        return min(1.0, max(0.0, math.exp(_log_mass(self.alpha, z) - self._log_norm)))

    def z_window(self):
        """Standardized integration range that holds all non-negligible mass."""
        a, b = self.alpha, self.beta
        if a >= 0:
            return a, min(b, math.sqrt(a * a + 2 * _TAIL_LOG_CUTOFF))
        if b <= 0:
            return max(a, -math.sqrt(b * b + 2 * _TAIL_LOG_CUTOFF)), b
        half = math.sqrt(2 * _TAIL_LOG_CUTOFF)
        return max(a, -half), min(b, half)

    def expect(self, func, rtol=QUAD_RTOL):
        """E[func(d)] by adaptive quadrature; raises QuadratureError on failure."""
        lo, hi = self.z_window()
        loc, scale, log_norm = self.location, self.scale, self._log_norm

        def integrand(z):
            return func(loc + scale * z) * math.exp(-0.5 * z * z - _LOG_SQRT_2PI - log_norm)

        out = integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=rtol, limit=200, full_output=1)
        if len(out) > 3:
            raise QuadratureError(f"quadrature did not converge: {out[3].strip()}")
        return out[0]


def mean_separation(dist: SeparationDistribution) -> float:
    """Closed-form mean of the truncated normal (m)."""
    a, b = dist.alpha, dist.beta
    log_phi_a = -0.5 * a * a - _LOG_SQRT_2PI
    log_phi_b = -0.5 * b * b - _LOG_SQRT_2PI
    shift = math.exp(log_phi_a - dist._log_norm) - math.exp(log_phi_b - dist._log_norm)
    return min(dist.d_max, max(dist.d_min, dist.location + dist.scale * shift))


def proximity_fraction(dist: SeparationDistribution, threshold: float) -> float:
    """Fraction of the interface with gap ``<= threshold``."""
    if not threshold > 0:
        raise ValueError("threshold must be positive")
    return dist.cdf(threshold)


@dataclass(frozen=True)
class EnergyMoments:
    mean_energy: float
    std_energy: float
    hamaker_used: float
    distribution_used: SeparationDistribution
    signed_mean: float


def energy_moments(hamaker: float, dist: SeparationDistribution, rtol=QUAD_RTOL) -> EnergyMoments:
    """Mean magnitude and standard deviation of W(d) over ``dist``.

    The variance is integrated about the mean rather than as
    ``E[W^2] - E[W]^2`` to avoid cancellation for narrow distributions.
    """
    # Integrate the shape d^-2 and scale by A afterwards: exact linearity in A.
    coeff = 1.0 / (12.0 * math.pi)
    inv_sq_mean = dist.expect(lambda d: coeff / (d * d), rtol)
    centred = dist.expect(lambda d: (coeff / (d * d) - inv_sq_mean) ** 2, rtol)
    signed = -hamaker * inv_sq_mean
    return EnergyMoments(
        mean_energy=abs(signed),
        std_energy=abs(hamaker) * math.sqrt(max(centred, 0.0)),
        hamaker_used=hamaker,
        distribution_used=dist,
        signed_mean=signed,
    )


@dataclass(frozen=True)
class SeparationPolicy:
    """Maps roughness to (location, scale) as multiples of the top-surface rms."""

    location_factor: float
    scale_factor: float
    label: str = "custom"

    def distribution(self, rms_top, rms_bottom, d_min=reference.D_MIN_HYDROXYL):
        return separation_from_roughness(rms_top, rms_bottom, d_min, self)


HALF_NORMAL = SeparationPolicy(0.0, 1.0, "half-normal")


def separation_from_roughness(rms_top, rms_bottom, d_min=reference.D_MIN_HYDROXYL, policy=None):
    """Build the gap distribution for two surfaces of the given rms (m).

    ``d_max`` is ``sqrt(2) * (rms_top + rms_bottom)``. The normal's location
    and scale come from ``policy``; by default the calibrated policy.
    """
    if not (rms_top > 0 and rms_bottom > 0):
        raise ValueError(f"rms values must be positive, got {rms_top!r}, {rms_bottom!r}")
    if not d_min > 0:
        raise ValueError(f"d_min must be positive, got {d_min!r}")
    d_max = math.sqrt(2.0) * (rms_top + rms_bottom)
    if d_max <= d_min:
        raise DegenerateInterfaceError(
            f"d_max = {d_max:.4g} m does not exceed d_min = {d_min:.4g} m; surfaces too smooth for this model"
        )
    if policy is None:
        policy = calibrated_policy()
    return SeparationDistribution(d_min, d_max, policy.location_factor * rms_top, policy.scale_factor * rms_top)


class CalibrationTargets(NamedTuple):
    mean_separation: float = reference.MEAN_SEPARATION
    mean_energy: float = reference.MEAN_ENERGY
    std_energy: float = reference.STD_ENERGY


@dataclass(frozen=True)
class CalibrationResult:
    location: float
    scale: float
    distribution: SeparationDistribution
    achieved: CalibrationTargets
    targets: CalibrationTargets
    residuals: tuple
    cost: float

    def policy(self, rms_top) -> SeparationPolicy:
        return SeparationPolicy(self.location / rms_top, self.scale / rms_top, "calibrated")


def _observables(hamaker, dist, rtol=QUAD_RTOL):
    m = energy_moments(hamaker, dist, rtol)
    return CalibrationTargets(mean_separation(dist), m.mean_energy, m.std_energy)


def calibrate(
    rms_top=reference.RMS_DIAMOND,
    rms_bottom=reference.RMS_SILICA,
    d_min=reference.D_MIN_HYDROXYL,
    hamaker=reference.HAMAKER_VACUUM,
    targets=CalibrationTargets(),
) -> CalibrationResult:
    """Least-squares fit of (location, scale) to three targets.

    Minimizes the sum of squared relative errors in mean separation, mean
    energy magnitude and energy standard deviation. The truncation bounds
    stay fixed by the roughness.

    Raises
    ------
    CalibrationError
        When a target lies outside what any distribution on
        ``[d_min, d_max]`` can produce, or the optimizer fails.
    """
    targets = CalibrationTargets(*targets)
    if not all(math.isfinite(t) and t > 0 for t in targets):
        raise CalibrationError(f"targets must be finite and positive, got {tuple(targets)}")
    d_max = math.sqrt(2.0) * (rms_top + rms_bottom)
    if d_max <= d_min:
        raise DegenerateInterfaceError(f"d_max = {d_max:.4g} m does not exceed d_min = {d_min:.4g} m")
    w_near, w_far = abs(vdw_energy(hamaker, d_min)), abs(vdw_energy(hamaker, d_max))
    if not d_min < targets.mean_separation < d_max:
        raise CalibrationError(f"mean separation target outside [{d_min:.4g}, {d_max:.4g}] m")
    if not w_far < targets.mean_energy < w_near:
        raise CalibrationError(f"mean energy target outside achievable range [{w_far:.4g}, {w_near:.4g}] J/m^2")
    if not targets.std_energy < 0.5 * (w_near - w_far):
        raise CalibrationError("energy spread target exceeds half the achievable energy range")

    t = np.asarray(targets, dtype=float)

    def unpack(x):
        return SeparationDistribution(d_min, d_max, x[0] * d_max, math.exp(x[1]) * d_max)

    def residual(x):
        try:
            # tight tolerance keeps finite-difference Jacobians smooth
            got = np.asarray(_observables(hamaker, unpack(x), rtol=1e-10))
        except (ValueError, QuadratureError):
            return np.full(3, 1e3)
        return (got - t) / t

    lo, hi = np.array([-5.0, math.log(0.005)]), np.array([2.0, math.log(20.0)])
    grid = [
        (loc, ls)
        for loc in np.linspace(-2.0, 1.0, 13)
        for ls in np.linspace(math.log(0.02), math.log(3.0), 11)
    ]
    scored = sorted((float(np.sum(residual(x) ** 2)), x) for x in grid)
    best = None
    for _, x0 in scored[:4]:
        fit = optimize.least_squares(residual, np.asarray(x0), bounds=(lo, hi), xtol=1e-12, ftol=1e-12, gtol=1e-12)
        if best is None or fit.cost < best.cost:
            best = fit
    dist = unpack(best.x)
    achieved = _observables(hamaker, dist)
    result = CalibrationResult(
        location=dist.location,
        scale=dist.scale,
        distribution=dist,
        achieved=achieved,
        targets=targets,
        residuals=tuple(float(r) for r in (np.asarray(achieved) - t) / t),
        cost=float(2 * best.cost),
    )
    if best.status <= 0:
        raise CalibrationError(f"least-squares fit did not converge: {best.message}", best=result)
    return result


@functools.lru_cache(maxsize=None)
def calibrated_policy() -> SeparationPolicy:
    """Policy fitted once to the reported diamond/silica targets.

    Location and scale are stored relative to the diamond rms so the same
    shape can be reused along a roughness sweep.
    """
    return calibrate().policy(reference.RMS_DIAMOND)
