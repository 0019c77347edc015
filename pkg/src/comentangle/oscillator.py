"""Classical centre-of-mass statistics of the two oscillating plates.

Each plate moves as ``ξ(t) = A sin(Ω t + δ)`` in the dimensionless coordinate
``ξ = α x`` with ``α = √(MΩ/ħ)`` and amplitude ``A = √(2n + 1)``.  Over an
interaction window much shorter than the mechanical period the plate only
sweeps ``[ξ0, ξ0 + ζ]`` with ``ξ0 = A sin δ``, and the weight it contributes
is the classical (arcsine) probability of that window.  Only the ratio
``r = ζ / A`` and the phase ``δ`` matter.

Negative phases and the ``ξ < 0`` half of the orbit are outside the model.
"""

import math
from dataclasses import dataclass

from scipy import integrate

from .errors import DomainViolation, OutOfDomain

HALF_PI = 0.5 * math.pi

# slack for boundary phases such as δ = asin(1 - r), where r + sin δ can
# round to 1 + ulp
BOUNDARY_TOL = 1e-12


def amplitude(n: int) -> float:
    return math.sqrt(2 * n + 1)


def max_phase(r: float) -> float:
    """Largest valid initial phase for relative displacement ``r``."""
    return math.asin(1.0 - r)


def max_com_factor(r: float) -> float:
    """Largest value of the two-plate factor when both plates have ratio ``r``."""
    return ((HALF_PI - max_phase(r)) / math.pi) ** 2


@dataclass(frozen=True)
class OscillatorSpec:
    """One plate's oscillation window.

    ``r`` is the canonical parameter; ``n`` only fixes the amplitude used to
    convert between ``r`` and the absolute window ``zeta``.  Use
    :meth:`from_displacement` to build a spec from ``(n, zeta)``.
    """

    r: float
    delta: float = 0.0
    n: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainViolation(f"quantum number n must be a non-negative integer, got {self.n}")
        if not (0.0 < self.r < 1.0):
            raise DomainViolation(f"relative displacement r must lie in (0, 1), got {self.r}")
        if not (0.0 <= self.delta < HALF_PI):
            raise DomainViolation(f"initial phase delta must lie in [0, pi/2), got {self.delta}")
        if self.r + math.sin(self.delta) > 1.0 + BOUNDARY_TOL:
            raise DomainViolation(
                f"r + sin(delta) = {self.r + math.sin(self.delta):.6g} exceeds 1: the window passes "
                f"the turning point (delta must be <= asin(1 - r) = {max_phase(self.r):.6g})"
            )

    @classmethod
    def from_displacement(cls, n: int, zeta: float, delta: float = 0.0) -> "OscillatorSpec":
        return cls(r=zeta / amplitude(n), delta=delta, n=n)

    @property
    def amplitude(self) -> float:
        return amplitude(self.n)

    @property
    def zeta(self) -> float:
        return self.r * self.amplitude

    @property
    def xi0(self) -> float:
        return self.amplitude * math.sin(self.delta)


@dataclass(frozen=True)
class ComFactor:
    k: float
    per_plate: tuple


def density_w(xi: float, n: int) -> float:
    """Arcsine position density ``1 / (π √(2n+1 - ξ²))``."""
    a2 = 2 * n + 1
    if abs(xi) >= math.sqrt(a2):
        raise OutOfDomain(f"|xi| = {abs(xi)} is not inside the orbit of amplitude {math.sqrt(a2)}")
    return 1.0 / (math.pi * math.sqrt(a2 - xi * xi))


def trajectory(spec: OscillatorSpec, phase: float) -> float:
    """Plate coordinate at mechanical phase ``phase = Ω t``."""
    return spec.amplitude * math.sin(phase + spec.delta)


def plate_probability(spec: OscillatorSpec) -> float:
    """Probability of the window ``[ξ0, ξ0 + ζ]``: ``(asin(r + sin δ) - δ) / π``."""
    arg = spec.r + math.sin(spec.delta)
    if arg > 1.0 + BOUNDARY_TOL:
        raise DomainViolation(f"r + sin(delta) = {arg:.6g} exceeds 1")
    return (math.asin(min(arg, 1.0)) - spec.delta) / math.pi


def com_factor(spec1: OscillatorSpec, spec2: OscillatorSpec) -> ComFactor:
    probs = []
    for plate, spec in enumerate((spec1, spec2), start=1):
        try:
            probs.append(plate_probability(spec))
        except DomainViolation as exc:
            raise DomainViolation(str(exc), plate=plate) from exc
    return ComFactor(k=probs[0] * probs[1], per_plate=tuple(probs))


def _half_orbit_integral(u_lo: float, u_hi: float) -> float:
    # ξ = A(1 - u²) on the ξ >= 0 half: w(ξ)|dξ/du| = 2 / (π √(2 - u²)),
    # which is smooth at the turning point u = 0
    val, _ = integrate.quad(
        lambda u: 2.0 / (math.pi * math.sqrt(2.0 - u * u)), u_lo, u_hi, epsabs=1e-14, epsrel=1e-13
    )
    return val


def integrate_density(lo: float, hi: float, n: int) -> float:
    """Quadrature of ``density_w`` over ``[lo, hi]`` inside ``[-A, A]``.

    The inverse-square-root singularities at the turning points are removed
    by the substitution ``|ξ| = A (1 - u²)`` on each half of the orbit.
    """
    amp = amplitude(n)
    if lo > hi:
        return -integrate_density(hi, lo, n)
    if lo < -amp - BOUNDARY_TOL or hi > amp + BOUNDARY_TOL:
        raise OutOfDomain(f"interval [{lo}, {hi}] leaves the orbit [-{amp}, {amp}]")

    def u_of(x):
        return math.sqrt(max(0.0, 1.0 - abs(x) / amp))

    total = 0.0
    if hi > 0.0:
        a = max(lo, 0.0)
        total += _half_orbit_integral(u_of(hi), u_of(a))
    if lo < 0.0:
        b = min(hi, 0.0)
        total += _half_orbit_integral(u_of(lo), u_of(b))
    return total


def plate_probability_quadrature(spec: OscillatorSpec) -> float:
    """Independent check of :func:`plate_probability` by quadrature of ``density_w``."""
    lo = spec.xi0
    hi = min(lo + spec.zeta, spec.amplitude)
    return integrate_density(lo, hi, spec.n)
