"""Sign convention for the signed distance of a parallel surface.

Canonical: the parallel at distance eps is f - eps*nu, which is the point set
swept by the discriminant of the distance squared unfolding.  With this
orientation the degeneration polynomials read

    C1(eps) = 1 + eps*kappa_s
    C2(eps) = eps^2 kappa_t^2 - (1 + b04 eps / 3) C1(eps).

``paper_minus`` measures distance along +nu instead, so its distance mu is
-eps; C2 then takes the "(b04 mu/3 - 1)(kappa_s mu - 1)" shape.
"""

from __future__ import annotations

from enum import Enum

from .jets import as_scalar


class EpsConvention(str, Enum):
    CANONICAL = "canonical"
    PAPER_MINUS = "paper_minus"

    @property
    def sign(self) -> int:
        return 1 if self is EpsConvention.CANONICAL else -1

    def to_canonical(self, eps):
        return eps if self.sign > 0 else -eps

    def from_canonical(self, eps):
        return eps if self.sign > 0 else -eps


def as_convention(value) -> EpsConvention:
    if isinstance(value, EpsConvention):
        return value
    return EpsConvention(str(value))


def c1(spec, eps):
    """1 + eps kappa_0 sin(theta_0), canonical eps."""
    return 1 + eps * spec.kappa_s0


def c2(spec, eps):
    """eps^2 (tau_0 - theta_1)^2 - (1 + b04 eps/3) C1(eps), canonical eps."""
    return eps * eps * spec.kappa_t0 ** 2 - (1 + spec.bij(0, 4) * eps / 3) * c1(spec, eps)


def c2_coefficients(spec) -> tuple:
    """(constant, linear, quadratic) coefficients of C2 in canonical eps."""
    b04_3 = spec.bij(0, 4) / 3
    ks = spec.kappa_s0
    return (as_scalar(-1, spec.exact), -(ks + b04_3), spec.kappa_t0 ** 2 - b04_3 * ks)


def c2_minus(spec, mu):
    """The quadratic in the paper_minus distance mu = -eps."""
    b04 = spec.bij(0, 4)
    return mu * mu * spec.kappa_t0 ** 2 - (b04 * mu / 3 - 1) * (mu * spec.kappa_s0 - 1)


def normal_probe(spec, eps, convention=EpsConvention.CANONICAL) -> tuple:
    """Probe (x, y, z, eps) on the normal line at the origin for a given distance.

    The canonical parallel point is -eps * nu(0) with nu(0) = (0, sin0, cos0).
    """
    e = as_convention(convention).to_canonical(eps)
    return (0 * e, -e * spec.sin0, -e * spec.cos0, e)
