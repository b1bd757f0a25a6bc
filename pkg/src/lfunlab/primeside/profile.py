"""Degree, conductor, and archimedean data of the L-function under study."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import PreconditionError


def grc_theta(m: int) -> float:
    """Known exponent toward unitarity of the local parameters: 1/2 - 1/(m^2+1)."""
    return 0.5 - 1.0 / (m * m + 1)


@dataclass(frozen=True)
class RepresentationProfile:
    """Degree m, arithmetic conductor, and the m archimedean parameters."""

    m: int
    conductor_arith: int
    mu: tuple[complex, ...]

    def __post_init__(self):
        if self.m < 1:
            raise PreconditionError(f"degree must be >= 1, got {self.m}")
        if self.conductor_arith < 1:
            raise PreconditionError(f"arithmetic conductor must be >= 1, got {self.conductor_arith}")
        if len(self.mu) != self.m:
            raise PreconditionError("need exactly m archimedean parameters")
        object.__setattr__(self, "mu", tuple(complex(v) for v in self.mu))

    @property
    def theta(self) -> float:
        return grc_theta(self.m)

    @property
    def q0(self) -> float:
        """Conductor at t = 0; always >= 3^m."""
        return conductor(self, 0.0)

    @classmethod
    def classical(cls) -> "RepresentationProfile":
        """Degree 1: the Riemann zeta function."""
        return cls(m=1, conductor_arith=1, mu=(0j,))

    @classmethod
    def holomorphic(cls, weight: int, level: int) -> "RepresentationProfile":
        """Degree 2, archimedean parameters {(k-1)/2, (k+1)/2} from the
        gamma factors of a weight-k form."""
        return cls(
            m=2,
            conductor_arith=level,
            mu=(complex((weight - 1) / 2.0), complex((weight + 1) / 2.0)),
        )


def conductor(profile: RepresentationProfile, t: float) -> float:
    """Analytic conductor Q(t) = N * prod_j (3 + |t + mu_j|)."""
    q = float(profile.conductor_arith)
    for mu in profile.mu:
        q *= 3.0 + abs(t + mu)
    return q
