"""Constant-drift deviation problem for the level decomposition.

Per level, the cost of forcing the noise to carry drift v against the
spectral payoff is

    drift_objective(v) = v^2/2 + (2/3pi) ((-z - (2/sqrt(beta)) v - nu)_+)^{3/2},

minimized in closed form by optimal_drift.  Integrating the optimal cost
over the continuum level variable nu in [0, -z] reproduces the scaled rate
function exactly; variational_value checks that identity numerically and
riemann_sum_value realizes the discrete-level approximation of it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .rate import phi_minus_scaled

_A_LO = -1.0 / 3.0
_A_HI = 2.0 / 3.0


@dataclass(frozen=True)
class DriftProblem:
    """One level of the drift problem: deviation depth z, noise beta, level nu."""

    z: float
    beta: float
    nu: float

    def __post_init__(self):
        if self.z > 0.0:
            raise DomainError("DriftProblem requires z <= 0")
        if not self.beta > 0.0:
            raise DomainError("DriftProblem requires beta > 0")
        if self.nu < 0.0:
            raise DomainError("DriftProblem requires nu >= 0")


@dataclass(frozen=True)
class DiscretizationParams:
    """Mesoscale discretization: interval length xi = t^a, n levels."""

    t: float
    a: float
    n: int
    xi: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if not self.t > 0.0:
            raise DomainError("DiscretizationParams requires t > 0")
        if not (_A_LO < self.a < _A_HI):
            raise DomainError("mesoscale exponent a must lie strictly in (-1/3, 2/3)")
        if self.n < 0:
            raise DomainError("n must be a natural number")
        xi_exact = self.t ** self.a
        if self.xi is None:
            object.__setattr__(self, "xi", xi_exact)
        elif abs(self.xi - xi_exact) > 1e-12 * xi_exact:
            raise DomainError("xi must equal t^a to relative precision 1e-12")

    @classmethod
    def from_deviation(cls, z: float, t: float, a: float) -> "DiscretizationParams":
        """Level count n = ceil(-z t^{2/3-a}) covering the active range."""
        if z > 0.0:
            raise DomainError("from_deviation requires z <= 0")
        n = int(math.ceil(-z * t ** (2.0 / 3.0 - a)))
        return cls(t=t, a=a, n=n)

    @property
    def level_spacing(self) -> float:
        """Spacing of the continuum level variable: t^{a - 2/3}."""
        return self.t ** (self.a - 2.0 / 3.0)


def drift_objective(v: float, p: DriftProblem) -> float:
    """Girsanov cost plus spectral payoff of a constant drift v."""
    x = -p.z - 2.0 / math.sqrt(p.beta) * v - p.nu
    xp = max(x, 0.0)
    return 0.5 * v * v + 2.0 / (3.0 * math.pi) * xp ** 1.5


def optimal_drift(p: DriftProblem) -> float:
    """Closed-form minimizer of drift_objective."""
    c = max(-p.z - p.nu, 0.0)
    s = math.sqrt(1.0 + (p.beta * math.pi / 2.0) ** 2 * c)
    return 4.0 / (math.pi ** 2 * p.beta ** 1.5) * (s - 1.0)


def weyl_count(lam: float, shift: float, xi: float) -> float:
    """Leading-order eigenvalue count of a shifted Laplacian on [0, xi]."""
    if not xi > 0.0:
        raise DomainError("weyl_count requires xi > 0")
    return xi / math.pi * math.sqrt(max(lam - shift, 0.0))


def linear_statistic_drifted(z: float, t: float, beta: float, v: float, j: int,
                             params: DiscretizationParams) -> float:
    """Closed-form drifted linear statistic of one level.

    Equals -t^{1/3} * integral of weyl_count over (-inf, -z t^{2/3}] with
    shift (2/sqrt(beta)) t^{2/3} v + j xi.
    """
    x = -z - 2.0 / math.sqrt(beta) * v - j * t ** (params.a - 2.0 / 3.0)
    xp = max(x, 0.0)
    return -2.0 * t ** (params.a + 4.0 / 3.0) / (3.0 * math.pi) * xp ** 1.5


def _objective_values(nu: np.ndarray, z: float, beta: float) -> np.ndarray:
    """Vectorized drift_objective at the optimal drift, as a function of nu."""
    c = np.maximum(-z - nu, 0.0)
    s = np.sqrt(1.0 + (beta * math.pi / 2.0) ** 2 * c)
    v = 4.0 / (math.pi ** 2 * beta ** 1.5) * (s - 1.0)
    x = np.maximum(c - 2.0 / math.sqrt(beta) * v, 0.0)
    return 0.5 * v * v + 2.0 / (3.0 * math.pi) * x ** 1.5


def variational_value(z: float, beta: float, *, abs_tol: float = 1e-10,
                      max_order: int = 512) -> float:
    """Integral of the optimal per-level cost over nu in [0, -z].

    Gauss-Legendre with order doubling until the change is below abs_tol
    (scaled by the value).  The integrand is analytic on [0, -z], so the
    gate triggers at modest order.
    """
    if z > 0.0:
        raise DomainError("variational_value requires z <= 0")
    if not beta > 0.0:
        raise DomainError("variational_value requires beta > 0")
    if z == 0.0:
        return 0.0
    upper = -z
    prev = None
    order = 32
    while order <= max_order:
        nodes, weights = np.polynomial.legendre.leggauss(order)
        nu = 0.5 * upper * (nodes + 1.0)
        w = 0.5 * upper * weights
        val = float(np.dot(w, _objective_values(nu, z, beta)))
        if prev is not None and abs(val - prev) <= abs_tol * (1.0 + abs(val)):
            return val
        prev = val
        order *= 2
    raise DomainError("variational_value did not converge (analytic integrand expected)")


def riemann_sum_value(z: float, beta: float, params: DiscretizationParams) -> float:
    """Discrete-level approximation: spacing t^{a-2/3} times the level sum.

    Converges first order in the spacing to variational_value as t grows.
    """
    if z > 0.0:
        raise DomainError("riemann_sum_value requires z <= 0")
    if params.n == 0:
        return 0.0
    spacing = params.level_spacing
    nu = spacing * np.arange(params.n)
    return spacing * float(_objective_values(nu, z, beta).sum())


def variational_report(z: float, beta: float) -> dict:
    """Value, scaled-rate target and their relative gap (the master identity)."""
    val = variational_value(z, beta)
    target = phi_minus_scaled(beta, z)
    rel = abs(val - target) / target if target != 0.0 else abs(val - target)
    return {"variational_value": val, "phi_scaled": target, "rel_err": rel}
