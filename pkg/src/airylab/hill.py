"""Finite Hill operators: -d^2/dy^2 + j*xi + (2/sqrt(beta)) W' on [0, xi].

White noise enters as cell-averaged Brownian increments dW_i/h on the
finite-difference diagonal; the Riccati counter consumes the same
increments as piecewise-constant rates, so the two eigenvalue counts are
coupled path by path.

Eigenvalues of the Dirichlet (tridiagonal) matrix come from LAPACK Sturm
bisection (stebz); the periodic matrix carries two corner entries and is
solved densely, which restricts periodic grids to <= 4096 cells.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .errors import ConfigurationError, DomainError, IncompleteSpectrumError

_PERIODIC_DENSE_MAX = 4096
_INF = math.inf


class Boundary(enum.Enum):
    DIRICHLET = "dirichlet"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class NoisePath:
    """Discretized Brownian path: per-cell increments ~ Normal(0, step)."""

    step: float
    increments: np.ndarray
    seed: int

    def __post_init__(self):
        if not self.step > 0.0:
            raise ConfigurationError("NoisePath requires step > 0")
        object.__setattr__(self, "increments", np.asarray(self.increments, dtype=float))

    @classmethod
    def sample(cls, rng: np.random.Generator, grid_n: int, step: float,
               drift_rate: float = 0.0, seed: int = -1) -> "NoisePath":
        inc = rng.standard_normal(grid_n) * math.sqrt(step) + drift_rate * step
        return cls(step=step, increments=inc, seed=seed)

    @classmethod
    def zeros(cls, grid_n: int, step: float) -> "NoisePath":
        return cls(step=step, increments=np.zeros(grid_n), seed=-1)

    @property
    def grid_n(self) -> int:
        return int(self.increments.size)

    def terminal_increment(self) -> float:
        """W(end) - W(0)."""
        return float(self.increments.sum())


@dataclass(frozen=True)
class SpectrumSample:
    """Sorted eigenvalues <= cap from one realization of a random operator."""

    eigenvalues: np.ndarray
    cap: float
    complete_below_cap: bool

    def __post_init__(self):
        ev = np.sort(np.asarray(self.eigenvalues, dtype=float))
        object.__setattr__(self, "eigenvalues", ev)
        if not math.isfinite(self.cap):
            raise ConfigurationError("spectrum cap must be finite")
        if ev.size and ev[-1] > self.cap + 1e-9 * max(1.0, abs(self.cap)):
            raise ConfigurationError("eigenvalues exceed the stated cap")

    def deduplicated(self, rel_tol: float = 1e-12) -> np.ndarray:
        """Strictly increasing eigenvalues after merging near-ties."""
        ev = self.eigenvalues
        if ev.size == 0:
            return ev
        keep = [ev[0]]
        for lam in ev[1:]:
            if lam - keep[-1] > rel_tol * max(1.0, abs(lam)):
                keep.append(lam)
        return np.array(keep)

    def shifted(self, offset: float) -> "SpectrumSample":
        return SpectrumSample(eigenvalues=self.eigenvalues + offset,
                              cap=self.cap + offset,
                              complete_below_cap=self.complete_below_cap)

    def count_below(self, lam: float) -> int:
        if lam > self.cap and self.complete_below_cap:
            raise IncompleteSpectrumError("count requested above the spectrum cap")
        return int(np.searchsorted(self.eigenvalues, lam, side="right"))


@dataclass(frozen=True)
class HillConfig:
    """Level j Hill operator on [0, xi] with grid_n cells."""

    j: int
    xi: float
    beta: float
    boundary: Boundary = Boundary.DIRICHLET
    grid_n: int = 1024
    lambda_cap: float = 50.0

    def __post_init__(self):
        if self.j < 0:
            raise DomainError("level index j must be a natural number")
        if not self.xi > 0.0:
            raise DomainError("HillConfig requires xi > 0")
        if not self.beta > 0.0:
            raise DomainError("HillConfig requires beta > 0")
        if self.grid_n < 16:
            raise ConfigurationError("grid_n must be at least 16")
        if not math.isfinite(self.lambda_cap):
            raise ConfigurationError("lambda_cap must be finite")

    @property
    def h(self) -> float:
        return self.xi / self.grid_n


def _check_path(config: HillConfig, path: NoisePath) -> None:
    if path.grid_n != config.grid_n:
        raise ConfigurationError(
            f"path has {path.grid_n} cells, config expects {config.grid_n}")
    if abs(path.step * config.grid_n - config.xi) > 1e-12 * config.xi:
        raise ConfigurationError("path.step * grid_n must equal xi")


def tridiagonal_eigenvalues(diag: np.ndarray, off: np.ndarray, cap: float) -> np.ndarray:
    """All eigenvalues <= cap of a symmetric tridiagonal matrix (Sturm bisection)."""
    lower = float(diag.min() - 2.0 * np.abs(off).max() - 1.0) if off.size else float(diag.min() - 1.0)
    if lower > cap:
        return np.empty(0)
    return eigvalsh_tridiagonal(diag, off, select="v", select_range=(lower, cap),
                                check_finite=False, lapack_driver="stebz")


def hill_matrix(config: HillConfig, path: NoisePath) -> tuple[np.ndarray, np.ndarray]:
    """(diagonal, off-diagonal) of the Dirichlet finite-difference matrix.

    Interior node i (i = 1 .. grid_n-1) carries the increment of cell i, so
    the Dirichlet matrix is exactly the principal submatrix of the periodic
    one with node 0 removed (Cauchy interlacing holds verbatim).
    """
    _check_path(config, path)
    h = config.h
    noise = 2.0 / math.sqrt(config.beta) * path.increments / h
    diag = 2.0 / h ** 2 + config.j * config.xi + noise[1:]
    off = np.full(config.grid_n - 2, -1.0 / h ** 2)
    return diag, off


def hill_spectrum(config: HillConfig, path: NoisePath) -> SpectrumSample:
    """Eigenvalues <= lambda_cap under the configured boundary condition."""
    _check_path(config, path)
    h = config.h
    if config.boundary is Boundary.DIRICHLET:
        diag, off = hill_matrix(config, path)
        ev = tridiagonal_eigenvalues(diag, off, config.lambda_cap)
    else:
        n = config.grid_n
        if n > _PERIODIC_DENSE_MAX:
            raise ConfigurationError(
                f"periodic boundary solved densely, grid_n must be <= {_PERIODIC_DENSE_MAX}")
        noise = 2.0 / math.sqrt(config.beta) * path.increments / h
        m = np.zeros((n, n))
        idx = np.arange(n)
        m[idx, idx] = 2.0 / h ** 2 + config.j * config.xi + noise
        m[idx[:-1], idx[:-1] + 1] = -1.0 / h ** 2
        m[idx[:-1] + 1, idx[:-1]] = -1.0 / h ** 2
        m[0, n - 1] = m[n - 1, 0] = m[0, n - 1] - 1.0 / h ** 2
        all_ev = np.linalg.eigvalsh(m)
        ev = all_ev[all_ev <= config.lambda_cap]
    return SpectrumSample(eigenvalues=ev, cap=config.lambda_cap, complete_below_cap=True)


def riccati_cell_counts(q: np.ndarray, h: float) -> np.ndarray:
    """Explosions per cell of g' = q_i - g^2, g(0) = +inf, restart at +inf.

    Each cell has a constant coefficient, so the flow is advanced by the
    exact cot/tanh/coth solution; counting needs no blow-up thresholds.
    """
    g = _INF
    counts = np.zeros(q.size, dtype=np.int64)
    sqrt = math.sqrt
    tanh = math.tanh
    atanh = math.atanh
    atan = math.atan
    tan = math.tan
    floor = math.floor
    half_pi = 0.5 * math.pi
    pi = math.pi
    for i, qi in enumerate(q):
        c = 0
        if qi > 0.0:
            k = sqrt(qi)
            if g == _INF:
                u = k * h
                g = k / tanh(u) if u < 20.0 else k
            elif g >= k:
                r = k / g
                u = atanh(r if r < 1.0 else 1.0 - 1e-17) + k * h
                g = k / tanh(u) if u < 20.0 else k
            elif g > -k:
                g = k * tanh(atanh(g / k) + k * h)
            else:
                r = k / g  # in (-1, 0]
                u0 = atanh(r if r > -1.0 else -1.0 + 1e-17)
                ystar = -u0 / k
                if ystar <= h:
                    c = 1
                    rem = h - ystar
                    if rem > 0.0:
                        u = k * rem
                        g = k / tanh(u) if u < 20.0 else k
                    else:
                        g = _INF
                else:
                    g = k / tanh(u0 + k * h)
        elif qi == 0.0:
            if g == _INF:
                g = 1.0 / h
            elif g > 0.0:
                g = g / (1.0 + g * h)
            elif g == 0.0:
                pass
            else:
                ystar = -1.0 / g
                if ystar <= h:
                    c = 1
                    rem = h - ystar
                    g = 1.0 / rem if rem > 0.0 else _INF
                else:
                    g = g / (1.0 + g * h)
        else:
            k = sqrt(-qi)
            phi0 = -half_pi if g == _INF else atan(-g / k)
            phi_end = phi0 + k * h
            if phi_end >= half_pi:
                c = int(floor((phi_end - half_pi) / pi)) + 1
            phi_exit = phi_end - c * pi
            g = _INF if phi_exit <= -half_pi else -k * tan(phi_exit)
        counts[i] = c
    return counts


def hill_riccati_rates(config: HillConfig, path: NoisePath) -> np.ndarray:
    """Per-cell constant potential rates j*xi + (2/sqrt(beta)) dW_i/h."""
    _check_path(config, path)
    return config.j * config.xi + 2.0 / math.sqrt(config.beta) * path.increments / config.h


def riccati_count_hill(lam: float, config: HillConfig, path: NoisePath) -> int:
    """Number of Riccati explosions on (0, xi]; equals #{eigenvalues <= lam}."""
    if config.boundary is not Boundary.DIRICHLET:
        raise DomainError("Riccati counting applies to the Dirichlet boundary")
    q = hill_riccati_rates(config, path) - lam
    return int(riccati_cell_counts(q, config.h).sum())


def linear_statistic(spectrum: SpectrumSample, z: float, t: float) -> float:
    """-sum_i (lambda_i t^{1/3} + z t)_-; needs the spectrum up to -z t^{2/3}."""
    threshold = -z * t ** (2.0 / 3.0)
    if spectrum.cap < threshold - 1e-9 * (1.0 + abs(threshold)):
        raise IncompleteSpectrumError(
            f"spectrum cap {spectrum.cap} below threshold {threshold}: sum would be wrong")
    ev = spectrum.eigenvalues
    contrib = ev * t ** (1.0 / 3.0) + z * t
    return float(np.minimum(contrib, 0.0).sum())


def counting_integral(spectrum: SpectrumSample, z: float, t: float) -> float:
    """-t^{1/3} * integral of N(lambda) over (-inf, -z t^{2/3}].

    Integrates the counting step function exactly on the partition induced
    by the eigenvalues; dual representation of linear_statistic.
    """
    threshold = -z * t ** (2.0 / 3.0)
    if spectrum.cap < threshold - 1e-9 * (1.0 + abs(threshold)):
        raise IncompleteSpectrumError("spectrum cap below threshold")
    ev = spectrum.eigenvalues[spectrum.eigenvalues <= threshold]
    if ev.size == 0:
        return 0.0
    edges = np.append(ev, threshold)
    widths = np.diff(edges)
    counts = np.arange(1, ev.size + 1, dtype=float)
    return -t ** (1.0 / 3.0) * float(np.dot(counts, widths))
