"""Stochastic Airy operator: spectra, explosion counting, localization
sandwich and importance-sampled large-deviation estimates.

The operator -d^2/dx^2 + x + (2/sqrt(beta)) B' on [0, domain_l] is
discretized with the same cell-averaged noise convention as the Hill
module, so Riccati counts and matrix counts run on coupled paths.

Importance sampling drifts the Brownian path piecewise per mesoscale level
(window j covers ((j-1) xi, j xi], drift rate t^{2/3} v_j) and reweights
with the exact Gaussian-increment Girsanov factor, which keeps the
estimator unbiased at any resolution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError, UnderflowDiagnostic
from .hill import (Boundary, HillConfig, NoisePath, SpectrumSample, hill_spectrum,
                   linear_statistic, riccati_cell_counts, tridiagonal_eigenvalues)
from .mc import McEstimate, estimate_from_log_samples, product_estimate, spawn_rng
from .variational import DiscretizationParams, DriftProblem, optimal_drift

_DOMAIN_MARGIN_MIN = 4.0


@dataclass(frozen=True)
class SaoConfig:
    """Truncated operator on [0, domain_l] with grid_n cells."""

    beta: float
    domain_l: float
    grid_n: int
    lambda_cap: float
    seed: int = 0

    def __post_init__(self):
        if not self.beta > 0.0:
            raise DomainError("SaoConfig requires beta > 0")
        if not self.domain_l > 0.0:
            raise ConfigurationError("SaoConfig requires domain_l > 0")
        if self.grid_n < 16:
            raise ConfigurationError("grid_n must be at least 16")
        if not math.isfinite(self.lambda_cap):
            raise ConfigurationError("lambda_cap must be finite")
        if self.lambda_cap > 0.0 and self.domain_l < self.lambda_cap + _DOMAIN_MARGIN_MIN:
            # eigenfunctions below the cap must decay before the wall; the
            # boundary-sensitivity test validates this margin
            raise ConfigurationError(
                "domain_l too small for lambda_cap: need lambda_cap + "
                f"{_DOMAIN_MARGIN_MIN} <= domain_l")

    @property
    def h(self) -> float:
        return self.domain_l / self.grid_n


def _check_path(config: SaoConfig, path: NoisePath) -> None:
    if path.grid_n != config.grid_n:
        raise ConfigurationError(
            f"path has {path.grid_n} cells, config expects {config.grid_n}")
    if abs(path.step * config.grid_n - config.domain_l) > 1e-12 * config.domain_l:
        raise ConfigurationError("path.step * grid_n must equal domain_l")


def sample_path(config: SaoConfig, rng: np.random.Generator) -> NoisePath:
    return NoisePath.sample(rng, config.grid_n, config.h)


def sao_spectrum(config: SaoConfig, path: NoisePath) -> SpectrumSample:
    """Eigenvalues <= lambda_cap, Dirichlet walls at 0 and domain_l."""
    _check_path(config, path)
    h = config.h
    nodes = np.arange(1, config.grid_n) * h
    noise = 2.0 / math.sqrt(config.beta) * path.increments / h
    diag = 2.0 / h ** 2 + nodes + noise[1:]
    off = np.full(config.grid_n - 2, -1.0 / h ** 2)
    ev = tridiagonal_eigenvalues(diag, off, config.lambda_cap)
    return SpectrumSample(eigenvalues=ev, cap=config.lambda_cap, complete_below_cap=True)


def sao_riccati_cell_counts(lam: float, config: SaoConfig, path: NoisePath) -> np.ndarray:
    """Explosions per cell of the linear-potential Riccati flow."""
    _check_path(config, path)
    h = config.h
    mid = (np.arange(config.grid_n) + 0.5) * h
    q = mid + 2.0 / math.sqrt(config.beta) * path.increments / h - lam
    return riccati_cell_counts(q, h)


def riccati_count_sao(lam: float, config: SaoConfig, path: NoisePath) -> int:
    return int(sao_riccati_cell_counts(lam, config, path).sum())


@dataclass(frozen=True)
class DriftedPathSpec:
    """Per-level drifts for importance sampling.

    drift_per_level[k] is the drift value v for level j = k + 1 (the window
    ((j-1) xi, j xi]); the path drift rate on that window is t^{2/3} v.
    Levels beyond the list carry zero drift.
    """

    base_seed: int
    drift_per_level: tuple
    t: float
    xi: float

    def __post_init__(self):
        drifts = tuple(float(v) for v in self.drift_per_level)
        if any(not math.isfinite(v) for v in drifts):
            raise DomainError("drift values must be finite")
        object.__setattr__(self, "drift_per_level", drifts)

    def drift_for_level(self, level_j: int) -> float:
        if level_j < 1:
            raise DomainError("levels are indexed from 1")
        k = level_j - 1
        return self.drift_per_level[k] if k < len(self.drift_per_level) else 0.0

    def rate_for_level(self, level_j: int) -> float:
        """Drift rate on the path: t^{2/3} v_j per unit length."""
        return self.t ** (2.0 / 3.0) * self.drift_for_level(level_j)


def girsanov_log_weight(increments: np.ndarray, rates: np.ndarray, step: float) -> float:
    """log dP_0/dP_drift of a drifted discrete path, exact per increment."""
    rates = np.asarray(rates, dtype=float)
    return float(-(rates * increments).sum() + 0.5 * (rates ** 2).sum() * step)


def sample_drifted_path(spec: DriftedPathSpec, level_j: int, grid_n: int,
                        draw: int = 0) -> tuple[NoisePath, float]:
    """One level window of drifted Brownian motion plus its exact log weight.

    The weight is the Radon-Nikodym factor of the undrifted law against the
    drifted law on the realized path, so E_drift[weight * f] = E_0[f].
    """
    rng = spawn_rng(spec.base_seed, "drifted-path", level_j, draw)
    h = spec.xi / grid_n
    rate = spec.rate_for_level(level_j)
    path = NoisePath.sample(rng, grid_n, h, drift_rate=rate, seed=spec.base_seed)
    logw = girsanov_log_weight(path.increments, np.full(grid_n, rate), h)
    return path, logw


def _hill_level_estimate(level_j: int, z: float, t: float, beta: float, xi: float,
                         n_samples: int, seed: int, grid_n: int,
                         drift_v: float = 0.0, stream: str = "hill-level") -> McEstimate:
    """E[exp(linear statistic)] of Hill level j, optionally drift-sampled."""
    threshold = -z * t ** (2.0 / 3.0)
    config = HillConfig(j=level_j, xi=xi, beta=beta, boundary=Boundary.DIRICHLET,
                        grid_n=grid_n, lambda_cap=threshold)
    rng = spawn_rng(seed, stream, level_j)
    h = config.h
    rate = t ** (2.0 / 3.0) * drift_v
    log_vals = np.empty(n_samples)
    for k in range(n_samples):
        path = NoisePath.sample(rng, grid_n, h, drift_rate=rate, seed=seed)
        s = linear_statistic(hill_spectrum(config, path), z, t)
        logw = -rate * path.terminal_increment() + 0.5 * rate ** 2 * xi
        log_vals[k] = s + logw
    return estimate_from_log_samples(log_vals, seed)


def _sao_expectation(z: float, t: float, beta: float, n_samples: int, seed: int,
                     grid_n: int, domain_l: float, stream: str,
                     spectrum_shift: float = 0.0) -> McEstimate:
    """E[exp(linear statistic)] over SAO samples, spectrum shifted if asked."""
    threshold = -z * t ** (2.0 / 3.0)
    cap = threshold - spectrum_shift
    config = SaoConfig(beta=beta, domain_l=domain_l, grid_n=grid_n,
                       lambda_cap=cap, seed=seed)
    rng = spawn_rng(seed, stream)
    log_vals = np.empty(n_samples)
    for k in range(n_samples):
        spec = sao_spectrum(config, sample_path(config, rng))
        if spectrum_shift != 0.0:
            spec = spec.shifted(spectrum_shift)
        log_vals[k] = linear_statistic(spec, z, t)
    return estimate_from_log_samples(log_vals, seed)


def sandwich_check(z: float, t: float, beta: float, params: DiscretizationParams,
                   n_samples: int, *, seed: int = 0, hill_grid_n: int = 256,
                   sao_grid_n: int = 1024,
                   sao_domain_l: float | None = None) -> tuple[McEstimate, McEstimate, McEstimate]:
    """Lower/middle/upper estimates of the localization sandwich.

    lower  = prod_{j=0}^{n-1} E_j * e^{-n} * E[shifted SAO factor]
    middle = E over the SAO itself
    upper  = prod_{j=1}^{n} E_j

    Plain Monte-Carlo throughout; every factor uses an independent stream.
    """
    n = params.n
    xi = params.xi
    threshold = -z * t ** (2.0 / 3.0)
    if sao_domain_l is None:
        sao_domain_l = max(threshold, 0.0) + 10.0
    hill_est = {
        j: _hill_level_estimate(j, z, t, beta, xi, n_samples, seed, hill_grid_n,
                                stream="sandwich-hill")
        for j in range(0, n + 1)
    }
    middle = _sao_expectation(z, t, beta, n_samples, seed,
                              sao_grid_n, sao_domain_l, "sandwich-middle")
    shifted = _sao_expectation(z, t, beta, n_samples, seed,
                               sao_grid_n, sao_domain_l, "sandwich-shifted",
                               spectrum_shift=n * xi)
    decay = McEstimate(mean=math.exp(-n), stderr=0.0, n_samples=n_samples, seed=seed)
    lower = product_estimate([hill_est[j] for j in range(0, n)] + [decay, shifted], seed)
    upper = product_estimate([hill_est[j] for j in range(1, n + 1)], seed)
    return lower, middle, upper


def optimal_drift_profile(z: float, beta: float, params: DiscretizationParams) -> list[float]:
    """v_{j,*} for levels j = 1 .. n at the continuum positions nu_j = j t^{a-2/3}."""
    spacing = params.level_spacing
    return [optimal_drift(DriftProblem(z=z, beta=beta, nu=j * spacing))
            for j in range(1, params.n + 1)]


def ldp_estimate(z: float, t: float, beta: float, *, a: float = 0.0,
                 n_samples: int = 1000, seed: int = 0, grid_n: int = 2048,
                 domain_margin: float = 8.0,
                 use_importance: bool = False) -> McEstimate:
    """(1/t^2) log E[exp(linear statistic)] over SAO samples.

    Importance sampling draws the path with per-level drifts v_{j,*}
    (levels from the mesoscale decomposition, n = ceil(-z t^{2/3-a})) and
    reweights exactly, so both modes estimate the same expectation.
    """
    if z > 0.0:
        raise DomainError("ldp_estimate requires z <= 0")
    if not t >= 1.0:
        raise DomainError("ldp_estimate requires t >= 1")
    threshold = -z * t ** (2.0 / 3.0)
    rng = spawn_rng(seed, "ldp", "importance" if use_importance else "plain")
    if use_importance:
        params = DiscretizationParams.from_deviation(z, t, a)
        drifts = optimal_drift_profile(z, beta, params)
        drifted_span = params.n * params.xi
        domain_l = max(threshold, drifted_span) + domain_margin
    else:
        params = None
        drifts = []
        drifted_span = 0.0
        domain_l = max(threshold, 0.0) + domain_margin
    config = SaoConfig(beta=beta, domain_l=domain_l, grid_n=grid_n,
                       lambda_cap=threshold, seed=seed)
    h = config.h
    rates = np.zeros(grid_n)
    if use_importance:
        mid = (np.arange(grid_n) + 0.5) * h
        level_of_cell = np.floor(mid / params.xi).astype(int) + 1
        inside = level_of_cell <= params.n
        drift_arr = np.asarray(drifts)
        rates[inside] = t ** (2.0 / 3.0) * drift_arr[level_of_cell[inside] - 1]
    sqrt_h = math.sqrt(h)
    half_r2h = 0.5 * float((rates ** 2).sum()) * h
    log_vals = np.empty(n_samples)
    for k in range(n_samples):
        inc = rng.standard_normal(grid_n) * sqrt_h + rates * h
        path = NoisePath(step=h, increments=inc, seed=seed)
        s = linear_statistic(sao_spectrum(config, path), z, t)
        logw = -float((rates * inc).sum()) + half_r2h
        log_vals[k] = s + logw
    if not use_importance and np.all(log_vals < -745.0):
        raise UnderflowDiagnostic(
            "every weighted sample underflows; enable importance sampling")
    est = estimate_from_log_samples(log_vals, seed)
    if est.log_mean == -math.inf:
        raise UnderflowDiagnostic("Monte-Carlo mean rounded to zero")
    return McEstimate(mean=est.log_mean / t ** 2,
                      stderr=est.rel_stderr / t ** 2,
                      n_samples=n_samples, seed=seed)
