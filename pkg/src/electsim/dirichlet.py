"""Dirichlet distribution numerics: density, sampling, ML fitting, marginals.

The maximum-likelihood fit is the classic fixed-point iteration on the
digamma equations, ``digamma(alpha_k) = digamma(sum(alpha)) + mean(log x_k)``,
started from a moment-matching initializer. Observed share vectors are
epsilon-smoothed into the simplex interior before taking logs, since seat
shares routinely contain exact zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import ShareVector, smooth_simplex
from .special import digamma, inverse_digamma, sample_gamma

DENSITY_EPSILON = 1e-10
FIT_EPSILON = 1e-6


@dataclass(frozen=True)
class DirichletParams:
    """Concentration parameters; strictly positive and finite."""

    alpha: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.alpha, dtype=float)
        if arr.ndim != 1 or len(arr) < 2:
            raise ValueError("alpha must be a vector of length >= 2")
        if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
            raise ValueError("alpha entries must be positive and finite")
        arr.setflags(write=False)
        object.__setattr__(self, "alpha", arr)

    @property
    def n_parties(self) -> int:
        return len(self.alpha)

    def mean(self) -> np.ndarray:
        return self.alpha / self.alpha.sum()


@dataclass(frozen=True)
class BetaParams:
    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("Beta parameters must be positive")

    def mean(self) -> float:
        return self.a / (self.a + self.b)


class MleConvergenceError(RuntimeError):
    """Fit did not converge; carries the last iterate for callers that
    want to treat a diverging (near point-mass) fit as a limit case."""

    def __init__(self, message: str, last_params: DirichletParams | None):
        super().__init__(message)
        self.last_params = last_params


class BoundaryModeError(ValueError):
    """Requested the interior mode of a Dirichlet that peaks on the boundary."""


def _log_norm_const(alpha: np.ndarray) -> float:
    return float(math.lgamma(alpha.sum()) - sum(math.lgamma(a) for a in alpha))


def log_density_rows(params: DirichletParams, x_rows: np.ndarray, epsilon: float = DENSITY_EPSILON) -> np.ndarray:
    """Log PDF at each row of ``x_rows`` after epsilon-smoothing the rows."""
    rows = np.atleast_2d(np.asarray(x_rows, dtype=float))
    if rows.shape[1] != params.n_parties:
        raise ValueError("dimension mismatch between params and points")
    smoothed = smooth_simplex(rows, epsilon)
    return _log_norm_const(params.alpha) + np.log(smoothed) @ (params.alpha - 1.0)


def log_density(params: DirichletParams, x: ShareVector, epsilon: float = DENSITY_EPSILON) -> float:
    """Log of the Dirichlet PDF at the smoothed point ``x``."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return float(log_density_rows(params, x.shares, epsilon)[0])


def sample_many(params: DirichletParams, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` simplex points as normalized independent Gamma variates."""
    gammas = sample_gamma(params.alpha, rng, size=(n, params.n_parties))
    totals = gammas.sum(axis=1, keepdims=True)
    # A total of zero needs every coordinate to underflow; retry those rows.
    bad = np.flatnonzero(totals[:, 0] <= 0)
    for i in bad:
        while gammas[i].sum() <= 0:
            gammas[i] = sample_gamma(params.alpha, rng)
        totals[i, 0] = gammas[i].sum()
    return gammas / totals


def sample(params: DirichletParams, rng: np.random.Generator) -> ShareVector:
    return ShareVector(sample_many(params, 1, rng)[0])


def log_likelihood(params: DirichletParams, smoothed_rows: np.ndarray) -> float:
    """Total log likelihood of pre-smoothed interior points."""
    n = smoothed_rows.shape[0]
    return float(n * _log_norm_const(params.alpha) + (np.log(smoothed_rows) @ (params.alpha - 1.0)).sum())


def _moment_init(rows: np.ndarray) -> np.ndarray:
    means = rows.mean(axis=0)
    variances = rows.var(axis=0)
    # Each coordinate suggests a total concentration; take the median of the
    # usable ones for robustness, falling back to a flat-ish start.
    with np.errstate(divide="ignore", invalid="ignore"):
        totals = means * (1.0 - means) / variances - 1.0
    totals = totals[np.isfinite(totals) & (totals > 0)]
    total = float(np.median(totals)) if len(totals) else float(rows.shape[1])
    return np.maximum(means * total, 1e-8)


def mle_fit(
    samples: Sequence[ShareVector] | np.ndarray,
    epsilon: float = FIT_EPSILON,
    tol: float = 1e-8,
    max_iter: int = 1000,
) -> DirichletParams:
    """Maximum-likelihood Dirichlet parameters for a set of share vectors.

    Raises :class:`MleConvergenceError` when the fixed point does not settle
    within ``max_iter`` iterations (e.g. for degenerate, identical samples,
    where the likelihood is maximized only in the point-mass limit).
    """
    if isinstance(samples, np.ndarray):
        rows = np.atleast_2d(np.asarray(samples, dtype=float))
    else:
        rows = np.array([s.shares for s in samples], dtype=float)
    if rows.shape[0] < 2:
        raise ValueError("need at least 2 samples to fit")
    rows = smooth_simplex(rows, epsilon)
    log_mean = np.log(rows).mean(axis=0)

    alpha = _moment_init(rows)
    for _ in range(max_iter):
        new_alpha = inverse_digamma(digamma(alpha.sum()) + log_mean)
        delta = np.max(np.abs(new_alpha - alpha))
        alpha = new_alpha
        if not np.all(np.isfinite(alpha)) or np.any(alpha <= 0):
            raise MleConvergenceError("fixed-point iteration left the domain", None)
        if delta < tol:
            return DirichletParams(alpha)
    raise MleConvergenceError(
        f"no convergence after {max_iter} iterations (last max step {delta:.3g})",
        DirichletParams(alpha),
    )


def mode(params: DirichletParams) -> ShareVector:
    """Interior mode ((alpha_k - 1) / (sum(alpha) - K)); needs all alpha > 1."""
    if np.any(params.alpha <= 1.0):
        raise BoundaryModeError("mode lies on the simplex boundary (some alpha <= 1)")
    k = params.n_parties
    return ShareVector((params.alpha - 1.0) / (params.alpha.sum() - k))


def beta_marginal(params: DirichletParams, k: int) -> BetaParams:
    """Marginal distribution of coordinate ``k``: Beta(alpha_k, rest)."""
    if not 0 <= k < params.n_parties:
        raise IndexError(f"party index {k} out of range for K={params.n_parties}")
    a = float(params.alpha[k])
    return BetaParams(a, float(params.alpha.sum() - a))


def beta_log_pdf(params: BetaParams, x) -> np.ndarray:
    """Log PDF of a Beta distribution, for plotting marginal curves."""
    x = np.asarray(x, dtype=float)
    norm = math.lgamma(params.a + params.b) - math.lgamma(params.a) - math.lgamma(params.b)
    with np.errstate(divide="ignore"):
        return norm + (params.a - 1.0) * np.log(x) + (params.b - 1.0) * np.log1p(-x)
