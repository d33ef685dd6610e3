"""Special functions backing the Dirichlet numerics.

Digamma and trigamma use the recurrence-plus-asymptotic-series approach
(shift the argument above 6, then a de Moivre expansion); the inverse
digamma uses the standard two-regime initializer refined by Newton steps.
Gamma variates come from the Marsaglia-Tsang squeeze method with the
``u**(1/a)`` boost for shapes below 1.
"""

from __future__ import annotations

import numpy as np

EULER_GAMMA = 0.5772156649015329


def _shifted(x, terms_fn):
    x = np.array(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if np.any(x <= 0) or not np.all(np.isfinite(x)):
        raise ValueError("argument must be positive and finite")
    acc = np.zeros_like(x)
    small = x < 6.0
    while small.any():
        acc[small] += terms_fn(x[small])
        x = x + small  # shift only the small entries
        small = x < 6.0
    return x, acc, scalar


def digamma(x):
    """d/dx log Gamma(x), elementwise, for x > 0."""
    x, acc, scalar = _shifted(x, lambda v: -1.0 / v)
    inv = 1.0 / x
    inv2 = inv * inv
    series = (
        np.log(x)
        - 0.5 * inv
        - inv2
        * (
            1.0 / 12.0
            - inv2
            * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0)))
        )
    )
    out = acc + series
    return float(out[0]) if scalar else out


def trigamma(x):
    """Second derivative of log Gamma, elementwise, for x > 0."""
    x, acc, scalar = _shifted(x, lambda v: 1.0 / (v * v))
    inv = 1.0 / x
    inv2 = inv * inv
    series = inv * (
        1.0
        + inv
        * (
            0.5
            + inv
            * (
                1.0 / 6.0
                - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0))
            )
        )
    )
    out = acc + series
    return float(out[0]) if scalar else out


def inverse_digamma(y, newton_steps: int = 5):
    """Solve digamma(x) = y for x > 0, elementwise."""
    y = np.array(y, dtype=float)
    scalar = y.ndim == 0
    y = np.atleast_1d(y)
    x = np.where(y >= -2.22, np.exp(y) + 0.5, -1.0 / (y + EULER_GAMMA))
    for _ in range(newton_steps):
        x = x - (digamma(x) - y) / trigamma(x)
    return float(x[0]) if scalar else x


def sample_gamma(shape, rng: np.random.Generator, size=None) -> np.ndarray:
    """Draw Gamma(shape, 1) variates via Marsaglia-Tsang.

    ``shape`` broadcasts against ``size``. Shapes below 1 are boosted: a
    Gamma(shape + 1) draw is scaled by U**(1/shape).
    """
    a = np.asarray(shape, dtype=float)
    if np.any(a <= 0):
        raise ValueError("gamma shape must be positive")
    if size is None:
        size = a.shape
    a = np.broadcast_to(a, size).copy()
    out_scalar = a.ndim == 0
    a = np.atleast_1d(a)

    small = a < 1.0
    work = np.where(small, a + 1.0, a)

    d = work - 1.0 / 3.0
    c = 1.0 / np.sqrt(9.0 * d)
    samples = np.empty_like(work)
    pending = np.ones(work.shape, dtype=bool)
    while pending.any():
        idx = np.flatnonzero(pending)
        x = rng.standard_normal(idx.size)
        v = (1.0 + c.flat[idx] * x) ** 3
        u = rng.random(idx.size)
        ok = v > 0
        with np.errstate(divide="ignore", invalid="ignore"):
            accept = ok & (np.log(u) < 0.5 * x * x + d.flat[idx] * (1.0 - v + np.log(np.where(ok, v, 1.0))))
        hit = idx[accept]
        samples.flat[hit] = d.flat[hit] * v[accept]
        pending.flat[hit] = False

    if small.any():
        boost = rng.random(int(small.sum())) ** (1.0 / a[small])
        samples[small] *= boost
    return samples[0] if out_scalar else samples
