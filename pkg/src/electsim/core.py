"""Domain types for district-based plurality elections.

An election over ``n_voters`` voters in ``n_districts`` single-seat districts
and ``n_parties`` parties is summarized at three levels:

* a complete election: the per-district per-party vote count matrix,
* a vote share / seat share pair on the party simplex,
* a survey projection of that pair (see :mod:`electsim.survey_model`).

Everything here is an immutable value object; the operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SIMPLEX_ATOL = 1e-9


def _as_vector(x, dtype=float) -> np.ndarray:
    arr = np.asarray(x, dtype=dtype)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d vector, got shape {arr.shape}")
    return arr


def equal_district_sizes(n_voters: int, n_districts: int) -> np.ndarray:
    """Split voters evenly; the remainder goes to the first districts."""
    base, rem = divmod(n_voters, n_districts)
    sizes = np.full(n_districts, base, dtype=np.int64)
    sizes[:rem] += 1
    return sizes


@dataclass(frozen=True)
class ElectionConfig:
    """Size parameters of one election.

    ``district_sizes`` may be omitted, in which case voters are split as
    evenly as possible across districts.
    """

    n_voters: int
    n_districts: int
    n_parties: int
    district_sizes: np.ndarray | None = None

    def __post_init__(self):
        if self.n_voters < 1 or self.n_districts < 1:
            raise ValueError("n_voters and n_districts must be positive")
        if self.n_parties < 2:
            raise ValueError("need at least 2 parties")
        if self.district_sizes is None:
            sizes = equal_district_sizes(self.n_voters, self.n_districts)
        else:
            sizes = _as_vector(self.district_sizes, dtype=np.int64)
        if len(sizes) != self.n_districts:
            raise ValueError("district_sizes length must equal n_districts")
        if np.any(sizes <= 0):
            raise ValueError("district sizes must be positive")
        if int(sizes.sum()) != self.n_voters:
            raise ValueError("district sizes must sum to n_voters")
        sizes.setflags(write=False)
        object.__setattr__(self, "district_sizes", sizes)


@dataclass(frozen=True)
class ShareVector:
    """A point on the party probability simplex (vote or seat shares)."""

    shares: np.ndarray

    def __post_init__(self):
        arr = _as_vector(self.shares)
        if np.any(arr < 0) or not np.all(np.isfinite(arr)):
            raise ValueError("shares must be finite and nonnegative")
        if abs(arr.sum() - 1.0) > SIMPLEX_ATOL:
            raise ValueError(f"shares must sum to 1, got {arr.sum()!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "shares", arr)

    @property
    def n_parties(self) -> int:
        return len(self.shares)

    @classmethod
    def from_counts(cls, counts) -> "ShareVector":
        counts = _as_vector(counts)
        total = counts.sum()
        if total <= 0:
            raise ValueError("counts must have a positive total")
        return cls(counts / total)


@dataclass(frozen=True)
class CompleteElection:
    """Per-district per-party vote counts for one full election."""

    counts: np.ndarray  # (n_districts, n_parties) nonnegative ints
    config: ElectionConfig

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        cfg = self.config
        if counts.shape != (cfg.n_districts, cfg.n_parties):
            raise ValueError(
                f"counts shape {counts.shape} does not match config "
                f"({cfg.n_districts}, {cfg.n_parties})"
            )
        if np.any(counts < 0):
            raise ValueError("vote counts must be nonnegative")
        if not np.array_equal(counts.sum(axis=1), cfg.district_sizes):
            raise ValueError("district vote totals must match district sizes")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)


@dataclass(frozen=True)
class OutcomeCandidate:
    """A hypothesized full result: vote share and seat share together.

    When tied to a config, seat shares are integer multiples of
    1 / n_districts; the type itself does not know the district count, so
    that check lives with the code that builds candidates from elections.
    """

    vote_share: ShareVector
    seat_share: ShareVector

    def __post_init__(self):
        if self.vote_share.n_parties != self.seat_share.n_parties:
            raise ValueError("vote and seat shares must have the same length")

    @property
    def n_parties(self) -> int:
        return self.vote_share.n_parties


def vote_share_from_election(z: CompleteElection) -> ShareVector:
    """Overall vote share: party column totals over the electorate size."""
    return ShareVector(z.counts.sum(axis=0) / z.config.n_voters)


def district_winners(counts: np.ndarray) -> np.ndarray:
    """Winning party index per district; ties go to the lowest index."""
    return np.argmax(counts, axis=1)


def seat_share_from_election(z: CompleteElection) -> ShareVector:
    """Fraction of districts won by each party under plurality rule."""
    winners = district_winners(z.counts)
    seats = np.bincount(winners, minlength=z.config.n_parties)
    return ShareVector(seats / z.config.n_districts)


def smooth_simplex(x: np.ndarray, epsilon: float) -> np.ndarray:
    """Pull a simplex point (or row-stack of points) into the interior.

    Adds ``epsilon`` to every coordinate and renormalizes, so exact zeros
    (common in seat shares) get positive mass.
    """
    x = np.asarray(x, dtype=float)
    k = x.shape[-1]
    return (x + epsilon) / (1.0 + k * epsilon)


def kl_divergence(p: ShareVector, q: ShareVector, epsilon: float = 1e-10) -> float:
    """KL(p || q) after epsilon-smoothing both vectors."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if p.n_parties != q.n_parties:
        raise ValueError("p and q must have the same length")
    ps = smooth_simplex(p.shares, epsilon)
    qs = smooth_simplex(q.shares, epsilon)
    return float(np.sum(ps * (np.log(ps) - np.log(qs))))


def kl_divergence_rows(p_rows: np.ndarray, q: np.ndarray, epsilon: float = 1e-10) -> np.ndarray:
    """Row-wise KL(p_i || q) for a stack of simplex points against one target."""
    ps = smooth_simplex(np.atleast_2d(p_rows), epsilon)
    qs = smooth_simplex(np.asarray(q, dtype=float), epsilon)
    return np.sum(ps * (np.log(ps) - np.log(qs)), axis=1)
