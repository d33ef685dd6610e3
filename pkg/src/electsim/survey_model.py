"""Uniform-sampling survey simulation over a complete election.

A survey picks ``ceil(S * district_fraction)`` districts uniformly without
replacement, queries ``round(N_j * person_fraction)`` respondents in each
chosen district (multinomial over the district's true vote proportions), and
projects a vote share (pooled respondent counts) and a seat share (fraction
of surveyed districts where each party has the respondent plurality).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _parallel
from .core import CompleteElection, ShareVector, district_winners, seat_share_from_election


@dataclass(frozen=True)
class SurveyParams:
    """Survey scale: fraction of people per district and of districts.

    ``hypergeometric`` switches respondent draws to sampling without
    replacement, mainly so a full census (person_fraction = 1) reproduces
    the true counts exactly; the default multinomial matches the usual
    with-replacement idealization.
    """

    person_fraction: float
    district_fraction: float
    hypergeometric: bool = False

    def __post_init__(self):
        if not 0.0 < self.person_fraction <= 1.0:
            raise ValueError("person_fraction must be in (0, 1]")
        if not 0.0 < self.district_fraction <= 1.0:
            raise ValueError("district_fraction must be in (0, 1]")

    def n_surveyed_districts(self, n_districts: int) -> int:
        return max(1, math.ceil(n_districts * self.district_fraction))


@dataclass(frozen=True)
class SurveyProjection:
    """Projected result of one survey (or an aggregate of several).

    Aggregates such as medians and fabricated reports carry an empty
    ``respondent_counts`` matrix; raw per-district counts only exist for a
    survey that was actually run.
    """

    vote_share: ShareVector
    seat_share: ShareVector
    respondent_counts: np.ndarray  # (n_surveyed, K), empty for aggregates
    surveyed_districts: np.ndarray  # district indices, empty for aggregates
    params: SurveyParams

    def __post_init__(self):
        counts = np.asarray(self.respondent_counts)
        districts = np.asarray(self.surveyed_districts, dtype=np.int64)
        if counts.size:
            if counts.shape != (len(districts), self.vote_share.n_parties):
                raise ValueError("respondent_counts shape mismatch")
            pooled = counts.sum(axis=0)
            expected = pooled / pooled.sum()
            if not np.allclose(expected, self.vote_share.shares, atol=1e-9):
                raise ValueError("vote share must aggregate the respondent counts")
        counts.setflags(write=False)
        districts.setflags(write=False)
        object.__setattr__(self, "respondent_counts", counts)
        object.__setattr__(self, "surveyed_districts", districts)

    @property
    def n_parties(self) -> int:
        return self.vote_share.n_parties


def _respondents_per_district(z: CompleteElection, params: SurveyParams, districts: np.ndarray) -> np.ndarray:
    n_resp = np.rint(z.config.district_sizes[districts] * params.person_fraction).astype(np.int64)
    if np.any(n_resp < 1):
        raise ValueError(
            f"person_fraction {params.person_fraction} yields a district with no respondents"
        )
    return n_resp


def _choose_districts(z: CompleteElection, params: SurveyParams, rng: np.random.Generator) -> np.ndarray:
    s = z.config.n_districts
    n_sel = params.n_surveyed_districts(s)
    if n_sel == s:
        return np.arange(s)
    return np.sort(rng.choice(s, size=n_sel, replace=False))


def project_many(
    z: CompleteElection, params: SurveyParams, n_surveys: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Vote-share and seat-share projections of ``n_surveys`` independent
    surveys, as two (n_surveys, K) arrays. Fast path for the inner Monte
    Carlo loops; draws district choices per survey but batches respondent
    draws per district whenever all surveys share the district set.
    """
    cfg = z.config
    k = cfg.n_parties
    votes = np.empty((n_surveys, k))
    seats = np.empty((n_surveys, k))
    full_coverage = params.n_surveyed_districts(cfg.n_districts) == cfg.n_districts
    if full_coverage:
        districts = np.arange(cfg.n_districts)
        n_resp = _respondents_per_district(z, params, districts)
        counts = np.empty((n_surveys, len(districts), k), dtype=np.int64)
        for j, d in enumerate(districts):
            counts[:, j, :] = _draw_respondents(z, d, int(n_resp[j]), params, rng, n_surveys)
        _fill_projections(counts, votes, seats)
    else:
        for t in range(n_surveys):
            districts = _choose_districts(z, params, rng)
            n_resp = _respondents_per_district(z, params, districts)
            counts = np.empty((1, len(districts), k), dtype=np.int64)
            for j, d in enumerate(districts):
                counts[0, j, :] = _draw_respondents(z, d, int(n_resp[j]), params, rng, 1)
            _fill_projections(counts, votes[t : t + 1], seats[t : t + 1])
    return votes, seats


def _draw_respondents(
    z: CompleteElection,
    district: int,
    n_resp: int,
    params: SurveyParams,
    rng: np.random.Generator,
    n_surveys: int,
) -> np.ndarray:
    row = z.counts[district]
    if params.hypergeometric:
        return rng.multivariate_hypergeometric(row, n_resp, size=n_surveys)
    pvals = row / row.sum()
    return rng.multinomial(n_resp, pvals, size=n_surveys)


def _fill_projections(counts: np.ndarray, votes_out: np.ndarray, seats_out: np.ndarray) -> None:
    pooled = counts.sum(axis=1)
    votes_out[:] = pooled / pooled.sum(axis=1, keepdims=True)
    k = counts.shape[2]
    winners = counts.argmax(axis=2)  # ties resolve to the lowest party index
    n_districts = counts.shape[1]
    for t in range(counts.shape[0]):
        seats_out[t] = np.bincount(winners[t], minlength=k) / n_districts


def run_survey(z: CompleteElection, params: SurveyParams, rng: np.random.Generator) -> SurveyProjection:
    """Run one survey and return its projection with raw respondent counts."""
    districts = _choose_districts(z, params, rng)
    n_resp = _respondents_per_district(z, params, districts)
    k = z.config.n_parties
    counts = np.empty((len(districts), k), dtype=np.int64)
    for j, d in enumerate(districts):
        counts[j] = _draw_respondents(z, d, int(n_resp[j]), params, rng, 1)[0]
    vote = ShareVector.from_counts(counts.sum(axis=0))
    winners = district_winners(counts)
    seat = ShareVector(np.bincount(winners, minlength=k) / len(districts))
    return SurveyProjection(vote, seat, counts, districts, params)


def median_projection(projections: Sequence[SurveyProjection]) -> SurveyProjection:
    """Component-wise median of several projections, renormalized."""
    if not projections:
        raise ValueError("need at least one projection")
    k = projections[0].n_parties
    if any(p.n_parties != k for p in projections):
        raise ValueError("projections must agree on the number of parties")
    vote = np.median([p.vote_share.shares for p in projections], axis=0)
    seat = np.median([p.seat_share.shares for p in projections], axis=0)
    return SurveyProjection(
        ShareVector(vote / vote.sum()),
        ShareVector(seat / seat.sum()),
        np.empty((0, k), dtype=np.int64),
        np.empty(0, dtype=np.int64),
        projections[0].params,
    )


def _rate_chunk(args) -> int:
    z, params, error_limit, true_seats, seeds = args
    hits = 0
    for seed in seeds:
        rng = np.random.default_rng(seed)
        _, seat = project_many(z, params, 1, rng)
        if np.max(np.abs(seat[0] - true_seats)) <= error_limit + 1e-12:
            hits += 1
    return hits


def accurate_projection_rate(
    z: CompleteElection,
    params: SurveyParams,
    n_trials: int,
    error_limit: float,
    rng: np.random.Generator,
    workers: int = 1,
) -> float:
    """Fraction of surveys whose projected seat share is within
    ``error_limit`` of the true seat share in every component.

    Trials get pre-assigned seeds, so the result depends only on the seed
    stream, not on ``workers``.
    """
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    if error_limit < 0:
        raise ValueError("error_limit must be >= 0")
    true_seats = seat_share_from_election(z).shares
    seeds = _parallel.spawn_seeds(rng, n_trials)
    chunks = [
        (z, params, error_limit, true_seats, seeds[i : i + 250])
        for i in range(0, n_trials, 250)
    ]
    hits = sum(_parallel.parallel_map(_rate_chunk, chunks, workers))
    return hits / n_trials
