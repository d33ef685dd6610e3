"""Election simulators: generate a complete election from target shares.

Two voter-level processes are implemented:

* the seatwise polarization model, where each voter picks a party from a
  mixture of the local (within-district) popularity and the overall target
  vote share, controlled by one concentration parameter, and
* the partywise concentration model, where each supporter of party k is
  placed into a district proportionally to that district's current count of
  k-supporters with probability gamma_k, and uniformly otherwise.

The polarization model also has a batched fast path: within a batch the
choice distribution is frozen and the batch is drawn from one multinomial.
Batch size 1 reproduces the sequential process draw for draw.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CompleteElection, ElectionConfig, ShareVector


@dataclass(frozen=True)
class SpmParams:
    gamma: float
    config: ElectionConfig
    target_vote_share: ShareVector

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must be in [0, 1]")
        if self.target_vote_share.n_parties != self.config.n_parties:
            raise ValueError("target share length must match n_parties")


@dataclass(frozen=True)
class PcmParams:
    gammas: np.ndarray
    config: ElectionConfig
    party_totals: np.ndarray

    def __post_init__(self):
        gammas = np.asarray(self.gammas, dtype=float)
        totals = np.asarray(self.party_totals, dtype=np.int64)
        if len(gammas) != self.config.n_parties or len(totals) != self.config.n_parties:
            raise ValueError("gammas and party_totals must have length n_parties")
        if np.any(gammas < 0) or np.any(gammas > 1):
            raise ValueError("each gamma must be in [0, 1]")
        if np.any(totals < 0) or int(totals.sum()) != self.config.n_voters:
            raise ValueError("party totals must be nonnegative and sum to n_voters")
        gammas.setflags(write=False)
        totals.setflags(write=False)
        object.__setattr__(self, "gammas", gammas)
        object.__setattr__(self, "party_totals", totals)


@dataclass(frozen=True)
class BatchConfig:
    batch_size: int

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


def _spm_counts(params: SpmParams, batch_size: int, rng: np.random.Generator) -> np.ndarray:
    cfg = params.config
    k = cfg.n_parties
    gamma = params.gamma
    target = params.target_vote_share.shares
    uniform = np.full(k, 1.0 / k)
    counts = np.zeros((cfg.n_districts, k), dtype=np.int64)
    for s in range(cfg.n_districts):
        district = np.zeros(k, dtype=np.int64)
        placed = 0
        remaining = int(cfg.district_sizes[s])
        while remaining:
            local = district / placed if placed else uniform
            p = gamma * local + (1.0 - gamma) * target
            b = min(batch_size, remaining)
            draw = rng.multinomial(b, p)
            district += draw
            placed += b
            remaining -= b
        counts[s] = district
    return counts


def simulate_spm(params: SpmParams, rng: np.random.Generator) -> CompleteElection:
    """Sequential polarization model: one voter placed at a time."""
    return CompleteElection(_spm_counts(params, 1, rng), params.config)


def simulate_spm_batched(
    params: SpmParams, batch: BatchConfig, rng: np.random.Generator
) -> CompleteElection:
    """Batched polarization model; identical to sequential at batch size 1."""
    return CompleteElection(_spm_counts(params, batch.batch_size, rng), params.config)


def simulate_pcm(params: PcmParams, rng: np.random.Generator) -> CompleteElection:
    """Partywise concentration model.

    Voters are processed round-robin across parties so no party systematically
    sees emptier districts. Full districts are excluded from every draw; the
    preferential branch renormalizes over the remaining ones.
    """
    cfg = params.config
    counts = np.zeros((cfg.n_districts, cfg.n_parties), dtype=np.int64)
    room = cfg.district_sizes.astype(np.int64).copy()
    left = params.party_totals.copy()
    gammas = params.gammas
    districts = np.arange(cfg.n_districts)
    while left.any():
        for k in np.flatnonzero(left):
            open_mask = room > 0
            if gammas[k] > 0 and rng.random() < gammas[k]:
                weights = counts[:, k] * open_mask
                total = weights.sum()
                if total > 0:
                    d = rng.choice(districts, p=weights / total)
                else:
                    d = rng.choice(districts[open_mask])
            else:
                d = rng.choice(districts[open_mask])
            counts[d, k] += 1
            room[d] -= 1
            left[k] -= 1
    return CompleteElection(counts, cfg)


def round_shares_to_totals(shares: np.ndarray, total: int) -> np.ndarray:
    """Integer counts summing to ``total``, by largest remainder."""
    raw = np.asarray(shares, dtype=float) * total
    base = np.floor(raw).astype(np.int64)
    short = total - int(base.sum())
    if short:
        order = np.argsort(-(raw - base), kind="stable")
        base[order[:short]] += 1
    return base


@dataclass(frozen=True)
class SpmModel:
    """Polarization-model selector: simulates elections from a vote share."""

    gamma: float
    config: ElectionConfig

    def sample_election(self, vote_share: ShareVector, rng: np.random.Generator, batch_size: int = 100) -> CompleteElection:
        params = SpmParams(self.gamma, self.config, vote_share)
        return simulate_spm_batched(params, BatchConfig(batch_size), rng)


@dataclass(frozen=True)
class PcmModel:
    """Concentration-model selector: supporter totals come from the share."""

    gammas: tuple
    config: ElectionConfig

    def sample_election(self, vote_share: ShareVector, rng: np.random.Generator, batch_size: int = 100) -> CompleteElection:
        totals = round_shares_to_totals(vote_share.shares, self.config.n_voters)
        params = PcmParams(np.asarray(self.gammas, dtype=float), self.config, totals)
        return simulate_pcm(params, rng)


ElectionModel = SpmModel | PcmModel
