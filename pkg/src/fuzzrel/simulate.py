"""Monte Carlo cross-checks of the analytic characteristics.

Two simulators: batched first-passage sampling of the reliability chain
for MTTF, and a single long trajectory of the availability chain with
batch-means error bars for the long-run up fraction. Both are
deterministic in the configured seed regardless of chunking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .markov import (
    ChainMode,
    State,
    SystemParams,
    UP_STATES,
    build_generator,
)

_CHUNK = 65536
_EXHAUSTION_SWEEPS = 1_000_000


@dataclass(frozen=True)
class SimConfig:
    """Simulation settings.

    replications drives the first-passage sampler; horizon, the warm-up
    fraction and the batch count drive the long-trajectory availability
    sampler.
    """

    params: SystemParams
    replications: int = 100_000
    horizon: float = 100_000.0
    seed: int = 0
    warmup_fraction: float = 0.01
    batches: int = 20

    def __post_init__(self):
        if int(self.replications) != self.replications or self.replications < 1:
            raise ValidationError(
                f"replications must be a positive integer, got {self.replications}"
            )
        object.__setattr__(self, "replications", int(self.replications))
        object.__setattr__(self, "horizon", float(self.horizon))
        if not np.isfinite(self.horizon) or self.horizon <= 0:
            raise ValidationError(f"horizon must be > 0, got {self.horizon}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise ValidationError(f"seed must be a nonnegative integer, got {self.seed}")
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "warmup_fraction", float(self.warmup_fraction))
        if not 0.0 <= self.warmup_fraction < 1.0:
            raise ValidationError(
                f"warmup_fraction must lie in [0, 1), got {self.warmup_fraction}"
            )
        if int(self.batches) != self.batches or self.batches < 2:
            raise ValidationError(
                f"batches must be an integer >= 2, got {self.batches}"
            )
        object.__setattr__(self, "batches", int(self.batches))


@dataclass(frozen=True)
class SimEstimate:
    """Point estimate with its standard error."""

    mean: float
    std_error: float
    replications: int

    def __post_init__(self):
        if self.std_error < 0:
            raise ValidationError("std_error must be >= 0")

    def margin(self, n_sigma: float = 3.0) -> float:
        return n_sigma * self.std_error


def _jump_tables(params: SystemParams, mode: ChainMode):
    """Per-state exit rate, cumulative jump probabilities, jump targets."""
    rates = build_generator(params, mode).rates
    exit_rates = {}
    cum_probs = {}
    targets = {}
    for s in State:
        row = rates[s].copy()
        row[s] = 0.0
        total = row.sum()
        exit_rates[s] = total
        if total > 0.0:
            tgt = np.flatnonzero(row)
            cum_probs[s] = np.cumsum(row[tgt]) / total
            targets[s] = tgt
    return exit_rates, cum_probs, targets


def _first_passage_chunk(params: SystemParams, n: int, rng: np.random.Generator):
    """First-passage times to any down state for n replications.

    Vectorized sweep: every replication still in an up state draws its
    holding time and jump in turn. A replication can jump several times
    per sweep; each jump uses fresh draws, so the embedded chain and the
    holding times keep their exact laws.
    """
    exit_rates, cum_probs, targets = _jump_tables(params, ChainMode.RELIABILITY)
    states = np.full(n, int(State.UP3), dtype=np.int64)
    times = np.zeros(n)
    up_codes = np.array([int(s) for s in UP_STATES])
    active = np.arange(n)
    for _ in range(_EXHAUSTION_SWEEPS):
        active = active[np.isin(states[active], up_codes)]
        if active.size == 0:
            return times, states
        for s in UP_STATES:
            idx = active[states[active] == int(s)]
            if idx.size == 0:
                continue
            times[idx] += rng.exponential(scale=1.0 / exit_rates[s], size=idx.size)
            picks = np.searchsorted(cum_probs[s], rng.random(idx.size), side="right")
            picks = np.minimum(picks, len(targets[s]) - 1)
            states[idx] = targets[s][picks]
    raise ValidationError("first-passage simulation failed to absorb")


def _first_passage_samples(cfg: SimConfig):
    """All first-passage samples with their absorbing states."""
    n = cfg.replications
    n_chunks = (n + _CHUNK - 1) // _CHUNK
    seeds = np.random.SeedSequence(cfg.seed).spawn(n_chunks)
    all_times = []
    all_states = []
    remaining = n
    for child in seeds:
        size = min(_CHUNK, remaining)
        times, states = _first_passage_chunk(
            cfg.params, size, np.random.default_rng(child)
        )
        all_times.append(times)
        all_states.append(states)
        remaining -= size
    return np.concatenate(all_times), np.concatenate(all_states)


def simulate_mttf(cfg: SimConfig) -> SimEstimate:
    """Sample mean of the time to first system failure."""
    times, _ = _first_passage_samples(cfg)
    n = cfg.replications
    # fsum keeps the aggregate independent of chunk boundaries
    total = math.fsum(times)
    mean = total / n
    if n == 1:
        return SimEstimate(mean=mean, std_error=0.0, replications=1)
    sq = math.fsum((times - mean) ** 2)
    std_error = math.sqrt(sq / (n - 1) / n)
    return SimEstimate(mean=mean, std_error=std_error, replications=n)


def _add_up_interval(batch_up, t0, t1, warmup, batch_len):
    a = max(t0, warmup)
    b = t1
    if b <= a:
        return
    n_batches = len(batch_up)
    i0 = min(int((a - warmup) / batch_len), n_batches - 1)
    i1 = min(int((b - warmup) / batch_len), n_batches - 1)
    if i0 == i1:
        batch_up[i0] += b - a
        return
    edge0 = warmup + (i0 + 1) * batch_len
    batch_up[i0] += edge0 - a
    for i in range(i0 + 1, i1):
        batch_up[i] += batch_len
    batch_up[i1] += b - (warmup + i1 * batch_len)


def simulate_availability(cfg: SimConfig) -> SimEstimate:
    """Long-run up fraction from one long trajectory.

    The stretch before warmup_fraction * horizon is discarded, the rest
    is split into equal batches, and the batch means give the standard
    error. replications in the estimate is the batch count.
    """
    exit_rates, cum_probs, targets = _jump_tables(
        cfg.params, ChainMode.AVAILABILITY
    )
    rng = np.random.default_rng(cfg.seed)
    horizon = cfg.horizon
    warmup = cfg.warmup_fraction * horizon
    batch_len = (horizon - warmup) / cfg.batches
    batch_up = np.zeros(cfg.batches)
    up_set = {int(s) for s in UP_STATES}

    exps = rng.standard_exponential(_CHUNK)
    unis = rng.random(_CHUNK)
    cursor = 0

    t = 0.0
    state = State.UP3
    while t < horizon:
        if cursor >= _CHUNK:
            exps = rng.standard_exponential(_CHUNK)
            unis = rng.random(_CHUNK)
            cursor = 0
        dt = exps[cursor] / exit_rates[state]
        t_next = t + dt
        if int(state) in up_set:
            _add_up_interval(batch_up, t, min(t_next, horizon), warmup, batch_len)
        if t_next >= horizon:
            break
        pick = int(
            np.searchsorted(cum_probs[state], unis[cursor], side="right")
        )
        pick = min(pick, len(targets[state]) - 1)
        state = State(int(targets[state][pick]))
        cursor += 1
        t = t_next

    fractions = batch_up / batch_len
    mean = float(np.mean(fractions))
    std_error = float(np.std(fractions, ddof=1) / math.sqrt(cfg.batches))
    return SimEstimate(mean=mean, std_error=std_error, replications=cfg.batches)
