"""Six-state Markov model of a repairable warm-standby system.

The system runs two identical units in active parallel with one warm
standby and a single repair facility. Active units fail at rate lambda
each, the standby fails at rate theta, repairs complete at rate mu. A
failure is caught and the standby switched in with coverage probability
c; an uncovered failure drops the whole system into an unsafe condition
that a reboot clears at rate beta.

States:

    UP3        two active units plus standby, all healthy
    UP2        two active units, one unit in repair
    UP1        one active unit, two units down
    EXHAUSTED  every unit down after a covered failure sequence
    UNSAFE1    uncovered failure out of the full configuration
    UNSAFE2    uncovered failure while already degraded

Two chain variants share the transition core. Reliability mode makes
every down state absorbing, which is the right object for first-passage
quantities (MTTF, reliability). Availability mode adds the recovery
paths (reboot from the unsafe states, repair out of exhaustion) and has
no absorbing state, which is the right object for long-run analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum

import numpy as np
import scipy.linalg

from .errors import SolverError, ValidationError


class State(IntEnum):
    UP3 = 0
    UP2 = 1
    UP1 = 2
    EXHAUSTED = 3
    UNSAFE1 = 4
    UNSAFE2 = 5


UP_STATES = (State.UP3, State.UP2, State.UP1)
DOWN_STATES = (State.EXHAUSTED, State.UNSAFE1, State.UNSAFE2)

N_STATES = len(State)


class ChainMode(Enum):
    RELIABILITY = "reliability"
    AVAILABILITY = "availability"


@dataclass(frozen=True)
class SystemParams:
    """Crisp rates of the repairable system.

    failure_rate           lambda, per active unit, > 0
    standby_failure_rate   theta, warm standby, 0 <= theta <= lambda
    repair_rate            mu, single repair facility, >= 0
    coverage               c, probability a failure is covered, in [0, 1]
    reboot_rate            beta, recovery from unsafe conditions, > 0

    repair_rate may be zero for pure first-passage analysis; availability
    analysis additionally requires it to be positive.
    """

    failure_rate: float
    standby_failure_rate: float
    repair_rate: float
    coverage: float
    reboot_rate: float

    def __post_init__(self):
        for name in (
            "failure_rate",
            "standby_failure_rate",
            "repair_rate",
            "coverage",
            "reboot_rate",
        ):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not np.isfinite(value):
                raise ValidationError(f"{name} must be finite, got {value!r}")
        if self.failure_rate <= 0:
            raise ValidationError(f"failure_rate must be > 0, got {self.failure_rate}")
        if self.standby_failure_rate < 0:
            raise ValidationError(
                f"standby_failure_rate must be >= 0, got {self.standby_failure_rate}"
            )
        if self.standby_failure_rate > self.failure_rate:
            raise ValidationError(
                f"standby_failure_rate {self.standby_failure_rate} exceeds "
                f"failure_rate {self.failure_rate}"
            )
        if self.repair_rate < 0:
            raise ValidationError(f"repair_rate must be >= 0, got {self.repair_rate}")
        if not 0.0 <= self.coverage <= 1.0:
            raise ValidationError(f"coverage must lie in [0, 1], got {self.coverage}")
        if self.reboot_rate <= 0:
            raise ValidationError(f"reboot_rate must be > 0, got {self.reboot_rate}")


def _transitions(params: SystemParams, mode: ChainMode):
    """Edge list (source, target, rate) of the chain, zero rates dropped."""
    lam = params.failure_rate
    theta = params.standby_failure_rate
    mu = params.repair_rate
    c = params.coverage
    beta = params.reboot_rate

    full_load = 2.0 * lam + theta
    edges = [
        (State.UP3, State.UP2, c * full_load),
        (State.UP3, State.UNSAFE1, (1.0 - c) * full_load),
        (State.UP2, State.UP3, mu),
        (State.UP2, State.UP1, 2.0 * c * lam),
        (State.UP2, State.UNSAFE2, 2.0 * (1.0 - c) * lam),
        (State.UP1, State.UP2, mu),
        (State.UP1, State.EXHAUSTED, lam),
    ]
    if mode is ChainMode.AVAILABILITY:
        edges += [
            (State.UNSAFE1, State.UP3, beta),
            (State.UNSAFE2, State.UP2, beta),
            (State.EXHAUSTED, State.UP1, mu),
        ]
    return [(s, t, r) for s, t, r in edges if r > 0.0]


@dataclass(frozen=True)
class GeneratorMatrix:
    """Infinitesimal generator of one chain variant.

    rates[i, j] is the transition rate from state i to state j for
    i != j; diagonal entries close each row to zero. initial is the
    time-zero distribution, all mass on UP3.
    """

    mode: ChainMode
    rates: np.ndarray
    initial: np.ndarray

    def __post_init__(self):
        rates = np.array(self.rates, dtype=float)
        initial = np.array(self.initial, dtype=float)
        if rates.shape != (N_STATES, N_STATES):
            raise ValidationError(f"generator must be 6x6, got {rates.shape}")
        if initial.shape != (N_STATES,):
            raise ValidationError(f"initial must have 6 entries, got {initial.shape}")
        off = rates.copy()
        np.fill_diagonal(off, 0.0)
        if off.min() < 0.0:
            raise ValidationError("off-diagonal generator entries must be >= 0")
        row_sums = rates.sum(axis=1)
        if np.abs(row_sums).max() > 1e-9:
            raise ValidationError("generator rows must sum to zero")
        if self.mode is ChainMode.RELIABILITY:
            for s in DOWN_STATES:
                if np.any(rates[s] != 0.0):
                    raise ValidationError(
                        f"reliability mode requires absorbing down state {s.name}"
                    )
        else:
            outflow = off.sum(axis=1)
            if np.any(outflow <= 0.0):
                dead = State(int(np.argmin(outflow))).name
                raise ValidationError(
                    f"availability mode must have no absorbing state, {dead} has "
                    f"no outgoing rate"
                )
        rates.setflags(write=False)
        initial.setflags(write=False)
        object.__setattr__(self, "rates", rates)
        object.__setattr__(self, "initial", initial)


def build_generator(
    params: SystemParams, mode: ChainMode = ChainMode.RELIABILITY
) -> GeneratorMatrix:
    """Assemble the generator for one chain variant."""
    if mode is ChainMode.AVAILABILITY and params.repair_rate == 0.0:
        raise ValidationError(
            "availability analysis requires repair_rate > 0, the chain is "
            "not irreducible otherwise"
        )
    rates = np.zeros((N_STATES, N_STATES))
    for s, t, r in _transitions(params, mode):
        rates[s, t] += r
    np.fill_diagonal(rates, 0.0)
    np.fill_diagonal(rates, -rates.sum(axis=1))
    initial = np.zeros(N_STATES)
    initial[State.UP3] = 1.0
    return GeneratorMatrix(mode=mode, rates=rates, initial=initial)


@dataclass(frozen=True)
class StateProbabilities:
    """Transient distribution over the six states at one time point."""

    t: float
    p: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.shape != (N_STATES,):
            raise ValidationError(f"p must have 6 entries, got {p.shape}")
        if p.min() < -1e-12 or p.max() > 1.0 + 1e-12:
            raise ValidationError("probabilities must lie in [0, 1]")
        if abs(p.sum() - 1.0) > 1e-10:
            raise ValidationError(f"probabilities sum to {p.sum()}, expected 1")
        p.setflags(write=False)
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "p", p)


@dataclass(frozen=True)
class LaplaceStateVector:
    """Laplace transforms of the state probabilities at one s > 0."""

    s: float
    ptilde: np.ndarray

    def __post_init__(self):
        ptilde = np.array(self.ptilde, dtype=float)
        if ptilde.shape != (N_STATES,):
            raise ValidationError(f"ptilde must have 6 entries, got {ptilde.shape}")
        ptilde.setflags(write=False)
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "ptilde", ptilde)

    @property
    def total(self) -> float:
        return float(self.ptilde.sum())


def laplace_state_probs(params: SystemParams, s: float) -> LaplaceStateVector:
    """Solve the transformed balance equations of the reliability chain.

    The transient system dP/dt = Q^T P with all mass initially on UP3
    becomes (s I - Q^T) ptilde = P(0) under the Laplace transform. Total
    probability is conserved, so s * sum(ptilde) = 1 for every s > 0.
    """
    s = float(s)
    if not np.isfinite(s) or s <= 0.0:
        raise ValidationError(f"transform variable s must be > 0, got {s}")
    gen = build_generator(params, ChainMode.RELIABILITY)
    lhs = s * np.eye(N_STATES) - gen.rates.T
    try:
        ptilde = np.linalg.solve(lhs, gen.initial)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"Laplace system singular at s={s}") from exc
    residual = abs(s * ptilde.sum() - 1.0)
    if residual > 1e-8:
        raise SolverError(
            f"probability conservation violated at s={s}: residual {residual:.3e}"
        )
    return LaplaceStateVector(s=s, ptilde=ptilde)


def mttf(params: SystemParams) -> float:
    """Mean time to first system failure starting from UP3.

    Solves Q_T m = -1 on the transient (up-state) block of the
    reliability generator; m[UP3] is the expected absorption time.
    """
    gen = build_generator(params, ChainMode.RELIABILITY)
    idx = np.array(UP_STATES, dtype=int)
    block = gen.rates[np.ix_(idx, idx)]
    try:
        m = np.linalg.solve(block, -np.ones(len(idx)))
    except np.linalg.LinAlgError as exc:
        raise SolverError("transient block singular, no finite MTTF") from exc
    return float(m[0])


_UNIFORMIZATION_TOL = 1e-12
_UNIFORMIZATION_MAX_RATE_TIME = 200.0
_UNIFORMIZATION_MAX_TERMS = 5000


def _transient_distribution(gen: GeneratorMatrix, t: float) -> np.ndarray:
    """Distribution at time t via uniformization, expm when t is stiff.

    Uniformization accumulates Poisson-weighted powers of the jump kernel
    until the truncated tail drops below 1e-12, which keeps every entry
    nonnegative. For large rate*t the Poisson series is long, so the
    dense matrix exponential takes over.
    """
    p0 = gen.initial
    if t == 0.0:
        return p0.copy()
    rate = float(-gen.rates.diagonal().min())
    if rate == 0.0:
        return p0.copy()
    if rate * t > _UNIFORMIZATION_MAX_RATE_TIME:
        return scipy.linalg.expm(gen.rates.T * t) @ p0

    kernel = np.eye(N_STATES) + gen.rates / rate
    v = p0.copy()
    weight = float(np.exp(-rate * t))
    acc = weight * v
    cum = weight
    for k in range(1, _UNIFORMIZATION_MAX_TERMS + 1):
        v = v @ kernel
        weight *= rate * t / k
        acc += weight * v
        cum += weight
        if 1.0 - cum < _UNIFORMIZATION_TOL:
            return acc
    raise SolverError(f"uniformization did not converge at t={t}")


def state_probabilities(
    params: SystemParams, t: float, mode: ChainMode = ChainMode.RELIABILITY
) -> StateProbabilities:
    """Transient distribution of the chosen chain variant at time t."""
    t = float(t)
    if not np.isfinite(t) or t < 0.0:
        raise ValidationError(f"time must be >= 0, got {t}")
    gen = build_generator(params, mode)
    p = _transient_distribution(gen, t)
    p = np.clip(p, 0.0, None)
    return StateProbabilities(t=t, p=p)


def reliability_at(params: SystemParams, t: float) -> float:
    """Probability the system has not failed by time t."""
    probs = state_probabilities(params, t, ChainMode.RELIABILITY)
    r = float(probs.p[list(UP_STATES)].sum())
    return min(max(r, 0.0), 1.0)


def failure_density_laplace(params: SystemParams, s: float) -> float:
    """Laplace transform of the time-to-failure density at s > 0.

    Equal to s times the transformed probability of sitting in any down
    state; tends to 1 as s drops to 0 because failure is certain, and its
    negative slope at 0 is the MTTF.
    """
    vec = laplace_state_probs(params, s)
    down = vec.ptilde[list(DOWN_STATES)].sum()
    return float(s * down)


def _reachable_states(rates: np.ndarray, start: int) -> list[int]:
    seen = {start}
    frontier = [start]
    while frontier:
        here = frontier.pop()
        for j in range(N_STATES):
            if j != here and rates[here, j] > 0.0 and j not in seen:
                seen.add(j)
                frontier.append(j)
    return sorted(seen)


def stationary_distribution(params: SystemParams) -> np.ndarray:
    """Stationary distribution of the availability chain.

    Degenerate coverage values (c = 0 or c = 1) leave part of the state
    space unreachable from UP3; the balance equations are solved on the
    reachable subset and unreachable states get probability zero.
    """
    gen = build_generator(params, ChainMode.AVAILABILITY)
    reachable = _reachable_states(gen.rates, int(State.UP3))
    sub = gen.rates[np.ix_(reachable, reachable)]
    lhs = sub.T.copy()
    lhs[-1, :] = 1.0
    rhs = np.zeros(len(reachable))
    rhs[-1] = 1.0
    try:
        pi_sub = np.linalg.solve(lhs, rhs)
    except np.linalg.LinAlgError as exc:
        raise SolverError("availability chain has no unique stationary law") from exc
    pi_sub = np.clip(pi_sub, 0.0, None)
    pi_sub /= pi_sub.sum()
    pi = np.zeros(N_STATES)
    pi[reachable] = pi_sub
    return pi


def steady_availability(params: SystemParams) -> float:
    """Long-run fraction of time the system is operational."""
    pi = stationary_distribution(params)
    return float(pi[list(UP_STATES)].sum())
