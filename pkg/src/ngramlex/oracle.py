"""Monte Carlo oracle: generate i.i.d. token streams from a probability
vector and count distinct types, as an independent check on the
expected-vocabulary formulas."""
from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np

from . import kernels
from .errors import DomainError
from .model import ProbabilityVector


@dataclass(frozen=True)
class McEstimate:
    """Sample mean and standard error of the distinct-token count."""

    mean: float
    std_error: float
    trials: int
    seed: int

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError("trials must be >= 1")
        if self.std_error < 0.0:
            raise DomainError("std_error must be >= 0")

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std_error": self.std_error,
            "trials": self.trials,
            "seed": self.seed,
        }


def _check_args(L, seed) -> tuple[int, int]:
    if isinstance(L, bool) or not isinstance(L, (int, np.integer)):
        raise DomainError(f"L must be an integer, got {L!r}")
    if L < 0:
        raise DomainError(f"L must be >= 0, got {L}")
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise DomainError(f"seed must be an integer, got {seed!r}")
    return int(L), int(seed) % (1 << 64)


def _distinct_counts(probs: ProbabilityVector, L: int, trials: int, seed: int) -> np.ndarray:
    alias_j, alias_q = probs._alias
    return kernels.mc_distinct_counts(
        alias_j,
        alias_q,
        probs._group_offsets,
        probs._mults_f8,
        L,
        trials,
        np.uint64(seed),  # seeds at or above 2**63 stay in range
    )


def sample_distinct_count(probs: ProbabilityVector, L, seed) -> int:
    """Distinct types among L i.i.d. draws from probs; one trial.

    The draw stream is fully determined by `seed` (trial i of the
    multi-trial estimator uses stream seed + i, so this single trial
    matches its trial 0).
    """
    L, seed = _check_args(L, seed)
    if L == 0:
        return 0
    return int(_distinct_counts(probs, L, 1, seed)[0])


def mc_expected_vocab(probs: ProbabilityVector, L, trials, seed) -> McEstimate:
    """Mean distinct-token count over independent trials.

    Trial i samples with stream seed + i (mod 2^64); the estimate is
    therefore identical under any execution order. std_error is the
    sample standard deviation (ddof=1) divided by sqrt(trials).
    """
    L, seed = _check_args(L, seed)
    if isinstance(trials, bool) or not isinstance(trials, (int, np.integer)):
        raise DomainError(f"trials must be an integer, got {trials!r}")
    if trials < 2:
        raise DomainError(f"trials must be >= 2 for a standard error, got {trials}")
    trials = int(trials)
    if L == 0:
        return McEstimate(0.0, 0.0, trials, seed)
    counts = _distinct_counts(probs, L, trials, seed)
    mean = float(np.mean(counts))
    std_error = float(np.std(counts, ddof=1) / math.sqrt(trials))
    return McEstimate(mean, std_error, trials, seed)
