"""Shared test helpers: independent reference oracles and fixture
builders. Oracles here deliberately avoid the library's own code paths
(pure-python RNG loop, Decimal arithmetic, polyfit, enumeration)."""
from __future__ import annotations

import itertools
from decimal import Decimal, getcontext
from pathlib import Path

import numpy as np

from ngramlex.growth import GrowthCurve
from ngramlex.ingest import FrequencyTable
from ngramlex.model import ProbabilityVector

DATA_DIR = Path(__file__).parent / "data"

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def splitmix64_outputs(seed: int, n: int) -> list[int]:
    """Reference SplitMix64: stateful python-int loop, no numpy."""
    state = seed & MASK64
    out = []
    for _ in range(n):
        state = (state + GOLDEN) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        z = z ^ (z >> 31)
        out.append(z)
    return out


def splitmix64_uniforms(seed: int, n: int) -> list[float]:
    return [(x >> 11) * 2.0**-53 for x in splitmix64_outputs(seed, n)]


def decimal_hit_probability(p: float, L: float) -> float:
    """1 - (1-p)^L at 400 significant digits (enough for p = 1e-300)."""
    getcontext().prec = 400
    dp, dL = Decimal(p), Decimal(L)
    return float(1 - ((1 - dp).ln() * dL).exp())


def enum_expected_distinct(probs: list[float], L: int) -> float:
    """E[distinct types in L draws] by exhaustive outcome enumeration."""
    total = 0.0
    for outcome in itertools.product(range(len(probs)), repeat=L):
        weight = 1.0
        for i in outcome:
            weight *= probs[i]
        total += weight * len(set(outcome))
    return total


def random_pv(rng: np.random.Generator, max_words: int = 1000) -> ProbabilityVector:
    """Random probability vector with multiplicities, word count <= max_words."""
    n_groups = int(rng.integers(1, 51))
    # cap per-group multiplicity so the word count always fits
    cap = min(40, max(1, max_words // n_groups))
    mults = rng.integers(1, cap + 1, size=n_groups)
    weights = rng.lognormal(0.0, 2.0, size=n_groups)
    return ProbabilityVector.from_weights(weights, mults)


def random_table(rng: np.random.Generator, year: int) -> FrequencyTable:
    """Random frequency table with unicode-ish tokens and counts >= 1."""
    n = int(rng.integers(1, 60))
    letters = "abcdefghijklmnopqrstuvwxyzéàüñ"
    tokens = set()
    while len(tokens) < n:
        length = int(rng.integers(1, 9))
        tokens.add("".join(letters[i] for i in rng.integers(0, len(letters), size=length)))
    counts = {t: int(rng.integers(1, 5000)) for t in tokens}
    return FrequencyTable(year, counts)


def halfpower_curve() -> GrowthCurve:
    """60 years exactly on N = 2 sqrt(L): L = m^2, N = 2m."""
    years = np.arange(1900, 1960)
    m = np.arange(100, 160)
    return GrowthCurve(years, m**2, 2 * m)


def two_regime_curve() -> GrowthCurve:
    """200 years: slope 0.4 through 1899, then 0.7, continuous join.

    L = round(10^(8 + 0.025 dy)) keeps rounding error in the fitted
    slopes below 1e-7 (values verified against a direct OLS oracle).
    """
    years = np.arange(1800, 2000)
    dy = years - 1800
    L = np.round(10.0 ** (8.0 + 0.025 * dy)).astype(np.int64)
    c1 = 1e4
    c2 = c1 * 10.0 ** (10.5 * (0.4 - 0.7))
    N = np.where(
        years <= 1899,
        np.round(c1 * L.astype(np.float64) ** 0.4),
        np.round(c2 * L.astype(np.float64) ** 0.7),
    ).astype(np.int64)
    return GrowthCurve(years, L, N)


def ols_slope(x: np.ndarray, y: np.ndarray) -> float:
    """Independent log-log OLS oracle via numpy.polyfit."""
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def zipf_multinomial_table(
    beta: float, w: int, tokens: int, seed: int, year: int = 2000
) -> FrequencyTable:
    """Frequency table drawn multinomially from a Zipf law (PCG64 rng,
    independent of the package's sampling generator)."""
    from ngramlex.model import zipf_probs

    probs = zipf_probs(beta, w).values
    counts = np.random.default_rng(seed).multinomial(tokens, probs)
    table = {f"w{i:05d}": int(c) for i, c in enumerate(counts) if c > 0}
    return FrequencyTable(year, table)
