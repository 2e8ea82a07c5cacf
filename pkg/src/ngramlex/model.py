"""Probabilistic vocabulary-growth models.

Given a word-probability vector, computes the expected number of
distinct words in a text of length L (each word independently present
with probability 1-(1-p_i)^L), the function-word-split variant, and the
local growth exponent k(L) = d ln N / d ln L over geometric L grids.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .errors import DomainError
from .ingest import FrequencyTable

SMALL_LP = kernels.numpy_backend.SMALL_LP


class ProbabilityVector:
    """Word-usage probabilities in compressed multiplicity form.

    Stored canonically: strictly descending unique probability values,
    each with the number of words sharing it. Explicit per-word vectors
    and pre-grouped input collapse to the same representation, so both
    evaluate through identical group terms.
    """

    def __init__(self, values: Sequence[float] | np.ndarray, multiplicities: Sequence[int] | np.ndarray | None = None):
        vals = np.asarray(values, dtype=np.float64)
        if vals.ndim != 1 or vals.size == 0:
            raise DomainError("probability vector must be a non-empty 1-d sequence")
        if multiplicities is None:
            mults = np.ones(vals.shape[0], dtype=np.int64)
        else:
            mraw = np.asarray(multiplicities)
            if mraw.shape != vals.shape:
                raise DomainError("values and multiplicities must have equal length")
            if not np.all(mraw == np.floor(mraw)):
                raise DomainError("multiplicities must be integers")
            mults = mraw.astype(np.int64)
        if not np.all(np.isfinite(vals)):
            raise DomainError("probabilities must be finite")
        if np.any(vals <= 0.0) or np.any(vals > 1.0):
            raise DomainError("probabilities must lie in (0, 1]")
        if np.any(mults < 1):
            raise DomainError("multiplicities must be >= 1")
        uniq, inverse = np.unique(vals, return_inverse=True)
        grouped = np.bincount(inverse, weights=mults.astype(np.float64))
        self.values: np.ndarray = uniq[::-1].copy()
        self.multiplicities: np.ndarray = grouped[::-1].astype(np.int64)
        total = float(np.sum(self.values * self.multiplicities))
        if abs(total - 1.0) > 1e-9:
            raise DomainError(f"probabilities must sum to 1 within 1e-9, got {total!r}")
        self.values.setflags(write=False)
        self.multiplicities.setflags(write=False)

    @classmethod
    def from_weights(cls, weights: Sequence[float] | np.ndarray, multiplicities=None) -> "ProbabilityVector":
        """Normalize positive weights into a probability vector."""
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0 or np.any(w <= 0.0) or not np.all(np.isfinite(w)):
            raise DomainError("weights must be a non-empty vector of positive finite values")
        if multiplicities is None:
            total = float(np.sum(w))
        else:
            m = np.asarray(multiplicities, dtype=np.float64)
            if m.shape != w.shape:
                raise DomainError("weights and multiplicities must have equal length")
            total = float(np.sum(w * m))
        return cls(w / total, multiplicities)

    @classmethod
    def from_table(cls, table: FrequencyTable) -> "ProbabilityVector":
        """Empirical probabilities p_i = count_i / L of one year table."""
        counts = np.fromiter(table.counts.values(), dtype=np.int64, count=len(table.counts))
        return cls(counts / np.float64(table.total_tokens))

    @property
    def word_count(self) -> int:
        return int(self.multiplicities.sum())

    @property
    def p_min(self) -> float:
        return float(self.values[-1])

    @cached_property
    def _mults_f8(self) -> np.ndarray:
        return self.multiplicities.astype(np.float64)

    @cached_property
    def _group_offsets(self) -> np.ndarray:
        offsets = np.zeros(self.multiplicities.shape[0], dtype=np.int64)
        np.cumsum(self.multiplicities[:-1], out=offsets[1:])
        return offsets

    @cached_property
    def _alias(self) -> tuple[np.ndarray, np.ndarray]:
        weights = self.values * self._mults_f8
        return kernels.build_alias(weights)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ProbabilityVector)
            and np.array_equal(self.values, other.values)
            and np.array_equal(self.multiplicities, other.multiplicities)
        )

    def __repr__(self) -> str:
        return f"ProbabilityVector(groups={self.values.shape[0]}, words={self.word_count})"


def zipf_probs(beta: float, w: int) -> ProbabilityVector:
    """Zipf probabilities p_k proportional to k^-beta over ranks 1..w."""
    if w < 1:
        raise DomainError(f"word count must be >= 1, got {w}")
    if not (beta >= 0.0 and math.isfinite(beta)):
        raise DomainError(f"beta must be a finite non-negative real, got {beta!r}")
    ranks = np.arange(1, w + 1, dtype=np.float64)
    raw = ranks ** -beta
    return ProbabilityVector(raw / raw.sum())


@dataclass(frozen=True)
class ModelConfig:
    """Function-word-split model parameters.

    content_probs covers the content words only (renormalized to sum to
    1 over that set), n_serv counts the function words assumed always
    present, and zeta scales L to the expected number of content tokens.
    """

    content_probs: ProbabilityVector
    n_serv: int = 0
    zeta: float = 1.0

    def __post_init__(self):
        if self.n_serv < 0:
            raise DomainError(f"n_serv must be >= 0, got {self.n_serv}")
        if not (0.0 < self.zeta <= 1.0):
            raise DomainError(f"zeta must lie in (0, 1], got {self.zeta!r}")


def hit_probability(p: float, L: float) -> float:
    """Probability 1-(1-p)^L that a word of probability p occurs in L tokens.

    Evaluated as -expm1(L*log1p(-p)); below L*p = 1e-12 the term is
    taken as L*p itself.
    """
    if not (0.0 < p <= 1.0):
        raise DomainError(f"p must lie in (0, 1], got {p!r}")
    if not (L >= 0.0 and math.isfinite(L)):
        raise DomainError(f"L must be a finite non-negative real, got {L!r}")
    if L == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    lp = L * p
    if lp < SMALL_LP:
        return lp
    return -math.expm1(L * math.log1p(-p))


def _check_length(L: float) -> float:
    if not (L >= 0.0 and math.isfinite(L)):
        raise DomainError(f"L must be a finite non-negative real, got {L!r}")
    return float(L)


def expected_vocab(probs: ProbabilityVector, L: float) -> float:
    """Expected distinct-word count after L tokens: sum of hit probabilities."""
    L = _check_length(L)
    return kernels.expected_vocab_sum(probs.values, probs._mults_f8, L)


def expected_vocab_grid(probs: ProbabilityVector, Ls: np.ndarray) -> np.ndarray:
    """expected_vocab evaluated over a whole grid in one kernel call."""
    Ls = np.asarray(Ls, dtype=np.float64)
    if Ls.ndim != 1 or np.any(~np.isfinite(Ls)) or np.any(Ls < 0.0):
        raise DomainError("grid must be a 1-d vector of finite non-negative reals")
    return kernels.expected_vocab_grid(probs.values, probs._mults_f8, Ls)


def expected_vocab_modified(cfg: ModelConfig, L: float) -> float:
    """Function-word-split expected vocabulary: n_serv always counted,
    content words exposed to zeta*L effective tokens."""
    L = _check_length(L)
    return cfg.n_serv + expected_vocab(cfg.content_probs, cfg.zeta * L)


@dataclass(frozen=True)
class ExponentScan:
    """Local growth exponent k(L) along a grid, with the N values."""

    L: np.ndarray
    N: np.ndarray
    k: np.ndarray

    def __post_init__(self):
        if not (self.L.shape == self.N.shape == self.k.shape):
            raise DomainError("scan arrays must have equal shape")
        if np.any(np.diff(self.L) <= 0):
            raise DomainError("scan grid must be strictly increasing")
        # expected-vocab is monotone in L; allow ~1 ulp of summation noise
        if np.any(self.N[1:] < self.N[:-1] * (1.0 - 1e-12)):
            raise DomainError("N must be non-decreasing along the scan")

    def points(self) -> list[tuple[float, float, float]]:
        return list(zip(self.L.tolist(), self.N.tolist(), self.k.tolist()))


def log_slopes(Ls: np.ndarray, Ns: np.ndarray) -> np.ndarray:
    """d ln N / d ln L by central differences, one-sided at the ends.

    Requires >= 2 points; emitted with the sign convention of N ~ L^k
    (positive for growing N).
    """
    ln_l = np.log(Ls)
    ln_n = np.log(Ns)
    n = ln_l.shape[0]
    k = np.empty(n, dtype=np.float64)
    k[0] = (ln_n[1] - ln_n[0]) / (ln_l[1] - ln_l[0])
    k[-1] = (ln_n[-1] - ln_n[-2]) / (ln_l[-1] - ln_l[-2])
    if n > 2:
        k[1:-1] = (ln_n[2:] - ln_n[:-2]) / (ln_l[2:] - ln_l[:-2])
    return k


def local_heaps_exponent(evaluator: Callable[[float], float], grid: np.ndarray) -> ExponentScan:
    """Scan the local exponent of an L -> N evaluator over a grid.

    The grid must be strictly increasing with at least 3 positive
    points; N must be positive everywhere (the log derivative is
    undefined otherwise).
    """
    Ls = np.asarray(grid, dtype=np.float64)
    if Ls.ndim != 1 or Ls.shape[0] < 3:
        raise DomainError("grid needs at least 3 points")
    if np.any(~np.isfinite(Ls)) or Ls[0] <= 0.0 or np.any(np.diff(Ls) <= 0):
        raise DomainError("grid must be strictly increasing and positive")
    Ns = np.array([float(evaluator(float(L))) for L in Ls], dtype=np.float64)
    if np.any(~np.isfinite(Ns)) or np.any(Ns <= 0.0):
        raise DomainError("evaluator must return finite positive N at every grid point")
    return ExponentScan(L=Ls, N=Ns, k=log_slopes(Ls, Ns))


def model_growth_curve(
    source: ProbabilityVector | ModelConfig, grid: np.ndarray
) -> list[tuple[float, float]]:
    """Expected (L, N) points of the basic or function-word-split model."""
    Ls = np.asarray(grid, dtype=np.float64)
    if Ls.ndim != 1 or Ls.size == 0:
        raise DomainError("grid must be a non-empty 1-d vector")
    if np.any(~np.isfinite(Ls)) or np.any(Ls < 0.0) or np.any(np.diff(Ls) <= 0):
        raise DomainError("grid must be strictly increasing and non-negative")
    if isinstance(source, ModelConfig):
        eff = Ls * source.zeta
        Ns = expected_vocab_grid(source.content_probs, eff) + np.float64(source.n_serv)
    else:
        Ns = expected_vocab_grid(source, Ls)
    return list(zip(Ls.tolist(), Ns.tolist()))


def geometric_grid(lo: float, hi: float, per_decade: int = 16) -> np.ndarray:
    """Geometric L grid with per_decade points per factor of 10, inclusive."""
    if not (lo > 0.0 and math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError("grid bounds must be finite and positive")
    if hi < lo:
        raise DomainError(f"grid upper bound {hi!r} below lower bound {lo!r}")
    if per_decade < 1:
        raise DomainError("per_decade must be >= 1")
    if hi == lo:
        return np.array([lo], dtype=np.float64)
    decades = math.log10(hi) - math.log10(lo)
    n = max(2, int(round(decades * per_decade)) + 1)
    return np.power(10.0, np.linspace(math.log10(lo), math.log10(hi), n))


def dump_probability_file(probs: ProbabilityVector, path: str | Path) -> Path:
    """Write the TSV probability/multiplicity form, descending."""
    path = Path(path)
    lines = ["# probability\tmultiplicity"]
    for v, m in zip(probs.values, probs.multiplicities):
        lines.append(f"{float(v)!r}\t{int(m)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def load_probability_file(path: str | Path) -> ProbabilityVector:
    """Read the TSV probability/multiplicity form ("#" lines ignored)."""
    values: list[float] = []
    mults: list[int] = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split("\t")
        if len(fields) != 2:
            raise DomainError(f"probability file line {lineno}: expected 2 tab-separated fields")
        try:
            values.append(float(fields[0]))
            mults.append(int(fields[1]))
        except ValueError:
            raise DomainError(f"probability file line {lineno}: bad number") from None
    if not values:
        raise DomainError("probability file holds no rows")
    return ProbabilityVector(values, mults)
