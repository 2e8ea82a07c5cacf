"""Empirical growth curves, function-word shares, and sliding-window
Heaps exponent series over per-year frequency tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DomainError,
    EmptyRange,
    EmptyTable,
    InsufficientData,
    InsufficientPoints,
    NonPositiveValue,
)
from .fit import PowerLawFit, fit_powerlaw_ls
from .ingest import FilterConfig, FrequencyTable, normalize_token

DEFAULT_WINDOW_YEARS = 51


@dataclass(frozen=True)
class GrowthCurve:
    """Per-year corpus sizes: text length L and lexicon size N, one
    independent point per year (no pooling across years)."""

    years: np.ndarray
    lengths: np.ndarray
    vocab: np.ndarray

    def __post_init__(self):
        y = np.asarray(self.years, dtype=np.int64)
        l = np.asarray(self.lengths, dtype=np.int64)
        n = np.asarray(self.vocab, dtype=np.int64)
        if y.ndim != 1 or y.shape != l.shape or y.shape != n.shape:
            raise DomainError("years, lengths and vocab must be equal-length vectors")
        if y.size > 1 and np.any(np.diff(y) <= 0):
            raise DomainError("years must be strictly increasing")
        if np.any(n < 0) or np.any(l < n):
            raise DomainError("every point needs L >= N >= 0")
        for name, arr in (("years", y), ("lengths", l), ("vocab", n)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self) -> int:
        return int(self.years.size)

    def points(self) -> Iterator[tuple[int, int, int]]:
        for y, l, n in zip(self.years, self.lengths, self.vocab):
            yield int(y), int(l), int(n)

    @classmethod
    def from_points(cls, points: Iterable[tuple[int, int, int]]) -> "GrowthCurve":
        pts = sorted(points)
        if not pts:
            raise EmptyRange("no growth points")
        arr = np.asarray(pts, dtype=np.int64)
        return cls(arr[:, 0], arr[:, 1], arr[:, 2])


def growth_points(
    tables: Iterable[FrequencyTable],
    year_range: tuple[int, int] | None = None,
) -> GrowthCurve:
    """One (year, L, N) point per table, sorted by year.

    year_range is an inclusive (first, last) filter; duplicate years
    are an error (merge tables for the same year first).
    """
    pts = []
    for t in tables:
        if year_range is not None and not (year_range[0] <= t.year <= year_range[1]):
            continue
        pts.append((t.year, t.total_tokens, t.distinct_tokens))
    if not pts:
        raise EmptyRange("no tables in the requested year range")
    years = [p[0] for p in pts]
    if len(set(years)) != len(years):
        raise DomainError("duplicate years in input tables")
    return GrowthCurve.from_points(pts)


class FunctionWordList:
    """Set of normalized function words.

    File format: UTF-8, one token per line, "#" lines and blank lines
    ignored. Tokens are normalized on load with the active filter
    config; entries the normalizer rejects are dropped and counted.
    """

    __slots__ = ("tokens", "rejected")

    def __init__(self, tokens: Iterable[str], cfg: FilterConfig | None = None):
        cfg = cfg if cfg is not None else FilterConfig()
        kept = set()
        rejected = 0
        for tok in tokens:
            norm = normalize_token(tok, cfg)
            if norm is None:
                rejected += 1
            else:
                kept.add(norm)
        self.tokens = frozenset(kept)
        self.rejected = rejected

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.tokens

    @classmethod
    def from_text(cls, text: str, cfg: FilterConfig | None = None) -> "FunctionWordList":
        lines = (ln.strip() for ln in text.splitlines())
        return cls((ln for ln in lines if ln and not ln.startswith("#")), cfg)

    @classmethod
    def from_file(cls, path, cfg: FilterConfig | None = None) -> "FunctionWordList":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read(), cfg)


def function_word_share(table: FrequencyTable, fwlist: FunctionWordList) -> float:
    """Fraction of running tokens that are function words."""
    if not table.counts:
        raise EmptyTable(f"year {table.year} table is empty")
    fw = sum(c for tok, c in table.counts.items() if tok in fwlist)
    return fw / table.total_tokens


def content_share(table: FrequencyTable, fwlist: FunctionWordList) -> float:
    """Complement of the function-word share (the content-word part)."""
    return 1.0 - function_word_share(table, fwlist)


@dataclass(frozen=True)
class HeapsSeries:
    """Sliding-window Heaps exponents: one (center year, k) per emitted
    window, with the underlying log-log fit kept for diagnostics."""

    center_years: tuple[int, ...]
    fits: tuple[PowerLawFit, ...]
    window_years: int
    skipped: tuple[tuple[int, str], ...] = field(default=())

    def __post_init__(self):
        if len(self.center_years) != len(self.fits):
            raise DomainError("one fit per center year required")
        if any(not np.isfinite(f.exponent) for f in self.fits):
            raise DomainError("every emitted exponent must be finite")

    def __len__(self) -> int:
        return len(self.center_years)

    @property
    def exponents(self) -> np.ndarray:
        return np.asarray([f.exponent for f in self.fits], dtype=np.float64)

    def rows(self) -> Iterator[tuple[int, float, float, int]]:
        for year, f in zip(self.center_years, self.fits):
            yield year, f.exponent, f.log_prefactor, f.n_points


def sliding_heaps(
    curve: GrowthCurve,
    window_years: int = DEFAULT_WINDOW_YEARS,
    step: int = 1,
) -> HeapsSeries:
    """Fit ln N against ln L inside a sliding window of calendar years.

    A window of width W centered on year c covers c-(W-1)//2 .. c+W//2
    (symmetric when W is odd). Only windows fully inside the curve's
    year span are used; windows holding fewer than 3 points, or whose
    points cannot support a log-log fit, are skipped and reported.
    """
    if window_years < 1:
        raise DomainError(f"window_years must be >= 1, got {window_years}")
    if step < 1:
        raise DomainError(f"step must be >= 1, got {step}")
    if len(curve) == 0:
        raise EmptyRange("empty growth curve")
    half_lo = (window_years - 1) // 2
    half_hi = window_years // 2
    first = int(curve.years[0]) + half_lo
    last = int(curve.years[-1]) - half_hi

    centers = []
    fits = []
    skipped = []
    years = curve.years
    for center in range(first, last + 1, step):
        lo, hi = center - half_lo, center + half_hi
        idx = np.nonzero((years >= lo) & (years <= hi))[0]
        if idx.size < 3:
            skipped.append((center, f"{idx.size} points"))
            continue
        pts = np.stack(
            [curve.lengths[idx].astype(np.float64), curve.vocab[idx].astype(np.float64)],
            axis=1,
        )
        try:
            fit = fit_powerlaw_ls(pts)
        except (InsufficientPoints, NonPositiveValue) as exc:
            skipped.append((center, str(exc)))
            continue
        centers.append(center)
        fits.append(fit)
    if not centers:
        raise InsufficientData(
            f"no window of {window_years} years holds >= 3 usable points"
        )
    return HeapsSeries(tuple(centers), tuple(fits), window_years, tuple(skipped))


def window_extract(curve: GrowthCurve, center_year: int, half_width: int) -> GrowthCurve:
    """Sub-curve of years within center_year +- half_width."""
    if half_width < 0:
        raise DomainError(f"half_width must be >= 0, got {half_width}")
    lo, hi = center_year - half_width, center_year + half_width
    keep = (curve.years >= lo) & (curve.years <= hi)
    if not np.any(keep):
        raise EmptyRange(f"no curve points in {lo}..{hi}")
    return GrowthCurve(curve.years[keep], curve.lengths[keep], curve.vocab[keep])
