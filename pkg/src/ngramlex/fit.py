"""Power-law fitting: log-log least squares and range-restricted
multinomial maximum likelihood for rank-frequency data."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import (
    DomainError,
    EmptyTable,
    FitDiagnosticError,
    InsufficientPoints,
    NoInteriorMaximum,
    NonPositiveValue,
)
from .ingest import FrequencyTable

LS_LOGLOG = "LS_LOGLOG"
MLE_MULTINOMIAL = "MLE_MULTINOMIAL"

BETA_SEARCH_LO = 0.05
BETA_SEARCH_HI = 6.0
BETA_TOL = 1e-8

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class RankFrequency:
    """Empirical rank-frequency table: contiguous 1-based ranks with
    non-increasing positive counts."""

    ranks: np.ndarray
    counts: np.ndarray
    total_tokens: int

    def __post_init__(self):
        r = np.asarray(self.ranks, dtype=np.int64)
        c = np.asarray(self.counts, dtype=np.int64)
        if r.ndim != 1 or r.shape != c.shape or r.size == 0:
            raise DomainError("ranks and counts must be equal-length non-empty vectors")
        if r[0] != 1 or np.any(np.diff(r) != 1):
            raise DomainError("ranks must be contiguous from 1")
        if np.any(c < 1):
            raise DomainError("counts must be positive")
        if np.any(np.diff(c) > 0):
            raise DomainError("counts must be non-increasing in rank")
        object.__setattr__(self, "ranks", r)
        object.__setattr__(self, "counts", c)

    @property
    def max_rank(self) -> int:
        return int(self.ranks[-1])


def rank_table(table: FrequencyTable) -> RankFrequency:
    """Rank a year table: descending count, ties by ascending byte order."""
    if not table.counts:
        raise EmptyTable(f"year {table.year} table is empty")
    items = table.sorted_items()
    counts = np.fromiter((c for _, c in items), dtype=np.int64, count=len(items))
    return RankFrequency(
        ranks=np.arange(1, len(items) + 1, dtype=np.int64),
        counts=counts,
        total_tokens=table.total_tokens,
    )


@dataclass(frozen=True)
class PowerLawFit:
    """A fitted power law y = exp(log_prefactor) * x^exponent.

    For MLE_MULTINOMIAL the stored exponent is beta of p_r ~ r^-beta
    (the curve in count space is exp(log_prefactor) * r^-exponent);
    diagnostics is the residual sum of squares for LS_LOGLOG and the
    final log-likelihood for MLE_MULTINOMIAL.
    """

    exponent: float
    log_prefactor: float
    range: tuple[float, float]
    method: str
    diagnostics: float
    n_points: int

    def __post_init__(self):
        if self.method not in (LS_LOGLOG, MLE_MULTINOMIAL):
            raise DomainError(f"unknown fit method {self.method!r}")
        if not self.range[1] > self.range[0]:
            raise DomainError("fit range must satisfy hi > lo")


def fit_powerlaw_ls(
    points: Sequence[tuple[float, float]] | np.ndarray,
    x_range: tuple[float, float] | None = None,
) -> PowerLawFit:
    """Ordinary least squares of ln y on ln x, unweighted.

    Points with x outside x_range are dropped first; the remaining
    points must be >= 2 with strictly positive coordinates.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DomainError("points must be an (n, 2) array of (x, y)")
    x = pts[:, 0]
    y = pts[:, 1]
    if x_range is not None:
        lo, hi = x_range
        keep = (x >= lo) & (x <= hi)
        x, y = x[keep], y[keep]
    if x.shape[0] < 2:
        raise InsufficientPoints(f"need >= 2 in-range points, got {x.shape[0]}")
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise NonPositiveValue("log-log fit needs strictly positive x and y")
    lx = np.log(x)
    ly = np.log(y)
    dx = lx - lx.mean()
    sxx = float(np.sum(dx * dx))
    if sxx == 0.0:
        raise InsufficientPoints("all in-range x values are identical")
    slope = float(np.sum(dx * (ly - ly.mean())) / sxx)
    intercept = float(ly.mean() - slope * lx.mean())
    resid = ly - (intercept + slope * lx)
    return PowerLawFit(
        exponent=slope,
        log_prefactor=intercept,
        range=(float(x.min()), float(x.max())),
        method=LS_LOGLOG,
        diagnostics=float(np.sum(resid * resid)),
        n_points=int(x.shape[0]),
    )


def _loglik(beta: float, log_r: np.ndarray, t_sum: float, n_total: float) -> float:
    h, _ = kernels.zipf_power_sums(log_r, beta)
    return -beta * t_sum - n_total * math.log(h)


def _score(beta: float, log_r: np.ndarray, t_sum: float, n_total: float) -> float:
    # d/dbeta of the restricted multinomial log-likelihood
    h, g = kernels.zipf_power_sums(log_r, beta)
    return -t_sum + n_total * (g / h)


def fit_zipf_mle_counts(
    counts: Sequence[float] | np.ndarray, r_lo: int, r_hi: int
) -> PowerLawFit:
    """Maximize the range-restricted multinomial likelihood over beta.

    `counts` holds n_r for ranks r_lo..r_hi in order (zeros allowed:
    the multinomial categories are the ranks, observed or not). The
    distribution is conditioned on the in-range total, normalized by
    H(beta) = sum of r^-beta over the range. Search runs on
    [0.05, 6] by golden section, refined by bisection on the score
    sign, to 1e-8 in beta; a maximum on the search boundary raises
    NoInteriorMaximum carrying the boundary estimate.
    """
    if r_lo < 1 or r_hi <= r_lo:
        raise InsufficientPoints(f"need 1 <= r_lo < r_hi, got {r_lo}..{r_hi}")
    n = np.asarray(counts, dtype=np.float64)
    if n.ndim != 1 or n.shape[0] != r_hi - r_lo + 1:
        raise DomainError("counts must hold one value per rank in r_lo..r_hi")
    if np.any(n < 0.0) or not np.all(np.isfinite(n)):
        raise DomainError("counts must be finite and non-negative")
    n_total = float(n.sum())
    if n_total <= 0.0:
        raise InsufficientPoints("no tokens in the fitted rank range")
    log_r = np.log(np.arange(r_lo, r_hi + 1, dtype=np.float64))
    t_sum = float(np.dot(n, log_r))

    lo, hi = BETA_SEARCH_LO, BETA_SEARCH_HI
    # the score is strictly decreasing (negative curvature), so its sign
    # at the boundaries decides whether an interior maximum exists
    if _score(lo, log_r, t_sum, n_total) <= 0.0:
        raise NoInteriorMaximum(lo, f"likelihood maximum at or below beta={lo}")
    if _score(hi, log_r, t_sum, n_total) >= 0.0:
        raise NoInteriorMaximum(hi, f"likelihood maximum at or above beta={hi}")

    # golden-section bracket on the log-likelihood itself
    a, b = lo, hi
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    fc = _loglik(c, log_r, t_sum, n_total)
    fd = _loglik(d, log_r, t_sum, n_total)
    while b - a > 1e-3:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLDEN * (b - a)
            fc = _loglik(c, log_r, t_sum, n_total)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLDEN * (b - a)
            fd = _loglik(d, log_r, t_sum, n_total)
    # concavity diagnostic at the bracket scale
    mid = 0.5 * (a + b)
    half = max(0.5 * (b - a), 1e-4)
    second = (
        _loglik(mid - half, log_r, t_sum, n_total)
        - 2.0 * _loglik(mid, log_r, t_sum, n_total)
        + _loglik(mid + half, log_r, t_sum, n_total)
    )
    if second >= 0.0:
        raise FitDiagnosticError(
            f"non-concave log-likelihood around beta={mid:.6g} (second difference {second!r})"
        )
    # bisection on the score sign, widened so the root is surely inside
    a = max(lo, a - half)
    b = min(hi, b + half)
    sa = _score(a, log_r, t_sum, n_total)
    sb = _score(b, log_r, t_sum, n_total)
    if not (sa > 0.0 > sb):
        beta_hat = mid  # score numerically flat; the bracket already has it
    else:
        while b - a > BETA_TOL:
            m = 0.5 * (a + b)
            if _score(m, log_r, t_sum, n_total) > 0.0:
                a = m
            else:
                b = m
        beta_hat = 0.5 * (a + b)

    h, _ = kernels.zipf_power_sums(log_r, beta_hat)
    return PowerLawFit(
        exponent=beta_hat,
        log_prefactor=math.log(n_total) - math.log(h),
        range=(float(r_lo), float(r_hi)),
        method=MLE_MULTINOMIAL,
        diagnostics=-beta_hat * t_sum - n_total * math.log(h),
        n_points=r_hi - r_lo + 1,
    )


def fit_zipf_mle(rf: RankFrequency, r_lo: int, r_hi: int) -> PowerLawFit:
    """Zipf exponent over ranks r_lo..r_hi of an empirical rank table."""
    if r_lo < 1 or r_hi <= r_lo:
        raise InsufficientPoints(f"need 1 <= r_lo < r_hi, got {r_lo}..{r_hi}")
    if r_hi > rf.max_rank:
        raise InsufficientPoints(f"r_hi={r_hi} beyond max rank {rf.max_rank}")
    window = rf.counts[r_lo - 1 : r_hi]
    return fit_zipf_mle_counts(window, r_lo, r_hi)


def fit_report(fit: PowerLawFit) -> dict:
    """JSON-serializable record of a fit; fit_from_report inverts it."""
    key = "rss" if fit.method == LS_LOGLOG else "log_likelihood"
    return {
        "method": fit.method,
        "exponent": fit.exponent,
        "log_prefactor": fit.log_prefactor,
        "range": [fit.range[0], fit.range[1]],
        "n_points": fit.n_points,
        "diagnostics": {key: fit.diagnostics},
    }


def fit_from_report(report: dict) -> PowerLawFit:
    (diag_value,) = report["diagnostics"].values()
    return PowerLawFit(
        exponent=report["exponent"],
        log_prefactor=report["log_prefactor"],
        range=(report["range"][0], report["range"][1]),
        method=report["method"],
        diagnostics=diag_value,
        n_points=report["n_points"],
    )
