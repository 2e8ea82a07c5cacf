"""Pure numpy implementations of the hot kernels.

This is the fallback path selected by NGRAMLEX_DISABLE_NUMBA=1 and the
reference the numba backend is checked against. The Monte Carlo draw
sequence is specified exactly (SplitMix64 streams, three uniforms per
token) so both backends return bit-identical sample counts.

SplitMix64: output n of the stream with seed s is
mix64((s + (n+1)*0x9E3779B97F4A7C15) mod 2**64), and a uniform in
[0, 1) is (output >> 11) * 2**-53.
"""
from __future__ import annotations

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
MIX1 = np.uint64(0xBF58476D1CE4E5B9)
MIX2 = np.uint64(0x94D049BB133111EB)
TWO_NEG53 = 2.0 ** -53
SMALL_LP = 1e-12  # below this, 1-(1-p)^L is taken as L*p

_U11 = np.uint64(11)
_U27 = np.uint64(27)
_U30 = np.uint64(30)
_U31 = np.uint64(31)


def mix64(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finaliser over a uint64 array (wrapping arithmetic)."""
    with np.errstate(over="ignore"):
        z = (z ^ (z >> _U30)) * MIX1
        z = (z ^ (z >> _U27)) * MIX2
        return z ^ (z >> _U31)


def _log_one_minus(values: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):  # log1p(-1) is -inf, clamped later
        return np.log1p(-values)


def _vocab_terms(values: np.ndarray, l1p: np.ndarray, L: float) -> np.ndarray:
    # stable 1-(1-p)^L per group; the L*p branch avoids relative error
    # blowup for very rare words, the p==1 branch avoids log1p(-1)
    lp = L * values
    full = -np.expm1(L * l1p)
    terms = np.where(lp < SMALL_LP, lp, full)
    return np.where(values == 1.0, 1.0, terms)


def expected_vocab_sum(values: np.ndarray, mults: np.ndarray, L: float) -> float:
    if L == 0.0:
        return 0.0
    return float(np.sum(mults * _vocab_terms(values, _log_one_minus(values), L)))


def expected_vocab_grid(values: np.ndarray, mults: np.ndarray, Ls: np.ndarray) -> np.ndarray:
    l1p = _log_one_minus(values)  # L-independent, so hoisted out of the loop
    out = np.empty(Ls.shape[0], dtype=np.float64)
    for j in range(Ls.shape[0]):
        L = float(Ls[j])
        if L == 0.0:
            out[j] = 0.0
        else:
            out[j] = float(np.sum(mults * _vocab_terms(values, l1p, L)))
    return out


def zipf_power_sums(log_r: np.ndarray, beta: float) -> tuple[float, float]:
    """Return (sum r^-beta, sum ln(r) * r^-beta) over the given log-ranks."""
    e = np.exp(-beta * log_r)
    return float(e.sum()), float((log_r * e).sum())


def build_alias(weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vose alias table for a weight vector summing to ~1.

    Deterministic: entries are classified in index order and the
    small/large worklists are LIFO, so both backends produce the same
    table for the same input.
    """
    K = weights.shape[0]
    q = weights * np.float64(K)
    J = np.arange(K, dtype=np.int64)
    small = np.empty(K, dtype=np.int64)
    large = np.empty(K, dtype=np.int64)
    ns = nl = 0
    for k in range(K):
        if q[k] < 1.0:
            small[ns] = k
            ns += 1
        else:
            large[nl] = k
            nl += 1
    while ns > 0 and nl > 0:
        ns -= 1
        s = small[ns]
        nl -= 1
        big = large[nl]
        J[s] = big
        q[big] = q[big] - (1.0 - q[s])
        if q[big] < 1.0:
            small[ns] = big
            ns += 1
        else:
            large[nl] = big
            nl += 1
    # leftovers are numerically-full buckets
    while nl > 0:
        nl -= 1
        q[large[nl]] = 1.0
    while ns > 0:
        ns -= 1
        q[small[ns]] = 1.0
    return J, q


def mc_distinct_counts(
    alias_j: np.ndarray,
    alias_q: np.ndarray,
    offsets: np.ndarray,
    mults: np.ndarray,
    L: int,
    trials: int,
    seed: int,
) -> np.ndarray:
    """Distinct-word counts of `trials` independent texts of length L.

    Trial t samples from the SplitMix64 stream seeded (seed+t) mod 2**64;
    token j consumes stream outputs 3j (alias bucket), 3j+1 (accept) and
    3j+2 (member within the multiplicity group).
    """
    out = np.empty(trials, dtype=np.int64)
    if L == 0:
        out[:] = 0
        return out
    G = alias_j.shape[0]
    Gf = np.float64(G)
    mults_i = mults.astype(np.int64)
    # per-token counter offsets within a stream: outputs 1..3L
    base = np.arange(1, 3 * L + 1, dtype=np.uint64) * GOLDEN
    # chunk so the uniform matrix stays modest
    rows = max(1, min(trials, int(6_000_000 // (3 * L)) or 1))
    done = 0
    while done < trials:
        nb = min(rows, trials - done)
        with np.errstate(over="ignore"):
            streams = np.uint64(seed) + np.arange(done, done + nb, dtype=np.uint64)
            ctr = streams[:, None] + base[None, :]
        u = (mix64(ctr) >> _U11).astype(np.float64) * TWO_NEG53
        u = u.reshape(nb, L, 3)
        g = (u[:, :, 0] * Gf).astype(np.int64)
        np.minimum(g, G - 1, out=g)
        g = np.where(u[:, :, 1] < alias_q[g], g, alias_j[g])
        mem = (u[:, :, 2] * mults[g]).astype(np.int64)
        np.minimum(mem, mults_i[g] - 1, out=mem)
        wid = offsets[g] + mem
        wid.sort(axis=1)
        if L == 1:
            out[done:done + nb] = 1
        else:
            out[done:done + nb] = 1 + (np.diff(wid, axis=1) != 0).sum(axis=1)
        done += nb
    return out
