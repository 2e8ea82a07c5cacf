"""Numba-compiled hot kernels.

Same contracts as numpy_backend; the Monte Carlo sampler performs the
identical per-element operations in the identical order, so its outputs
are bit-for-bit equal to the fallback's.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

from .numpy_backend import SMALL_LP, TWO_NEG53

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U11 = np.uint64(11)
_U27 = np.uint64(27)
_U30 = np.uint64(30)
_U31 = np.uint64(31)


@njit(cache=True)
def _mix64(z):
    z = (z ^ (z >> _U30)) * _MIX1
    z = (z ^ (z >> _U27)) * _MIX2
    return z ^ (z >> _U31)


@njit(cache=True)
def _uniform(stream, n):
    # output n of the stream, mapped to [0, 1)
    x = _mix64(stream + (n + np.uint64(1)) * _GOLDEN)
    return np.float64(x >> _U11) * TWO_NEG53


@njit(cache=True)
def _vocab_term(p, l1p, L):
    # stable 1-(1-p)^L; same clamps, in the same order, as the fallback
    if p == 1.0:
        return 1.0
    lp = L * p
    if lp < SMALL_LP:
        return lp
    return -math.expm1(L * l1p)


@njit(cache=True)
def _log_one_minus(values):
    out = np.empty(values.shape[0], dtype=np.float64)
    for i in range(values.shape[0]):
        # the p==1 entry is clamped before l1p is used, any finite stand-in works
        out[i] = math.log1p(-values[i]) if values[i] != 1.0 else 0.0
    return out


@njit(cache=True)
def _vocab_sum_from_log(values, l1p, mults, L):
    total = 0.0
    for i in range(values.shape[0]):
        total += mults[i] * _vocab_term(values[i], l1p[i], L)
    return total


@njit(cache=True)
def expected_vocab_sum(values, mults, L):
    if L == 0.0:
        return 0.0
    return _vocab_sum_from_log(values, _log_one_minus(values), mults, L)


@njit(cache=True, parallel=True)
def expected_vocab_grid(values, mults, Ls):
    l1p = _log_one_minus(values)  # L-independent, so hoisted out of the loop
    out = np.empty(Ls.shape[0], dtype=np.float64)
    for j in prange(Ls.shape[0]):
        if Ls[j] == 0.0:
            out[j] = 0.0
        else:
            out[j] = _vocab_sum_from_log(values, l1p, mults, Ls[j])
    return out


@njit(cache=True, parallel=True)
def zipf_power_sums(log_r, beta):
    h = 0.0
    g = 0.0
    for i in prange(log_r.shape[0]):
        e = math.exp(-beta * log_r[i])
        h += e
        g += log_r[i] * e
    return h, g


@njit(cache=True)
def build_alias(weights):
    K = weights.shape[0]
    q = weights * np.float64(K)
    J = np.arange(K, dtype=np.int64)
    small = np.empty(K, dtype=np.int64)
    large = np.empty(K, dtype=np.int64)
    ns = 0
    nl = 0
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
    while nl > 0:
        nl -= 1
        q[large[nl]] = 1.0
    while ns > 0:
        ns -= 1
        q[small[ns]] = 1.0
    return J, q


@njit(cache=True, parallel=True)
def mc_distinct_counts(alias_j, alias_q, offsets, mults, L, trials, seed):
    out = np.empty(trials, dtype=np.int64)
    G = alias_j.shape[0]
    Gf = np.float64(G)
    for t in prange(trials):
        if L == 0:
            out[t] = 0
        else:
            stream = np.uint64(seed) + np.uint64(t)
            wid = np.empty(L, dtype=np.int64)
            for j in range(L):
                b = np.uint64(3 * j)
                u1 = _uniform(stream, b)
                u2 = _uniform(stream, b + np.uint64(1))
                u3 = _uniform(stream, b + np.uint64(2))
                g = np.int64(u1 * Gf)
                if g > G - 1:
                    g = G - 1
                if u2 >= alias_q[g]:
                    g = alias_j[g]
                mem = np.int64(u3 * mults[g])
                mi = np.int64(mults[g])
                if mem > mi - 1:
                    mem = mi - 1
                wid[j] = offsets[g] + mem
            wid.sort()
            c = 1
            for j in range(1, L):
                if wid[j] != wid[j - 1]:
                    c += 1
            out[t] = c
    return out
