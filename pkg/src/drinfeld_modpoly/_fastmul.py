"""Compiled sparse multiplication kernels (numba), used for large products.

Keys are packed int64 exponent codes; the product accumulates into an
open-addressing hash table sized to twice an upper bound on the result.
Importing this module never fails: ``AVAILABLE`` is False without numba.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    if os.environ.get("DRINFELD_MODPOLY_NO_NUMBA"):
        raise ImportError
    from numba import njit

    AVAILABLE = True
except ImportError:  # pragma: no cover
    AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        return wrap

_MIX = np.int64(-7046029254386353131)  # 0x9E3779B97F4A7C15 as signed


@njit(cache=True)
def _mul_prime(ka, ca, kb, cb, p, bits):
    size = 1 << bits
    mask = size - 1
    shift = 64 - bits
    keys = np.empty(size, np.int64)
    vals = np.zeros(size, np.int64)
    used = np.zeros(size, np.bool_)
    for i in range(ka.shape[0]):
        ki = ka[i]
        ci = ca[i]
        for j in range(kb.shape[0]):
            k = ki + kb[j]
            h = ((k * _MIX) >> shift) & mask
            while used[h] and keys[h] != k:
                h = (h + 1) & mask
            if not used[h]:
                used[h] = True
                keys[h] = k
            vals[h] += ci * cb[j]
    n = 0
    for h in range(size):
        if used[h]:
            v = vals[h] % p
            if v != 0:
                keys[n] = keys[h]
                vals[n] = v
                n += 1
    return keys[:n].copy(), vals[:n].copy()


@njit(cache=True)
def _mul_tables(ka, ca, kb, cb, add, mul, bits):
    size = 1 << bits
    mask = size - 1
    shift = 64 - bits
    keys = np.empty(size, np.int64)
    vals = np.zeros(size, np.int64)
    used = np.zeros(size, np.bool_)
    for i in range(ka.shape[0]):
        ki = ka[i]
        ci = ca[i]
        for j in range(kb.shape[0]):
            k = ki + kb[j]
            h = ((k * _MIX) >> shift) & mask
            while used[h] and keys[h] != k:
                h = (h + 1) & mask
            if not used[h]:
                used[h] = True
                keys[h] = k
            vals[h] = add[vals[h], mul[ci, cb[j]]]
    n = 0
    for h in range(size):
        if used[h] and vals[h] != 0:
            keys[n] = keys[h]
            vals[n] = vals[h]
            n += 1
    return keys[:n].copy(), vals[:n].copy()


@njit(cache=True)
def _dot_kernel(ak, av, aoff, bk, bv, boff, p, add, mul, bits):
    # sum over pairs t of A_t * B_t; p > 0 selects integer arithmetic mod p,
    # p == 0 the add/mul tables
    size = 1 << bits
    mask = size - 1
    shift = 64 - bits
    keys = np.empty(size, np.int64)
    vals = np.zeros(size, np.int64)
    used = np.zeros(size, np.bool_)
    for t in range(aoff.shape[0] - 1):
        for i in range(aoff[t], aoff[t + 1]):
            ki = ak[i]
            ci = av[i]
            for j in range(boff[t], boff[t + 1]):
                k = ki + bk[j]
                h = ((k * _MIX) >> shift) & mask
                while used[h] and keys[h] != k:
                    h = (h + 1) & mask
                if not used[h]:
                    used[h] = True
                    keys[h] = k
                if p > 0:
                    vals[h] += ci * bv[j]
                else:
                    vals[h] = add[vals[h], mul[ci, bv[j]]]
    n = 0
    for h in range(size):
        if used[h]:
            v = vals[h] % p if p > 0 else vals[h]
            if v != 0:
                keys[n] = keys[h]
                vals[n] = v
                n += 1
    return keys[:n].copy(), vals[:n].copy()


_table_cache: dict = {}


def _tables(field):
    t = _table_cache.get(field.q)
    if t is None:
        t = (np.array(field._add, dtype=np.int64), np.array(field._mul, dtype=np.int64))
        _table_cache[field.q] = t
    return t


def to_arrays(d: dict) -> tuple[np.ndarray, np.ndarray]:
    return np.fromiter(d.keys(), np.int64, len(d)), np.fromiter(d.values(), np.int64, len(d))


def _bits(bound: int) -> int:
    return max(4, (2 * bound).bit_length())


def sparse_mul(a, b, field, bound: int) -> tuple[np.ndarray, np.ndarray]:
    """Product of two (keys, values) array pairs over F_q; bound >= number of result terms."""
    (ka, ca), (kb, cb) = a, b
    if field.is_prime:
        return _mul_prime(ka, ca, kb, cb, field.p, _bits(bound))
    add, mul = _tables(field)
    return _mul_tables(ka, ca, kb, cb, add, mul, _bits(bound))


_EMPTY_TABLE = np.zeros((1, 1), np.int64)


def sparse_dot(pairs, field, bound: int) -> tuple[np.ndarray, np.ndarray]:
    """sum_t A_t * B_t for a list of ((keys, values), (keys, values)) pairs."""
    ak = np.concatenate([a[0] for a, _ in pairs])
    av = np.concatenate([a[1] for a, _ in pairs])
    bk = np.concatenate([b[0] for _, b in pairs])
    bv = np.concatenate([b[1] for _, b in pairs])
    aoff = np.zeros(len(pairs) + 1, np.int64)
    boff = np.zeros(len(pairs) + 1, np.int64)
    aoff[1:] = np.cumsum([len(a[0]) for a, _ in pairs])
    boff[1:] = np.cumsum([len(b[0]) for _, b in pairs])
    if field.is_prime:
        return _dot_kernel(ak, av, aoff, bk, bv, boff, field.p, _EMPTY_TABLE, _EMPTY_TABLE, _bits(bound))
    add, mul = _tables(field)
    return _dot_kernel(ak, av, aoff, bk, bv, boff, 0, add, mul, _bits(bound))
