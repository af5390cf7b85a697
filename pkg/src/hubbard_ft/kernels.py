"""Bit-level kernels for fermionic operators in the occupation-number basis.

Basis states are integers whose bit ``p`` is the occupation of mode ``p``.
Under Jordan-Wigner, ``a_p = Z_0 ... Z_{p-1} sigma^-_p``, so moving a fermion
picks up the parity of the occupied modes below it.

Each hot kernel has a numba version and a numpy version with the same
signature. ``quadratic_block`` dispatches to numba unless it was disabled via
``HUBBARD_FT_DISABLE_NUMBA``.
"""
from __future__ import annotations

import numpy as np

from ._jit import HAVE_NUMBA, njit


def popcount(x: np.ndarray) -> np.ndarray:
    """Vectorised bit count for non-negative int64 arrays."""
    x = np.asarray(x, dtype=np.int64).copy()
    count = np.zeros_like(x)
    while np.any(x):
        count += x & 1
        x >>= 1
    return count


def sector_states(n_sites: int, n_up: int, n_dn: int) -> np.ndarray:
    """States with ``n_up`` even-bit and ``n_dn`` odd-bit occupations.

    Spins are interleaved: site ``i`` spin-up is mode ``2i``, spin-down ``2i+1``.
    """
    n_modes = 2 * n_sites
    states = np.arange(1 << n_modes, dtype=np.int64)
    up_mask = sum(1 << (2 * i) for i in range(n_sites))
    dn_mask = up_mask << 1
    keep = (popcount(states & up_mask) == n_up) & (popcount(states & dn_mask) == n_dn)
    return states[keep]


def lookup_table(states: np.ndarray, n_modes: int) -> np.ndarray:
    table = np.full(1 << n_modes, -1, dtype=np.int64)
    table[states] = np.arange(states.size, dtype=np.int64)
    return table


@njit(cache=True)
def _bitcount(x):
    c = 0
    while x:
        c += x & 1
        x >>= 1
    return c


@njit(cache=True)
def _quadratic_block_numba(states, table, creators, annihilators, coeffs):
    dim = states.size
    out = np.zeros((dim, dim), dtype=np.complex128)
    for k in range(dim):
        s = states[k]
        for t in range(creators.size):
            p = creators[t]
            q = annihilators[t]
            if not (s >> q) & 1:
                continue
            s1 = s ^ (1 << q)
            if (s1 >> p) & 1:
                continue
            parity = _bitcount(s & ((1 << q) - 1)) + _bitcount(s1 & ((1 << p) - 1))
            new = s1 | (1 << p)
            row = table[new]
            if parity & 1:
                out[row, k] -= coeffs[t]
            else:
                out[row, k] += coeffs[t]
    return out


def _quadratic_block_numpy(states, table, creators, annihilators, coeffs):
    dim = states.size
    out = np.zeros((dim, dim), dtype=np.complex128)
    cols = np.arange(dim)
    for p, q, c in zip(creators, annihilators, coeffs):
        occ_q = ((states >> q) & 1).astype(bool)
        s1 = states ^ (np.int64(1) << q)
        ok = occ_q & ~((s1 >> p) & 1).astype(bool)
        if not ok.any():
            continue
        s, s1 = states[ok], s1[ok]
        parity = popcount(s & ((1 << int(q)) - 1)) + popcount(s1 & ((1 << int(p)) - 1))
        rows = table[s1 | (np.int64(1) << p)]
        np.add.at(out, (rows, cols[ok]), np.where(parity & 1, -c, c))
    return out


def quadratic_block(states, table, creators, annihilators, coeffs, *, use_numba: bool | None = None):
    """Matrix of ``sum_t coeffs[t] a^dag_{creators[t]} a_{annihilators[t]}``.

    The operator must map the sector spanned by ``states`` into itself; it is
    returned as a dense ``len(states)`` square complex matrix.
    """
    creators = np.ascontiguousarray(creators, dtype=np.int64)
    annihilators = np.ascontiguousarray(annihilators, dtype=np.int64)
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    if use_numba is None:
        use_numba = HAVE_NUMBA
    if use_numba and HAVE_NUMBA:
        return _quadratic_block_numba(states, table, creators, annihilators, coeffs)
    return _quadratic_block_numpy(states, table, creators, annihilators, coeffs)
