import itertools
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hubbard_ft._jit import HAVE_NUMBA
from hubbard_ft.kernels import lookup_table, popcount, quadratic_block, sector_states
from hubbard_ft.oracle import FockSectors

from conftest import kron_annihilators


def full_space(n_modes):
    states = np.arange(1 << n_modes, dtype=np.int64)
    return states, lookup_table(states, n_modes)


def kron_quadratic(terms, n_modes):
    a = kron_annihilators(n_modes)
    out = np.zeros((1 << n_modes,) * 2, dtype=complex)
    for p, q, c in terms:
        out += c * a[p].T @ a[q]
    return out


term_lists = st.lists(
    st.tuples(st.integers(0, 4), st.integers(0, 4), st.complex_numbers(max_magnitude=2, allow_nan=False)),
    min_size=1,
    max_size=6,
)


def test_popcount():
    x = np.array([0, 1, 3, 255, 2**40 + 1])
    np.testing.assert_array_equal(popcount(x), [0, 1, 2, 8, 2])


def test_sector_states():
    st_ = sector_states(2, 1, 1)
    assert sorted(st_.tolist()) == [0b0011, 0b0110, 0b1001, 0b1100]
    sizes = [sector_states(3, a, b).size for a in range(4) for b in range(4)]
    assert sum(sizes) == 64


def test_canonical_anticommutation(kron_ops):
    a = kron_ops(3)
    I = np.eye(8)
    for p, q in itertools.product(range(3), repeat=2):
        np.testing.assert_array_equal(a[p] @ a[q].T + a[q].T @ a[p], I * (p == q))
        np.testing.assert_array_equal(a[p] @ a[q] + a[q] @ a[p], 0 * I)


@given(terms=term_lists)
@settings(max_examples=40, deadline=None)
def test_full_space_matches_kronecker(terms):
    states, table = full_space(5)
    p, q, c = (np.array(v) for v in zip(*terms))
    for use_numba in (False, True):
        got = quadratic_block(states, table, p, q, c, use_numba=use_numba)
        np.testing.assert_allclose(got, kron_quadratic(terms, 5), atol=1e-12)


@given(terms=term_lists)
@settings(max_examples=20, deadline=None)
def test_backends_agree(terms):
    states = sector_states(3, 1, 2)
    table = lookup_table(states, 6)
    # restrict to spin-conserving hops so the sector is invariant
    terms = [(p, q, c) for p, q, c in terms if p % 2 == q % 2]
    if not terms:
        return
    p, q, c = (np.array(v) for v in zip(*terms))
    a = quadratic_block(states, table, p, q, c, use_numba=False)
    b = quadratic_block(states, table, p, q, c, use_numba=True)
    np.testing.assert_allclose(a, b, atol=1e-14)


def test_sector_blocks_assemble_to_full_matrix():
    sectors = FockSectors(2)
    terms = [(0, 2, 1.0), (2, 0, 1.0), (1, 3, -0.5), (3, 1, -0.5)]
    op = sectors.quadratic(terms)
    np.testing.assert_allclose(op.to_dense(sectors), kron_quadratic(terms, 4), atol=1e-14)


def test_numba_flag_disables_jit():
    code = "from hubbard_ft._jit import HAVE_NUMBA; print(HAVE_NUMBA)"
    env = dict(os.environ, HUBBARD_FT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
def test_numba_available_by_default():
    assert HAVE_NUMBA
