import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hubbard_ft.free_fermion import hopping_hamiltonian_norm
from hubbard_ft.lattice import (
    HoppingCoefficients,
    LatticeSpec,
    UnsupportedLatticeError,
    build_square_lattice,
    chain,
    graph_coefficients,
    open_grid,
    plaquette_partition,
    plaquette_subblock,
    ring,
    site_index,
    star_matrix,
)

even_L = st.integers(2, 10).map(lambda k: 2 * k)


def edge_set(M):
    return {(i, j) for i, j in zip(*np.nonzero(np.triu(M)))}


class TestLatticeSpec:
    def test_defaults(self):
        s = LatticeSpec(8)
        assert (s.u, s.tau, s.periodic, s.n_sites) == (4.0, 1.0, True, 64)

    @pytest.mark.parametrize("kw", [dict(L=0), dict(L=4, u=-1.0), dict(L=4, tau=0.0)])
    def test_rejects_bad_parameters(self, kw):
        with pytest.raises(ValueError):
            LatticeSpec(**kw)


class TestSquareLattice:
    def test_l4_shape_and_degree(self):
        R = build_square_lattice(LatticeSpec(4))
        assert R.entries.shape == (16, 16)
        assert np.all(R.entries.sum(axis=1) == 4)

    def test_l4_trace_norm(self):
        assert hopping_hamiltonian_norm(build_square_lattice(LatticeSpec(4))) == pytest.approx(24, abs=1e-10)

    def test_tau_scaling(self):
        R = build_square_lattice(LatticeSpec(8, tau=2.0))
        assert hopping_hamiltonian_norm(R) == pytest.approx(2 * 101.25483399593905, rel=1e-12)
        assert round(hopping_hamiltonian_norm(R), -2) == 200

    @pytest.mark.parametrize("L", [1, 2, 3])
    def test_rejects_small_lattices(self, L):
        with pytest.raises(UnsupportedLatticeError):
            build_square_lattice(LatticeSpec(L))

    @given(L=st.integers(4, 14))
    @settings(max_examples=15, deadline=None)
    def test_symmetric_zero_diagonal_balanced_spectrum(self, L):
        R = build_square_lattice(LatticeSpec(L)).entries
        assert np.array_equal(R, R.T)
        assert not np.diag(R).any()
        assert np.all(np.count_nonzero(R, axis=1) == 4)
        ev = np.sort(np.linalg.eigvalsh(R))
        if L % 2 == 0:  # bipartite
            np.testing.assert_allclose(ev, -ev[::-1], atol=1e-10)

    def test_site_index_row_major(self):
        assert site_index(1, 0, 4) == 1
        assert site_index(0, 1, 4) == 4
        assert sorted(site_index(x, y, 5) for x in range(5) for y in range(5)) == list(range(25))

    def test_site_index_map_roundtrip(self):
        R = build_square_lattice(LatticeSpec(4))
        for (x, y), i in R.site_index_map.items():
            assert i == site_index(x, y, 4)

    def test_entries_read_only(self):
        R = build_square_lattice(LatticeSpec(4))
        with pytest.raises(ValueError):
            R.entries[0, 1] = 5

    def test_csv_dump(self):
        text = build_square_lattice(LatticeSpec(4)).to_csv()
        rows = text.strip().splitlines()
        assert len(rows) == 16 and len(rows[0].split(",")) == 16


class TestHoppingCoefficients:
    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            HoppingCoefficients(np.array([[0.0, 1.0], [2.0, 0.0]]))

    def test_rejects_diagonal(self):
        with pytest.raises(ValueError):
            HoppingCoefficients(np.array([[1.0, 1.0], [1.0, 0.0]]))

    def test_small_graphs(self):
        assert chain(3).edges() == [(0, 1), (1, 2)]
        assert len(ring(4).edges()) == 4
        assert len(open_grid(2, 3).edges()) == 7
        assert graph_coefficients(3, [(0, 2)], 0.5).entries[2, 0] == 0.5


class TestPlaquettePartition:
    def test_l4_counts(self):
        part = plaquette_partition(build_square_lattice(LatticeSpec(4)))
        assert len(part.pink_plaquettes) == len(part.gold_plaquettes) == 4
        assert len(edge_set(part.pink.entries)) == len(edge_set(part.gold.entries)) == 16

    @given(L=even_L)
    @settings(max_examples=10, deadline=None)
    def test_partition_invariants(self, L):
        R = build_square_lattice(LatticeSpec(L))
        part = plaquette_partition(R)
        np.testing.assert_array_equal(part.pink.entries + part.gold.entries, R.entries)
        assert len(part.pink_plaquettes) == len(part.gold_plaquettes) == L * L // 4
        edges = []
        for cyc in part.pink_plaquettes + part.gold_plaquettes:
            assert len(set(cyc)) == 4
            edges += [tuple(sorted((cyc[k], cyc[(k + 1) % 4]))) for k in range(4)]
        assert len(edges) == len(set(edges)) == 2 * L * L
        assert set(edges) == edge_set(R.entries)

    def test_anchor_convention(self):
        part = plaquette_partition(build_square_lattice(LatticeSpec(6)))
        assert part.pink_plaquettes[0][0] == site_index(0, 0, 6)
        assert part.gold_plaquettes[0][0] == site_index(1, 1, 6)

    @pytest.mark.parametrize("L", [5, 7])
    def test_odd_rejected(self, L):
        with pytest.raises(UnsupportedLatticeError):
            plaquette_partition(build_square_lattice(LatticeSpec(L)))

    def test_same_colour_plaquettes_disjoint(self):
        part = plaquette_partition(build_square_lattice(LatticeSpec(8)))
        for plaqs in (part.pink_plaquettes, part.gold_plaquettes):
            sites = [s for p in plaqs for s in p]
            assert len(sites) == len(set(sites)) == 64


class TestStarMatrix:
    def test_chain_star_is_whole_graph(self):
        R = chain(2, 1.0)
        np.testing.assert_array_equal(star_matrix(R, 0).entries, R.entries)

    def test_tdl_star_norm(self):
        from hubbard_ft.free_fermion import schatten_1_norm

        R = build_square_lattice(LatticeSpec(6, tau=1.5))
        assert schatten_1_norm(star_matrix(R, 7).entries) == pytest.approx(4 * 1.5)

    @given(L=st.integers(4, 9), site=st.integers(0, 80))
    @settings(max_examples=20, deadline=None)
    def test_support_and_sum(self, L, site):
        R = build_square_lattice(LatticeSpec(L))
        site %= L * L
        S = star_matrix(R, site).entries
        mask = np.ones_like(S, dtype=bool)
        mask[site, :] = mask[:, site] = False
        assert not S[mask].any()
        total = sum(star_matrix(R, i).entries for i in range(L * L))
        # every edge is counted once from each endpoint
        np.testing.assert_array_equal(total, 2 * R.entries)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            star_matrix(chain(2), 2)


class TestPlaquetteSubblock:
    @pytest.mark.parametrize("tau, expected", [(1.0, [-2, 0, 0, 2]), (0.5, [-1, 0, 0, 1])])
    def test_eigenvalues(self, tau, expected):
        np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(plaquette_subblock(tau))), expected, atol=1e-12)

    def test_trace_norm(self):
        assert np.abs(np.linalg.eigvalsh(plaquette_subblock(1.0))).sum() == pytest.approx(4)
