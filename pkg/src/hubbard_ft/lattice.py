"""Hopping-coefficient matrices for periodic square lattices and small graphs."""
from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np


class UnsupportedLatticeError(ValueError):
    """Raised for lattice sizes the constructions do not cover."""


@dataclass(frozen=True)
class LatticeSpec:
    L: int
    u: float = 4.0
    tau: float = 1.0
    periodic: bool = True

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 1:
            raise UnsupportedLatticeError(f"L must be a positive integer, got {self.L!r}")
        if self.tau <= 0:
            raise ValueError("tau must be positive")
        if self.u < 0:
            raise ValueError("u must be non-negative")
        if not self.periodic:
            raise UnsupportedLatticeError("only periodic boundary conditions are supported")

    @property
    def n_sites(self) -> int:
        return self.L * self.L


@dataclass(frozen=True)
class HoppingCoefficients:
    """Single-spin-sector hopping matrix ``R`` plus the site labelling.

    ``site_index_map`` maps a grid coordinate ``(x, y)`` to its row; it is empty
    for graphs that are not square lattices.
    """

    entries: np.ndarray
    L: int | None = None
    tau: float | None = None
    site_index_map: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        m = np.asarray(self.entries)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("hopping matrix must be square")
        if not np.allclose(m, m.conj().T, atol=1e-12):
            raise ValueError("hopping matrix must be Hermitian")
        if np.any(np.diag(m)):
            raise ValueError("hopping matrix must have a zero diagonal")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges ``(i, j)`` with ``i < j`` and nonzero coefficient."""
        i, j = np.nonzero(np.triu(self.entries, k=1))
        return list(zip(i.tolist(), j.tolist()))

    def to_csv(self) -> str:
        buf = io.StringIO()
        np.savetxt(buf, np.real_if_close(self.entries), delimiter=",", fmt="%.17g")
        return buf.getvalue()


@dataclass(frozen=True)
class PlaquettePartition:
    pink: HoppingCoefficients
    gold: HoppingCoefficients
    pink_plaquettes: tuple
    gold_plaquettes: tuple


def site_index(x: int, y: int, L: int) -> int:
    """Row-major index with periodic wraparound."""
    return (y % L) * L + (x % L)


def build_square_lattice(spec: LatticeSpec) -> HoppingCoefficients:
    L = spec.L
    if L < 4:
        # L = 2 wraps both neighbours onto the same site
        raise UnsupportedLatticeError(f"periodic square lattice needs L >= 4, got L={L}")
    n = L * L
    R = np.zeros((n, n))
    for y in range(L):
        for x in range(L):
            i = site_index(x, y, L)
            for j in (site_index(x + 1, y, L), site_index(x, y + 1, L)):
                R[i, j] = R[j, i] = spec.tau
    index_map = {(x, y): site_index(x, y, L) for y in range(L) for x in range(L)}
    return HoppingCoefficients(R, L=L, tau=spec.tau, site_index_map=index_map)


def _plaquette_cycle(x: int, y: int, L: int) -> tuple[int, int, int, int]:
    return (
        site_index(x, y, L),
        site_index(x + 1, y, L),
        site_index(x + 1, y + 1, L),
        site_index(x, y + 1, L),
    )


def plaquette_partition(R: HoppingCoefficients) -> PlaquettePartition:
    """Split the lattice edges into pink and gold plaquettes.

    Pink plaquettes have their lower-left corner at (even, even), gold at
    (odd, odd). Every edge lands in exactly one plaquette.
    """
    L = R.L
    if L is None or L < 4:
        raise UnsupportedLatticeError("plaquette partition needs a square lattice with L >= 4")
    if L % 2:
        raise UnsupportedLatticeError(f"plaquette partition needs even L, got L={L}")
    n = L * L
    mats = {0: np.zeros((n, n), dtype=R.entries.dtype), 1: np.zeros((n, n), dtype=R.entries.dtype)}
    cycles = {0: [], 1: []}
    for colour in (0, 1):
        for y in range(colour, L, 2):
            for x in range(colour, L, 2):
                cyc = _plaquette_cycle(x, y, L)
                cycles[colour].append(cyc)
                for k in range(4):
                    a, b = cyc[k], cyc[(k + 1) % 4]
                    mats[colour][a, b] = R.entries[a, b]
                    mats[colour][b, a] = R.entries[b, a]
    pink = HoppingCoefficients(mats[0], L=L, tau=R.tau, site_index_map=R.site_index_map)
    gold = HoppingCoefficients(mats[1], L=L, tau=R.tau, site_index_map=R.site_index_map)
    return PlaquettePartition(pink, gold, tuple(cycles[0]), tuple(cycles[1]))


def star_matrix(R: HoppingCoefficients, site: int) -> HoppingCoefficients:
    """Coefficients of every hopping term touching ``site``.

    Row and column ``site`` are copied from ``R``; everything else is zero.
    Summed over all sites this gives ``2 R`` since each edge has two endpoints.
    """
    if not 0 <= site < R.dim:
        raise IndexError(f"site {site} out of range for {R.dim} sites")
    S = np.zeros_like(R.entries)
    S[site, :] = R.entries[site, :]
    S[:, site] = R.entries[:, site]
    return HoppingCoefficients(S, L=R.L, tau=R.tau, site_index_map=R.site_index_map)


def plaquette_subblock(tau: float = 1.0) -> np.ndarray:
    """Hopping matrix of one 4-site ring, corners labelled in cyclic order."""
    ring = np.array([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]], dtype=float)
    return tau * ring


def graph_coefficients(n_sites: int, edges, tau: float = 1.0) -> HoppingCoefficients:
    """Hopping matrix for an arbitrary small graph with uniform amplitude."""
    R = np.zeros((n_sites, n_sites))
    for i, j in edges:
        if i == j:
            raise ValueError("self-loops are not hopping terms")
        R[i, j] = R[j, i] = tau
    return HoppingCoefficients(R, tau=tau)


def chain(n_sites: int, tau: float = 1.0) -> HoppingCoefficients:
    return graph_coefficients(n_sites, [(i, i + 1) for i in range(n_sites - 1)], tau)


def ring(n_sites: int, tau: float = 1.0) -> HoppingCoefficients:
    return graph_coefficients(n_sites, [(i, (i + 1) % n_sites) for i in range(n_sites)], tau)


def open_grid(rows: int, cols: int, tau: float = 1.0) -> HoppingCoefficients:
    """Open-boundary ``rows x cols`` grid, sites numbered row-major."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                edges.append((i, i + 1))
            if r + 1 < rows:
                edges.append((i, i + cols))
    return graph_coefficients(rows * cols, edges, tau)
