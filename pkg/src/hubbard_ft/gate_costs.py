"""Non-Clifford gate counts per Trotter step."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .lattice import UnsupportedLatticeError


@dataclass(frozen=True)
class GateCost:
    n_tof: int = 0
    n_t: int = 0
    n_rot: int = 0

    def __post_init__(self):
        if min(self.n_tof, self.n_t, self.n_rot) < 0:
            raise ValueError("gate counts must be non-negative")

    def __add__(self, other: "GateCost") -> "GateCost":
        return GateCost(self.n_tof + other.n_tof, self.n_t + other.n_t, self.n_rot + other.n_rot)

    def __mul__(self, k: int) -> "GateCost":
        return GateCost(self.n_tof * k, self.n_t * k, self.n_rot * k)

    __rmul__ = __mul__

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_tof, self.n_t, self.n_rot)


@dataclass(frozen=True)
class HwpConfig:
    m: int
    alpha: int
    rotations_after: int


# Per-step (N_TOF, N_T, N_R) of the FFFT split-operator circuits, L = 2^k only.
SO_FFFT_PLUS_COSTS = {4: GateCost(0, 256, 36), 8: GateCost(0, 1664, 164), 16: GateCost(0, 10368, 708)}
SO_FFFT_LEGACY_COSTS = {4: GateCost(0, 256, 68), 8: GateCost(0, 1664, 292), 16: GateCost(0, 10368, 1220)}
# Error constants previously reported for the legacy circuits at u/tau = 4.
SO_FFFT_LEGACY_W = {4: 1.4e3, 8: 5.5e3, 16: 2.2e4}

# T gates per plaquette unitary as tallied in the per-step totals (6 L^2 T per step)
PLAQUETTE_T_COUNT = 4


def _check_even(L: int) -> None:
    if L < 4 or L % 2:
        raise UnsupportedLatticeError(f"plaquette Trotterization needs even L >= 4, got L={L}")


def interaction_layer_cost(L: int) -> GateCost:
    # one Z(x)Z rotation per site after the chemical-potential shift
    return GateCost(0, 0, L * L)


def plaquette_cost() -> GateCost:
    """One 4-site plaquette: an F-gate network plus two equal-angle rotations."""
    return GateCost(0, PLAQUETTE_T_COUNT, 2)


def tile_layer_cost(L: int) -> GateCost:
    # L^2/4 plaquettes of one colour, times two spin sectors
    return plaquette_cost() * (L * L // 2)


def plaq_step_cost(L: int) -> GateCost:
    _check_even(L)
    return interaction_layer_cost(L) + tile_layer_cost(L) * 3


def so_ffft_plus_step_cost(L: int) -> GateCost:
    try:
        return SO_FFFT_PLUS_COSTS[L]
    except KeyError:
        raise UnsupportedLatticeError(f"SO-FFFT+ costs are tabulated only for L in {sorted(SO_FFFT_PLUS_COSTS)}") from None


def so_ffft_legacy_step_cost(L: int) -> GateCost:
    try:
        return SO_FFFT_LEGACY_COSTS[L]
    except KeyError:
        raise UnsupportedLatticeError(f"SO-FFFT costs are tabulated only for L in {sorted(SO_FFFT_LEGACY_COSTS)}") from None


def hamming_weight(m: int) -> int:
    return bin(m).count("1")


def hwp_config(m: int) -> HwpConfig:
    """Cost of Hamming-weight phasing on ``m`` equal-angle rotations.

    Computing the weight costs ``m - w(m)`` Toffolis and as many clean
    ancillas; the weight register has ``floor(log2 m) + 1`` bits, each taking
    one rotation.
    """
    if m < 1:
        raise ValueError("batch size must be >= 1")
    return HwpConfig(m=m, alpha=m - hamming_weight(m), rotations_after=m.bit_length())


def apply_hwp(cost: GateCost, L: int, m: int) -> GateCost:
    """Batch the 4 L^2 equal-angle rotations of a plaquette step in groups of m."""
    half = L * L // 2
    if (L * L) % 2 or half % m:
        raise ValueError(f"batch size m={m} must divide L^2/2={half}")
    cfg = hwp_config(m)
    batches = 4 * L * L // m
    return GateCost(
        n_tof=cost.n_tof + batches * cfg.alpha,
        n_t=cost.n_t,
        n_rot=cost.n_rot - 4 * L * L + batches * cfg.rotations_after,
    )


def toffoli_equivalent(cost: GateCost) -> int:
    """Toffoli count when pairs of T gates are catalysed by one Toffoli state."""
    if cost.n_rot:
        raise ValueError("synthesise rotations into T gates before converting")
    return cost.n_tof + math.ceil(cost.n_t / 2)


def t_equivalent_of_toffoli(n_tof: int) -> int:
    return 4 * n_tof
