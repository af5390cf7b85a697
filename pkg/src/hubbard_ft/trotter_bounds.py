"""Second-order Trotter error constants ``W`` (step error <= W s^3).

Two lemmas hold for any Hubbard-type Hamiltonian with ``H_I = (u/4) sum_i
z_up z_dn``:

* ``||[[H_I, H_h], H_I]|| <= u^2 ||H_h||``
* ``||[[H_I, H_h], H_h]|| <= (u/2) sum_i (||[T_i, H_h]|| + 2 ||T_i||^2)``

with ``T_i`` the hopping terms touching site ``i``. The ``*_general``
functions evaluate the bounds for any coefficient matrix; ``w_so1``,
``w_so2`` and ``w_plaq`` are the periodic square-lattice closed forms.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .free_fermion import commutator_1norm, hopping_hamiltonian_norm, nested_commutator_1norm, schatten_1_norm
from .lattice import (
    HoppingCoefficients,
    LatticeSpec,
    PlaquettePartition,
    UnsupportedLatticeError,
    build_square_lattice,
    plaquette_partition,
    star_matrix,
)

SQRT5 = math.sqrt(5.0)


class TrotterScheme(str, enum.Enum):
    SO1 = "so1"  # hopping outside: e^{iH_h s/2} e^{iH_I s} e^{iH_h s/2}
    SO2 = "so2"  # interaction outside
    PLAQ = "plaq"


@dataclass(frozen=True)
class TrotterBound:
    scheme: TrotterScheme
    W: float
    contributions: dict = field(default_factory=dict)


def lemma1_bound(u: float, R) -> float:
    return u * u * hopping_hamiltonian_norm(R)


def lemma2_bound_general(u: float, R: HoppingCoefficients) -> float:
    total = 0.0
    for i in range(R.dim):
        S = star_matrix(R, i).entries
        total += commutator_1norm(S, R.entries) + 2.0 * schatten_1_norm(S) ** 2
    return 0.5 * u * total


def lemma2_bound_square(spec: LatticeSpec) -> float:
    """Closed form on the periodic lattice, valid for L >= 4."""
    return spec.u * spec.tau**2 * spec.L**2 * (2 * SQRT5 + 16)


def _so_weights(scheme: TrotterScheme) -> tuple[float, float]:
    # (weight on lemma1 term, weight on lemma2 term)
    if scheme is TrotterScheme.SO1:
        return 1 / 12, 1 / 24
    return 1 / 24, 1 / 12


def _require_tdl(spec: LatticeSpec) -> None:
    if spec.L < 4:
        raise UnsupportedLatticeError(f"closed-form bounds need L >= 4, got L={spec.L}")


def _so_bound(scheme: TrotterScheme, l1: float, l2: float) -> TrotterBound:
    w1, w2 = _so_weights(scheme)
    contributions = {"lemma1_term": w1 * l1, "lemma2_term": w2 * l2, "plaquette_extra": 0.0}
    return TrotterBound(scheme, contributions["lemma1_term"] + contributions["lemma2_term"], contributions)


def w_so1(spec: LatticeSpec, R: HoppingCoefficients | None = None) -> TrotterBound:
    _require_tdl(spec)
    R = build_square_lattice(spec) if R is None else R
    return _so_bound(TrotterScheme.SO1, lemma1_bound(spec.u, R), lemma2_bound_square(spec))


def w_so2(spec: LatticeSpec, R: HoppingCoefficients | None = None) -> TrotterBound:
    _require_tdl(spec)
    R = build_square_lattice(spec) if R is None else R
    return _so_bound(TrotterScheme.SO2, lemma1_bound(spec.u, R), lemma2_bound_square(spec))


def w_so(spec: LatticeSpec, R: HoppingCoefficients | None = None) -> TrotterBound:
    """The better of the two split-operator orderings."""
    R = build_square_lattice(spec) if R is None else R
    return min(w_so1(spec, R), w_so2(spec, R), key=lambda b: b.W)


def plaquette_commutator_norm(part: PlaquettePartition) -> float:
    """``||[[R^p, R^g], R^g]||_1``."""
    return nested_commutator_1norm(part.pink.entries, part.gold.entries, part.gold.entries)


def w_plaq(spec: LatticeSpec, part: PlaquettePartition | None = None) -> TrotterBound:
    _require_tdl(spec)
    R = build_square_lattice(spec)
    part = plaquette_partition(R) if part is None else part
    base = w_so2(spec, R)
    # pink/gold symmetry makes both nested commutators equal, so 1/12 + 1/24 = 3/24
    extra = 3 / 24 * plaquette_commutator_norm(part)
    contributions = dict(base.contributions, plaquette_extra=extra)
    return TrotterBound(TrotterScheme.PLAQ, base.W + extra, contributions)


def w_so_general(scheme: TrotterScheme, u: float, R: HoppingCoefficients) -> TrotterBound:
    """Split-operator bound for an arbitrary hopping graph."""
    return _so_bound(TrotterScheme(scheme), lemma1_bound(u, R), lemma2_bound_general(u, R))


def w_plaq_general(u: float, pink: HoppingCoefficients, gold: HoppingCoefficients) -> TrotterBound:
    """Three-term bound for ``H_I | H_pink | H_gold`` on an arbitrary split.

    Both nested hopping commutators are kept, since a toy split need not be
    symmetric between colours.
    """
    R = HoppingCoefficients(pink.entries + gold.entries)
    base = w_so_general(TrotterScheme.SO2, u, R)
    p, g = pink.entries, gold.entries
    extra = nested_commutator_1norm(p, g, g) / 12 + nested_commutator_1norm(p, g, p) / 24
    contributions = dict(base.contributions, plaquette_extra=extra)
    return TrotterBound(TrotterScheme.PLAQ, base.W + extra, contributions)
