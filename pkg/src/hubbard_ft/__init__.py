"""Trotter error bounds and fault-tolerant resource estimates for the 2D Hubbard model."""
from .free_fermion import commutator_1norm, hopping_hamiltonian_norm, nested_commutator_1norm, schatten_1_norm
from .gate_costs import GateCost, apply_hwp, hwp_config, plaq_step_cost, so_ffft_plus_step_cost
from .lattice import (
    HoppingCoefficients,
    LatticeSpec,
    PlaquettePartition,
    UnsupportedLatticeError,
    build_square_lattice,
    plaquette_partition,
    star_matrix,
)
from .pe_estimator import ResourceEstimate, estimate, optimize_split, total_t_count
from .trotter_bounds import TrotterBound, TrotterScheme, w_plaq, w_so, w_so1, w_so2

__version__ = "0.1.0"
