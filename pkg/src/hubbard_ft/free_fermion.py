"""Norms of free-fermion Hamiltonians from their coefficient matrices.

A quadratic Hamiltonian ``sum_ij Q_ij a_i^dag a_j`` is fixed by ``Q``. Its
many-body spectrum is every subset sum of the eigenvalues of ``Q``, and the
commutator of two such Hamiltonians is again quadratic with coefficient
matrix ``[Q, P]``. Those two facts reduce every norm here to a small
Hermitian eigenproblem.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import HoppingCoefficients

HERMITIAN_RTOL = 1e-10
ZERO_MODE_RTOL = 1e-10


class NotHermitianError(ValueError):
    pass


def _as_array(M) -> np.ndarray:
    if isinstance(M, HoppingCoefficients):
        return M.entries
    return np.asarray(M)


def _check_hermitian(M: np.ndarray) -> None:
    scale = max(np.abs(M).max(initial=0.0), 1.0)
    if np.abs(M - M.conj().T).max(initial=0.0) > HERMITIAN_RTOL * scale:
        raise NotHermitianError("matrix is not Hermitian within tolerance")


@dataclass(frozen=True)
class SpectralSummary:
    eigenvalues: np.ndarray
    lambda_min: float
    lambda_max: float
    schatten_1: float
    operator_norm: float


def spectral_summary(M) -> SpectralSummary:
    """Extremal many-body energies of the single-sector Hamiltonian for ``M``.

    ``operator_norm`` is that of ``sum_ij M_ij a_i^dag a_j`` on one spin sector.
    """
    M = _as_array(M)
    _check_hermitian(M)
    ev = np.linalg.eigvalsh(M)
    cut = ZERO_MODE_RTOL * max(np.abs(M).sum(axis=1).max(initial=0.0), 1e-300)
    neg = ev[ev < -cut].sum()
    pos = ev[ev > cut].sum()
    return SpectralSummary(
        eigenvalues=ev,
        lambda_min=float(neg),
        lambda_max=float(pos),
        schatten_1=float(np.abs(ev).sum()),
        operator_norm=float(max(-neg, pos)),
    )


def schatten_1_norm(M) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    M = _as_array(M)
    _check_hermitian(M)
    return float(np.abs(np.linalg.eigvalsh(M)).sum())


def hopping_hamiltonian_norm(R) -> float:
    """Operator norm of the two-spin hopping Hamiltonian, ``||R||_1``.

    With a zero diagonal the spectrum of ``R`` is balanced, so the most
    negative and most positive fillings have equal magnitude; summing both
    spin sectors doubles that and yields the trace norm of ``R``.
    """
    M = _as_array(R)
    if np.abs(np.diag(M)).max(initial=0.0) > 0:
        raise ValueError("hopping matrix must have a zero diagonal")
    return schatten_1_norm(M)


def coefficient_commutator(Q, P) -> np.ndarray:
    Q, P = _as_array(Q), _as_array(P)
    if Q.shape != P.shape:
        raise ValueError(f"dimension mismatch: {Q.shape} vs {P.shape}")
    return Q @ P - P @ Q


def commutator_1norm(Q, P) -> float:
    """``||[H_Q, H_P]||`` for Hermitian ``Q``, ``P``.

    The commutator is anti-Hermitian; ``i [Q, P]`` is Hermitian and traceless,
    so its trace norm is the many-body norm.
    """
    return schatten_1_norm(1j * coefficient_commutator(Q, P))


def nested_commutator_1norm(A, B, C) -> float:
    """``||[[A, B], C]||_1``; Hermitian whenever A, B, C are."""
    return schatten_1_norm(coefficient_commutator(coefficient_commutator(A, B), C))
