"""Phase-estimation cost model: error budget, Trotter time step, totals.

The energy error has three parts: Trotter error ``W t^2``, phase-estimation
error ``0.76 pi / (N_PE t)`` and rotation-synthesis error ``Delta_HT``. For
a fixed budget ``delta`` on the first two, the optimum puts a third of it in
the Trotter error, so ``t^2 = delta / (3 W)`` and
``N_PE = (3^{3/2} 0.76 pi / 2) W^{1/2} / delta^{3/2}``.
"""
from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .gate_costs import (
    SO_FFFT_LEGACY_W,
    GateCost,
    apply_hwp,
    hwp_config,
    plaq_step_cost,
    so_ffft_legacy_step_cost,
    so_ffft_plus_step_cost,
)
from .lattice import LatticeSpec, UnsupportedLatticeError
from .trotter_bounds import w_plaq, w_so

PE_CONSTANT = 0.76 * math.pi
N_PE_PREFACTOR = 3**1.5 * PE_CONSTANT / 2  # ~6.203
EPSILON_PER_SITE = 0.0051
VALIDITY_THRESHOLD = 0.1
X_GRID = np.logspace(-3, math.log10(0.2), 50)

SCHEMES = ("plaq", "so-ffft-plus", "so-ffft")


class ValidityWarning(UserWarning):
    """W t^3 is not small; the Trotter error model may not hold."""


@dataclass(frozen=True)
class ErrorBudget:
    epsilon: float
    x: float
    delta_ts: float
    delta_pe: float
    delta_ht: float

    @property
    def delta(self) -> float:
        return self.delta_ts + self.delta_pe


@dataclass(frozen=True)
class ResourceEstimate:
    W: float
    epsilon: float
    x: float
    t: float
    n_pe: int
    n_pe_exact: float
    per_step: GateCost
    n_ht: float
    delta_ts: float
    delta_pe: float
    delta_ht: float
    total_t: int
    total_tof: int
    total_toffoli_equivalent: int
    validity: float
    scheme: str = ""
    L: int = 0
    u: float = 0.0
    tau: float = 1.0
    hwp_m: int = 1
    alpha: int = 0
    ancilla_qubits: int = 0
    n_q: int = 0
    warnings: tuple = field(default_factory=tuple)

    @property
    def budget(self) -> ErrorBudget:
        return ErrorBudget(self.epsilon, self.x, self.delta_ts, self.delta_pe, self.delta_ht)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["per_step"] = list(self.per_step.as_tuple())
        d["warnings"] = list(self.warnings)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ResourceEstimate":
        d = dict(d)
        d["per_step"] = GateCost(*d["per_step"])
        d["warnings"] = tuple(d.get("warnings", ()))
        return cls(**d)


def epsilon_target(L: int) -> float:
    """Additive energy error of about half a percent of the total energy, tau = 1."""
    if L < 4:
        raise UnsupportedLatticeError("L must be >= 4")
    return EPSILON_PER_SITE * L * L


def synthesis_t_count(n_rot_per_step: float, delta_ht: float, t: float) -> float:
    """T gates per synthesised rotation for total synthesis error ``delta_ht``."""
    arg = n_rot_per_step / (delta_ht * t)
    if not arg > 0:
        raise ValueError("synthesis log argument must be positive")
    return 1.15 * math.log2(arg) + 9.2


def total_t_count(W: float, per_step: GateCost, epsilon: float, x: float) -> ResourceEstimate:
    """Totals at a fixed synthesis fraction ``x`` of the error budget."""
    if W <= 0:
        raise ValueError("W must be positive")
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    delta = (1 - x) * epsilon
    delta_ht = x * epsilon
    t = math.sqrt(delta / (3 * W))
    n_pe_exact = N_PE_PREFACTOR * math.sqrt(W) / delta**1.5
    n_pe = math.ceil(n_pe_exact)
    n_ht = synthesis_t_count(per_step.n_rot, delta_ht, t) if per_step.n_rot else 0.0
    total_t = math.ceil(n_pe * (per_step.n_rot * n_ht + per_step.n_t))
    total_tof = n_pe * per_step.n_tof
    validity = W * t**3
    notes = ()
    if validity > VALIDITY_THRESHOLD:
        msg = f"W t^3 = {validity:.3g} exceeds {VALIDITY_THRESHOLD}"
        warnings.warn(msg, ValidityWarning, stacklevel=2)
        notes = (msg,)
    return ResourceEstimate(
        W=W,
        epsilon=epsilon,
        x=x,
        t=t,
        n_pe=n_pe,
        n_pe_exact=n_pe_exact,
        per_step=per_step,
        n_ht=n_ht,
        delta_ts=W * t * t,
        delta_pe=PE_CONSTANT / (n_pe_exact * t),
        delta_ht=delta_ht,
        total_t=total_t,
        total_tof=total_tof,
        total_toffoli_equivalent=total_tof + math.ceil(total_t / 2),
        validity=validity,
        warnings=notes,
    )


def optimize_split(W: float, per_step: GateCost, epsilon: float, grid=X_GRID) -> ResourceEstimate:
    """Minimise the total T count over the synthesis fraction ``x``."""
    best = None
    for x in grid:
        est = total_t_count(W, per_step, epsilon, float(x))
        if best is None or est.total_t < best.total_t:
            best = est
    return best


def scheme_bound_and_cost(spec: LatticeSpec, scheme: str) -> tuple[float, GateCost]:
    if scheme == "plaq":
        return w_plaq(spec).W, plaq_step_cost(spec.L)
    if scheme == "so-ffft-plus":
        cost = so_ffft_plus_step_cost(spec.L)
        return w_so(spec).W, cost
    if scheme == "so-ffft":
        cost = so_ffft_legacy_step_cost(spec.L)
        if spec.u != 4 * spec.tau:
            raise UnsupportedLatticeError("legacy SO-FFFT error constants exist only for u/tau = 4")
        return SO_FFFT_LEGACY_W[spec.L] * spec.tau**3, cost
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")


def hwp_ancilla_qubits(m: int) -> int:
    """Logical qubits reserved for a Hamming-weight batch of size ``m``.

    A batch of ``L^2/2`` is budgeted ``L^2/2`` qubits; ``m = 1`` needs none.
    """
    return 0 if m <= 1 else m


def estimate(
    spec: LatticeSpec,
    scheme: str = "plaq",
    hwp_m: int | None = None,
    *,
    epsilon: float | None = None,
    catalysis_qubit: bool = False,
    W: float | None = None,
) -> ResourceEstimate:
    """Full phase-estimation budget for one lattice and scheme.

    ``hwp_m`` defaults to ``L^2/2`` for PLAQ. The split-operator schemes have
    rotation angles that depend on the hopping spectrum and are left unbatched.
    """
    bound, per_step = scheme_bound_and_cost(spec, scheme)
    W = bound if W is None else W
    if scheme == "plaq":
        m = spec.L * spec.L // 2 if hwp_m is None else int(hwp_m)
        per_step = apply_hwp(per_step, spec.L, m)
    else:
        if hwp_m not in (None, 1):
            raise ValueError("Hamming-weight phasing is only modelled for PLAQ")
        m = 1
    eps = epsilon_target(spec.L) * spec.tau if epsilon is None else epsilon
    est = optimize_split(W, per_step, eps)
    ancilla = hwp_ancilla_qubits(m)
    n_q = 2 * spec.L**2 + ancilla + 2 + int(catalysis_qubit)
    return dataclasses.replace(
        est,
        scheme=scheme,
        L=spec.L,
        u=spec.u,
        tau=spec.tau,
        hwp_m=m,
        alpha=hwp_config(m).alpha,
        ancilla_qubits=ancilla,
        n_q=n_q,
    )


def admissible_batches(L: int, alpha_budget: int) -> list[int]:
    """Divisors ``m`` of ``L^2/2`` whose weight computation fits in ``alpha_budget`` ancillas."""
    half = L * L // 2
    return [m for m in range(1, half + 1) if half % m == 0 and hwp_config(m).alpha <= alpha_budget]


def sweep_ancilla(spec: LatticeSpec, scheme: str, alpha_list) -> list[tuple[int, int, int]]:
    """``(alpha, chosen m, Toffoli-equivalent)`` for each ancilla budget.

    For PLAQ the batch is the admissible ``m`` with the lowest total, so more
    ancillas can never hurt. Split-operator schemes ignore the budget.
    """
    rows = []
    cache: dict[int, int] = {}
    for alpha in alpha_list:
        if scheme != "plaq":
            m = 1
            if m not in cache:
                cache[m] = estimate(spec, scheme).total_toffoli_equivalent
            rows.append((int(alpha), m, cache[m]))
            continue
        best_m, best = 1, None
        for m in admissible_batches(spec.L, int(alpha)):
            if m not in cache:
                cache[m] = estimate(spec, scheme, m).total_toffoli_equivalent
            if best is None or cache[m] <= best:
                best_m, best = m, cache[m]
        rows.append((int(alpha), best_m, best))
    return rows
