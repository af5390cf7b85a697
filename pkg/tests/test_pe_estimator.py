import json
import math
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hubbard_ft.gate_costs import GateCost
from hubbard_ft.lattice import LatticeSpec, UnsupportedLatticeError
from hubbard_ft.pe_estimator import (
    N_PE_PREFACTOR,
    PE_CONSTANT,
    X_GRID,
    ResourceEstimate,
    ValidityWarning,
    admissible_batches,
    epsilon_target,
    estimate,
    optimize_split,
    sweep_ancilla,
    synthesis_t_count,
    total_t_count,
)
from hubbard_ft.reference_data import RESOURCE_TABLE

pytestmark = pytest.mark.filterwarnings("ignore::hubbard_ft.pe_estimator.ValidityWarning")


def within(got, ref, rtol=0.15):
    return abs(got - ref) <= rtol * ref


class TestEpsilonAndSynthesis:
    @pytest.mark.parametrize("L, eps", [(8, 0.3264), (16, 1.3056), (10, 0.51)])
    def test_epsilon(self, L, eps):
        assert epsilon_target(L) == pytest.approx(eps)

    def test_epsilon_rejects_small(self):
        with pytest.raises(UnsupportedLatticeError):
            epsilon_target(2)

    def test_synthesis_example(self):
        assert synthesis_t_count(48, 3.264e-3, 0.0143) == pytest.approx(32.2, abs=0.05)

    def test_synthesis_trivial_arguments(self):
        assert synthesis_t_count(2**20, 1.0, 1.0) == pytest.approx(32.2)
        assert synthesis_t_count(1, 1.0, 1.0) == pytest.approx(9.2)

    def test_synthesis_bad_argument(self):
        with pytest.raises(ValueError):
            synthesis_t_count(0, 1.0, 1.0)

    def test_prefactor(self):
        assert N_PE_PREFACTOR == pytest.approx(6.203, abs=5e-4)


budgets = dict(
    W=st.floats(10, 1e5),
    n_t=st.integers(0, 10_000),
    n_rot=st.integers(1, 5_000),
    eps=st.floats(0.05, 10),
    x=st.floats(1e-3, 0.5),
)


class TestTotalTCount:
    @given(**budgets)
    @settings(max_examples=60, deadline=None)
    def test_optimum_relations(self, W, n_t, n_rot, eps, x):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ValidityWarning)
            e = total_t_count(W, GateCost(0, n_t, n_rot), eps, x)
        delta = (1 - x) * eps
        assert e.delta_ts / delta == pytest.approx(1 / 3, rel=1e-9)
        assert e.delta_pe / delta == pytest.approx(2 / 3, rel=1e-9)
        assert e.n_pe_exact * e.t * e.delta_pe == pytest.approx(PE_CONSTANT, rel=1e-9)
        assert W * e.t**2 == pytest.approx(e.delta_ts, rel=1e-9)
        assert e.delta_ts + e.delta_pe + e.delta_ht == pytest.approx(eps, rel=1e-9)
        assert e.n_pe == math.ceil(N_PE_PREFACTOR * math.sqrt(W) / delta**1.5)
        # stationary point of W t^2 + c/(N t) at fixed N
        assert e.t**3 == pytest.approx(PE_CONSTANT / (2 * W * e.n_pe_exact), rel=1e-9)
        assert e.validity == pytest.approx(W * e.t**3)

    def test_total_formula(self):
        e = total_t_count(500.0, GateCost(7, 384, 48), 0.3264, 0.01)
        assert e.total_t == math.ceil(e.n_pe * (48 * e.n_ht + 384))
        assert e.total_tof == 7 * e.n_pe
        assert e.total_toffoli_equivalent == e.total_tof + math.ceil(e.total_t / 2)
        assert e.n_ht == pytest.approx(synthesis_t_count(48, 0.01 * 0.3264, e.t))

    def test_sqrt_w_scaling(self):
        a = total_t_count(100.0, GateCost(0, 10, 10), 1.0, 0.1)
        b = total_t_count(400.0, GateCost(0, 10, 10), 1.0, 0.1)
        assert b.n_pe_exact == pytest.approx(2 * a.n_pe_exact)
        assert abs(b.n_pe - 2 * a.n_pe) <= 1

    @pytest.mark.parametrize("kw", [dict(W=0.0), dict(x=0.0), dict(x=1.0)])
    def test_bad_inputs(self, kw):
        args = dict(W=10.0, per_step=GateCost(0, 1, 1), epsilon=1.0, x=0.1) | kw
        with pytest.raises(ValueError):
            total_t_count(**args)

    def test_validity_warning(self):
        with pytest.warns(ValidityWarning):
            e = total_t_count(0.01, GateCost(0, 1, 1), 10.0, 0.01)
        assert e.validity > 0.1 and e.warnings

    def test_no_rotations(self):
        e = total_t_count(100.0, GateCost(0, 10, 0), 1.0, 0.1)
        assert e.n_ht == 0 and e.total_t == e.n_pe * 10


class TestOptimizeSplit:
    def test_grid(self):
        assert len(X_GRID) == 50
        assert X_GRID[0] == pytest.approx(1e-3) and X_GRID[-1] == pytest.approx(0.2)

    def test_l8_optimum_near_one_percent(self):
        e = estimate(LatticeSpec(8, u=4.0))
        assert 0.005 <= e.x <= 0.05

    def test_no_rotations_takes_smallest_x(self):
        e = optimize_split(100.0, GateCost(0, 10, 0), 1.0)
        assert e.x == X_GRID[0]

    @given(W=st.floats(10, 1e4), n_rot=st.integers(1, 1000))
    @settings(max_examples=20, deadline=None)
    def test_dominates_fixed_split(self, W, n_rot):
        cost = GateCost(0, 100, n_rot)
        assert optimize_split(W, cost, 1.0).total_t <= total_t_count(W, cost, 1.0, 0.5).total_t


class TestEstimate:
    @pytest.mark.parametrize("u, L", sorted(RESOURCE_TABLE))
    def test_qubit_count(self, u, L):
        assert estimate(LatticeSpec(L, u=float(u))).n_q == RESOURCE_TABLE[(u, L)][0] == 2 * L * L + L * L // 2 + 2

    def test_l8_defaults(self):
        e = estimate(LatticeSpec(8, u=4.0))
        assert (e.hwp_m, e.ancilla_qubits, e.alpha) == (32, 32, 31)
        assert e.per_step == GateCost(248, 384, 48)

    @pytest.mark.parametrize(
        "u, L, field, ref",
        [
            (4, 8, "total_t", 1.5e6),
            (4, 8, "total_tof", 1.8e5),
            (4, 16, "total_tof", 1.9e5),
            (4, 16, "total_t", 8.8e5),
            (8, 8, "total_t", 3.8e6),
            (8, 12, "total_tof", 4.6e5),
        ],
    )
    def test_published_totals(self, u, L, field, ref):
        got = getattr(estimate(LatticeSpec(L, u=float(u))), field)
        assert within(got, ref), f"{field}={got:.3g} vs {ref:.2g} ({(got - ref) / ref:+.0%})"

    def test_catalysis_qubit(self):
        spec = LatticeSpec(8)
        assert estimate(spec, catalysis_qubit=True).n_q == estimate(spec).n_q + 1

    def test_hwp_reduces_totals(self):
        spec = LatticeSpec(8)
        a, b = estimate(spec, hwp_m=1), estimate(spec, hwp_m=32)
        assert a.total_toffoli_equivalent > b.total_toffoli_equivalent
        assert a.total_t > b.total_t

    def test_split_operator_schemes(self):
        spec = LatticeSpec(8)
        plus = estimate(spec, "so-ffft-plus")
        assert plus.hwp_m == 1 and plus.n_q == 2 * 64 + 2
        with pytest.raises(ValueError):
            estimate(spec, "so-ffft-plus", hwp_m=4)
        with pytest.raises(UnsupportedLatticeError):
            estimate(LatticeSpec(8, u=8.0), "so-ffft")
        with pytest.raises(ValueError):
            estimate(spec, "nope")

    def test_plaq_beats_split_operator_with_full_ancilla(self):
        spec = LatticeSpec(8)
        plaq = estimate(spec).total_toffoli_equivalent
        assert plaq < estimate(spec, "so-ffft-plus").total_toffoli_equivalent
        assert plaq < estimate(spec, "so-ffft").total_toffoli_equivalent

    @pytest.mark.parametrize("L", range(8, 33, 2))
    def test_under_a_million_toffolis(self, L):
        assert estimate(LatticeSpec(L, u=4.0)).total_toffoli_equivalent < 1_000_000

    def test_dict_roundtrip(self):
        e = estimate(LatticeSpec(10, u=8.0))
        assert ResourceEstimate.from_dict(json.loads(json.dumps(e.to_dict()))) == e

    def test_budget_view(self):
        b = estimate(LatticeSpec(8)).budget
        assert b.delta_ts + b.delta_pe + b.delta_ht == pytest.approx(b.epsilon)


class TestSweep:
    def test_admissible(self):
        assert admissible_batches(8, 0) == [1]
        assert admissible_batches(8, 31) == [1, 2, 4, 8, 16, 32]
        assert admissible_batches(10, 8) == [1, 2, 5, 10]

    def test_alpha_zero_split_operator_wins(self):
        spec = LatticeSpec(8)
        [(a, m, plaq)] = sweep_ancilla(spec, "plaq", [0])
        [(_, _, so)] = sweep_ancilla(spec, "so-ffft-plus", [0])
        assert m == 1 and plaq > so

    @pytest.mark.parametrize("L", [8, 10, 12])
    def test_monotone_and_best_batch(self, L):
        spec = LatticeSpec(L)
        alphas = list(range(0, L * L // 2 + 1, max(1, L // 4)))
        rows = sweep_ancilla(spec, "plaq", alphas)
        tofs = [r[2] for r in rows]
        assert all(a >= b for a, b in zip(tofs, tofs[1:]))
        for alpha, m, tof in rows:
            options = {k: estimate(spec, hwp_m=k).total_toffoli_equivalent for k in admissible_batches(L, alpha)}
            assert tof == min(options.values()) == options[m]

    def test_batch_of_two_saves_nothing(self):
        # two rotations become a 2-bit register: no fewer rotations, one extra Toffoli
        spec = LatticeSpec(8)
        assert estimate(spec, hwp_m=2).total_toffoli_equivalent > estimate(spec, hwp_m=1).total_toffoli_equivalent
        assert sweep_ancilla(spec, "plaq", [2])[0][1] == 1

    def test_single_point_matches_estimate(self):
        spec = LatticeSpec(8)
        [(_, m, tof)] = sweep_ancilla(spec, "plaq", [32])
        assert m == 32 and tof == estimate(spec).total_toffoli_equivalent
