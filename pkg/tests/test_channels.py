import math

import numpy as np
import pytest

from realmon.channels import (
    ComposedChannel,
    DephasingChannel,
    IdentityChannel,
    MonitoringChannel,
    Superoperator,
    channels_equal,
    compose,
    dephase,
    monitor,
    product_monitor,
    to_superoperator,
)
from realmon.linalg import DimensionError
from realmon.observables import observable_from_axis, pauli_observable
from realmon.sampling import ginibre_density, random_mu_pair, random_observable
from realmon.states import DensityOperator, PureState, density_from_pure, maximally_mixed, von_neumann_entropy

PLUS = DensityOperator(np.full((2, 2), 0.5, dtype=complex))
ZERO = DensityOperator(np.diag([1.0, 0.0]).astype(complex))
SZ = pauli_observable("z")
SX = pauli_observable("x")


class TestDephase:
    def test_full_decoherence_of_plus(self):
        out = dephase(SZ, PLUS)
        assert np.abs(out.matrix - np.eye(2) / 2).max() == 0.0

    def test_eigenstate_fixed_point(self):
        out = dephase(SZ, ZERO)
        assert np.abs(out.matrix - ZERO.matrix).max() == 0.0

    def test_tilted_state_in_x_basis(self):
        # spectrum (1 +- sin(pi/4)) / 2 after dephasing along x
        psi = PureState([math.cos(math.pi / 8), math.sin(math.pi / 8)])
        out = dephase(SX, density_from_pure(psi))
        probs = sorted(out.eigenvalues())
        expected = [(1 - math.sin(math.pi / 4)) / 2, (1 + math.sin(math.pi / 4)) / 2]
        assert np.abs(np.array(probs) - expected).max() <= 1e-12

    def test_output_commutes_with_projectors_and_preserves_diagonal(self):
        rng = np.random.default_rng(0)
        for d in (2, 3, 4):
            obs = random_observable(d, rng)
            rho = ginibre_density(d, rng)
            out = dephase(obs, rho)
            for p in obs.projectors:
                assert np.abs(out.matrix @ p - p @ out.matrix).max() <= 1e-10
                before = np.trace(p @ rho.matrix).real
                after = np.trace(p @ out.matrix).real
                assert abs(before - after) <= 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            dephase(SZ, maximally_mixed(3))


class TestMonitor:
    def test_zero_intensity_identity(self):
        out = monitor(MonitoringChannel(SZ, 0.0), PLUS)
        assert np.abs(out.matrix - PLUS.matrix).max() == 0.0

    def test_full_intensity_is_dephasing(self):
        out = monitor(MonitoringChannel(SZ, 1.0), PLUS)
        assert np.abs(out.matrix - dephase(SZ, PLUS).matrix).max() == 0.0

    def test_half_intensity_golden(self):
        out = monitor(MonitoringChannel(SZ, 0.5), PLUS)
        expected = np.array([[0.5, 0.25], [0.25, 0.5]])
        assert np.abs(out.matrix - expected).max() <= 1e-15

    def test_intensity_range_enforced(self):
        with pytest.raises(ValueError):
            MonitoringChannel(SZ, 1.5)
        with pytest.raises(ValueError):
            MonitoringChannel(SZ, -0.1)

    def test_monitoring_never_decreases_entropy(self):
        rng = np.random.default_rng(1)
        for d in (2, 3, 4):
            for _ in range(15):
                obs = random_observable(d, rng)
                rho = ginibre_density(d, rng)
                eps = float(rng.random())
                out = monitor(MonitoringChannel(obs, eps), rho)
                assert von_neumann_entropy(out) >= von_neumann_entropy(rho) - 1e-9

    def test_trace_and_hermiticity_preserved(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            d = int(rng.integers(2, 5))
            obs = random_observable(d, rng)
            rho = ginibre_density(d, rng)
            out = monitor(MonitoringChannel(obs, float(rng.random())), rho)
            assert abs(np.trace(out.matrix) - 1.0) <= 1e-10
            assert np.abs(out.matrix - out.matrix.conj().T).max() <= 1e-10


class TestCompose:
    def test_dephasing_idempotent_as_superoperator(self):
        s = to_superoperator(DephasingChannel(SZ)).matrix
        assert np.abs(s @ s - s).max() <= 1e-10

    def test_intensity_combination_rule(self):
        # eps_eff = eps1 + eps2 - eps1*eps2, from expanding the convex blend
        e1, e2 = 0.3, 0.45
        lhs = compose(MonitoringChannel(SZ, e1), MonitoringChannel(SZ, e2))
        rhs = MonitoringChannel(SZ, e1 + e2 - e1 * e2)
        assert channels_equal(lhs, rhs)

    def test_identity_fixed_point_for_mu_chain(self):
        chain = compose(DephasingChannel(SX), MonitoringChannel(SZ, 0.7))
        out = chain.apply_matrix(np.eye(2, dtype=complex) / 2)
        assert np.abs(out - np.eye(2) / 2).max() <= 1e-12

    def test_dimension_mismatch(self):
        obs3 = random_observable(3, np.random.default_rng(3))
        with pytest.raises(DimensionError):
            compose(DephasingChannel(SZ), DephasingChannel(obs3))


class TestSuperoperator:
    def test_identity_channel(self):
        s = to_superoperator(IdentityChannel(2))
        assert np.array_equal(s.matrix, np.eye(4))

    def test_dephasing_golden_diagonal(self):
        s = to_superoperator(DephasingChannel(SZ))
        assert np.abs(s.matrix - np.diag([1.0, 0.0, 0.0, 1.0])).max() <= 1e-15

    def test_monitor_golden_diagonal(self):
        eps = 0.37
        s = to_superoperator(MonitoringChannel(SZ, eps))
        assert np.abs(s.matrix - np.diag([1.0, 1 - eps, 1 - eps, 1.0])).max() <= 1e-15

    def test_superoperator_reproduces_channel_action(self):
        rng = np.random.default_rng(4)
        for d in (2, 3):
            obs = random_observable(d, rng)
            ch = MonitoringChannel(obs, 0.6)
            s = to_superoperator(ch)
            rho = ginibre_density(d, rng)
            assert np.abs(s.apply_matrix(rho.matrix) - ch.apply_matrix(rho.matrix)).max() <= 1e-12

    def test_channels_equal_tolerance(self):
        a = MonitoringChannel(SZ, 0.5)
        b = MonitoringChannel(SZ, 0.5 + 1e-12)
        c = MonitoringChannel(SZ, 0.5 + 1e-6)
        assert channels_equal(a, b)
        assert not channels_equal(a, c)
        assert channels_equal(a, to_superoperator(a))

    def test_trace_preservation_on_basis(self):
        rng = np.random.default_rng(5)
        obs = random_observable(3, rng)
        s = to_superoperator(MonitoringChannel(obs, 0.8))
        d = 3
        for k in range(d):
            for l in range(d):
                unit = np.zeros((d, d), dtype=complex)
                unit[k, l] = 1.0
                out = s.apply_matrix(unit)
                assert abs(np.trace(out) - np.trace(unit)) <= 1e-10


class TestMuBlendIdentity:
    def test_dephased_monitor_equals_blend(self):
        # for unbiased pairs, probing after monitoring blends toward I/d
        rng = np.random.default_rng(6)
        for d in (2, 3):
            for _ in range(10):
                x, xp = random_mu_pair(d, rng)
                rho = ginibre_density(d, rng)
                eps = float(rng.random())
                chained = dephase(xp, monitor(MonitoringChannel(x, eps), rho))
                blend = (1 - eps) * dephase(xp, rho).matrix + eps * np.eye(d) / d
                assert np.abs(chained.matrix - blend).max() <= 1e-10


class TestProductMonitor:
    def test_single_qubit_reduces_to_monitor(self):
        ch = product_monitor([(0.3, 0.4)], 0.6)
        ref = MonitoringChannel(observable_from_axis(0.3, 0.4), 0.6)
        assert channels_equal(ch, ref)

    def test_two_qubit_damping_pattern(self):
        # element (i j),(k l) picks up one factor (1 - eps) per mismatched qubit
        eps = 0.4
        ch = product_monitor([(0.0, 0.0), (0.0, 0.0)], eps)
        s = to_superoperator(ch).matrix
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        row = (i * 2 + j) * 4 + (k * 2 + l)
                        damp = (1 - eps) ** ((i != k) + (j != l))
                        assert abs(s[row, row] - damp) <= 1e-12

    def test_composition_is_commuting(self):
        a = product_monitor([(0.2, 0.0), (1.0, 0.5)], 0.3)
        b = ComposedChannel(
            MonitoringChannel(a.inner.observable, 0.3), MonitoringChannel(a.outer.observable, 0.3)
        )
        assert channels_equal(a, b)


def test_superoperator_is_dataclass_with_dim():
    s = to_superoperator(IdentityChannel(3))
    assert isinstance(s, Superoperator) and s.dim == 3 and s.matrix.shape == (9, 9)
