import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from purimap import states
from purimap.riemann import INFINITY
from purimap.states import (
    DensityMatrix2Q,
    PureState2Q,
    density_from_state,
    entanglement_entropy,
    purity,
    state_from_zeta,
    trace_distance,
    werner_mix,
)

BELL = np.array([1, 0, 0, 1]) / np.sqrt(2.0)


def binary_entropy(x):
    # independent reference for the entropy of the zeta family
    if x in (0.0, 1.0):
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


finite_complex = st.complex_numbers(
    allow_nan=False, allow_infinity=False, max_magnitude=1e8
)


class TestStateFromZeta:
    def test_zero_gives_00(self):
        psi = state_from_zeta(0.0)
        assert np.allclose(psi.amplitudes, [1, 0, 0, 0])

    def test_one_gives_bell(self):
        psi = state_from_zeta(1.0)
        assert np.allclose(psi.amplitudes, BELL, atol=1e-15)

    def test_infinity_gives_11(self):
        psi = state_from_zeta(INFINITY)
        assert np.allclose(psi.amplitudes, [0, 0, 0, 1])

    def test_norm_over_wide_magnitude_range(self):
        rng = np.random.default_rng(42)
        n = 100_000
        mags = 10.0 ** rng.uniform(-8, 8, size=n)
        angs = rng.uniform(0, 2 * np.pi, size=n)
        worst = 0.0
        for z in mags * np.exp(1j * angs):
            amps = state_from_zeta(z).amplitudes
            worst = max(worst, abs(
                (amps[0].real**2 + amps[0].imag**2)
                + (amps[3].real**2 + amps[3].imag**2) - 1.0))
        assert worst < 1e-12
        amps = state_from_zeta(INFINITY).amplitudes
        assert abs(np.sum(np.abs(amps) ** 2) - 1.0) == 0.0

    def test_extreme_magnitudes_do_not_overflow(self):
        for mag in (1e300, 1e-300):
            psi = state_from_zeta(mag * (0.6 + 0.8j))
            assert abs(np.sum(np.abs(psi.amplitudes) ** 2) - 1.0) < 1e-12

    @given(finite_complex)
    @settings(max_examples=200, deadline=None)
    def test_entropy_symmetric_under_inversion(self, z):
        if abs(z) < 1e-9:
            return
        a = entanglement_entropy(state_from_zeta(z))
        b = entanglement_entropy(state_from_zeta(1.0 / z))
        assert abs(a - b) < 1e-10


class TestDensityFromState:
    def test_00_projector(self):
        rho = density_from_state(state_from_zeta(0.0))
        expect = np.zeros((4, 4))
        expect[0, 0] = 1.0
        assert np.allclose(rho.matrix, expect)

    def test_bell_corners(self):
        rho = density_from_state(state_from_zeta(1.0))
        m = rho.matrix
        for (i, j) in ((0, 0), (0, 3), (3, 0), (3, 3)):
            assert abs(m[i, j] - 0.5) < 1e-15
        assert abs(m[1, 1]) < 1e-15 and abs(m[2, 2]) < 1e-15

    def test_product_state_rank_one(self):
        psi = PureState2Q(np.array([1, 0, 1, 0]) / np.sqrt(2.0))
        rho = density_from_state(psi)
        assert abs(np.trace(rho.matrix).real - 1.0) < 1e-14
        assert abs(purity(rho) - 1.0) < 1e-12


class TestWernerMix:
    def test_pure_limit(self):
        a = werner_mix(0.7 + 0.1j, 1.0).matrix
        b = density_from_state(state_from_zeta(0.7 + 0.1j)).matrix
        assert np.allclose(a, b, atol=1e-15)

    def test_fully_mixed_limit(self):
        assert np.allclose(werner_mix(2.0, 0.0).matrix, np.eye(4) / 4)

    def test_three_quarters_bell(self):
        rho = werner_mix(1.0, 0.75).matrix
        expect = 0.75 * np.outer(BELL, BELL) + 0.0625 * np.eye(4)
        assert np.allclose(rho, expect, atol=1e-15)

    @pytest.mark.parametrize("lam", [-0.1, 1.1, 2.0])
    def test_rejects_bad_weight(self, lam):
        with pytest.raises(ValueError):
            werner_mix(1.0, lam)

    @given(finite_complex, st.floats(0.0, 1.0))
    @settings(max_examples=100, deadline=None)
    def test_eigenvalue_floor(self, z, lam):
        eigs = np.linalg.eigvalsh(werner_mix(z, lam).matrix)
        assert eigs.min() >= (1 - lam) / 4 - 1e-12


class TestEntropy:
    def test_product_state_zero(self):
        assert entanglement_entropy(state_from_zeta(0.0)) == 0.0

    def test_bell_is_one_bit(self):
        assert abs(entanglement_entropy(state_from_zeta(1.0)) - 1.0) < 1e-12

    def test_quarter_weight_value(self):
        # zeta = sqrt(3): reduced populations (1/4, 3/4)
        got = entanglement_entropy(state_from_zeta(np.sqrt(3.0)))
        assert abs(got - binary_entropy(0.25)) < 1e-12
        assert abs(got - 0.8112781244591328) < 1e-12

    @given(finite_complex)
    @settings(max_examples=150, deadline=None)
    def test_matches_binary_entropy_on_family(self, z):
        n_sq = 1.0 / (1.0 + abs(z) ** 2)
        got = entanglement_entropy(state_from_zeta(z))
        assert abs(got - binary_entropy(n_sq)) < 1e-9


class TestPurityAndDistance:
    def test_purity_fully_mixed(self):
        assert abs(purity(DensityMatrix2Q(np.eye(4) / 4)) - 0.25) < 1e-14

    def test_purity_pure(self):
        rho = density_from_state(state_from_zeta(0.3 + 0.4j))
        assert abs(purity(rho) - 1.0) < 1e-12

    def test_purity_werner_value(self):
        # eigenvalues are lam + (1-lam)/4 once and (1-lam)/4 thrice
        lam = 0.75
        expect = (lam + (1 - lam) / 4) ** 2 + 3 * ((1 - lam) / 4) ** 2
        assert abs(expect - 0.671875) < 1e-15
        assert abs(purity(werner_mix(1.0, lam)) - expect) < 1e-14

    def test_distance_identical(self):
        rho = werner_mix(0.5, 0.8)
        assert trace_distance(rho, rho) == 0.0

    def test_distance_orthogonal_pure(self):
        a = density_from_state(state_from_zeta(0.0))
        b = density_from_state(state_from_zeta(INFINITY))
        assert abs(trace_distance(a, b) - 1.0) < 1e-14

    def test_distance_pole_mixture_vs_fully_mixed(self):
        pole_mix = DensityMatrix2Q(np.diag([0.5, 0, 0, 0.5]).astype(complex))
        assert abs(trace_distance(pole_mix, DensityMatrix2Q(np.eye(4) / 4))
                   - 0.5) < 1e-14

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=50, deadline=None)
    def test_triangle_inequality(self, seed):
        rng = np.random.default_rng(seed)
        mats = []
        for _ in range(3):
            g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            m = g @ g.conj().T
            mats.append(DensityMatrix2Q(m / m.trace().real))
        a, b, c = mats
        assert trace_distance(a, c) <= (trace_distance(a, b)
                                        + trace_distance(b, c)) + 1e-10
        for x, y in ((a, b), (b, c), (a, c)):
            assert 0.0 <= trace_distance(x, y) <= 1.0 + 1e-12


class TestValidation:
    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            PureState2Q(np.array([1.0, 1.0, 0, 0]))

    def test_rejects_non_hermitian(self):
        m = np.eye(4, dtype=complex) / 4
        m[0, 1] = 0.1
        with pytest.raises(ValueError):
            DensityMatrix2Q(m)

    def test_rejects_negative_eigenvalue(self):
        m = np.diag([0.7, 0.4, -0.1, 0.0]).astype(complex)
        with pytest.raises(ValueError):
            DensityMatrix2Q(m)
        # but representation plumbing may opt out of the positivity check
        DensityMatrix2Q(m, require_positive=False)

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            PureState2Q(np.array([np.nan, 0, 0, 0]))

    def test_states_are_immutable(self):
        psi = state_from_zeta(0.5)
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 0.0

    def test_reduced_entropy_matches_on_pure(self):
        psi = state_from_zeta(0.7 - 0.2j)
        rho = density_from_state(psi)
        assert abs(states.reduced_entropy(rho)
                   - entanglement_entropy(psi)) < 1e-10
