import numpy as np
import pytest

from purimap import _kernels_py, kernels
from purimap.basin import default_mixed_cycle

compiled = kernels.available_backends().get("compiled")
needs_compiled = pytest.mark.skipif(
    compiled is None, reason="compiled kernel not built")


def grid_points(n, extent=2.0):
    re = -extent + (np.arange(n) + 0.5) * (2 * extent / n)
    im = extent - (np.arange(n) + 0.5) * (2 * extent / n)
    return np.tile(re, n), np.repeat(im, n)


@pytest.mark.parametrize("backend", kernels.available_backends().values(),
                         ids=kernels.available_backends().keys())
class TestEachBackend:
    def test_eigvals_match_lapack(self, backend):
        rng = np.random.default_rng(8)
        for _ in range(300):
            g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            m = (g + g.conj().T) / 2
            got = backend.hermitian_eigvals4(m)
            ref = np.linalg.eigvalsh(m)
            assert np.max(np.abs(got - ref)) < 1e-12

    def test_eigvals_degenerate_inputs(self, backend):
        cases = [
            np.zeros((4, 4), dtype=complex),
            np.eye(4, dtype=complex),
            np.diag([1.0, 1.0, 2.0, 2.0]).astype(complex),
            np.diag([1.0, 1.0, 1.0, -3.0]).astype(complex),
        ]
        bell = np.zeros((4, 4), dtype=complex)
        for i, j in ((0, 0), (0, 3), (3, 0), (3, 3)):
            bell[i, j] = 0.5
        cases.append(bell)  # rank one, triple zero eigenvalue
        for m in cases:
            got = backend.hermitian_eigvals4(m)
            assert np.max(np.abs(got - np.linalg.eigvalsh(m))) < 1e-13

    def test_pure_examples(self, backend):
        zr = np.array([1.0, 0.3, 2.0, 0.0])
        zi = np.zeros(4)
        labels, steps = backend.classify_pure(zr, zi, 200, 1e-4)
        assert labels.tolist() == [kernels.LABEL_BELL,
                                   kernels.LABEL_SEPARABLE,
                                   kernels.LABEL_SEPARABLE,
                                   kernels.LABEL_SEPARABLE]
        assert steps[0] == 0  # the entangled fixed point itself
        assert steps[3] == 0  # parameter 0 starts on the cycle

    def test_mixed_at_zero_weight_unresolved(self, backend):
        labels, steps = backend.classify_mixed(
            np.array([0.5]), np.array([0.0]), 0.0, 50, 1e-4,
            default_mixed_cycle())
        assert labels[0] == kernels.LABEL_UNRESOLVED
        assert steps[0] == 50

    def test_mixed_finds_all_three_attractors(self, backend):
        zr, zi = grid_points(24)
        labels, _ = backend.classify_mixed(zr, zi, 0.75, 400, 1e-4,
                                           default_mixed_cycle())
        present = set(labels.tolist())
        assert kernels.LABEL_BELL in present
        assert kernels.LABEL_SEPARABLE in present
        assert kernels.LABEL_MIXED in present


@needs_compiled
class TestBackendAgreement:
    def test_pure_grids_identical(self):
        zr, zi = grid_points(64)
        ref = _kernels_py.classify_pure(zr, zi, 200, 1e-4)
        got = compiled.classify_pure(zr, zi, 200, 1e-4)
        assert np.array_equal(ref[0], got[0])
        assert np.array_equal(ref[1], got[1])

    def test_mixed_grids_identical(self):
        zr, zi = grid_points(48)
        mc = default_mixed_cycle()
        ref = _kernels_py.classify_mixed(zr, zi, 0.75, 400, 1e-4, mc)
        got = compiled.classify_mixed(zr, zi, 0.75, 400, 1e-4, mc)
        assert np.array_equal(ref[0], got[0])
        assert np.array_equal(ref[1], got[1])

    def test_mixed_heavy_noise_identical(self):
        zr, zi = grid_points(32)
        mc = default_mixed_cycle()
        ref = _kernels_py.classify_mixed(zr, zi, 0.5, 400, 1e-4, mc)
        got = compiled.classify_mixed(zr, zi, 0.5, 400, 1e-4, mc)
        assert np.array_equal(ref[0], got[0])
        assert np.array_equal(ref[1], got[1])

    def test_active_backend_is_compiled_by_default(self):
        import os
        if os.environ.get("PURIMAP_PURE_PYTHON"):
            pytest.skip("fallback forced via environment")
        assert kernels.backend_name() == "compiled"
