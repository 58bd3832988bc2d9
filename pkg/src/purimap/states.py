"""Two-qubit state representations and the metrics used throughout.

Basis order is fixed as |00>, |01>, |10>, |11> everywhere in this
package.  States are immutable: the wrapped numpy arrays are marked
read-only, and every operation returns a fresh object.

The one-parameter family ``state_from_zeta`` spans the states
N(z) * (|00> + z|11>) with N(z) = (1 + |z|^2)^(-1/2); the parameter
lives on the Riemann sphere and z = infinity means |11>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .riemann import RiemannPoint, as_riemann

BASIS_LABELS = ("00", "01", "10", "11")

_NORM_TOL = 1e-12
_HERM_TOL = 1e-12
_TRACE_TOL = 1e-12
_EIG_TOL = 1e-10


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PureState2Q:
    """Normalized pure state of two qubits (four complex amplitudes)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(4).copy()
        if not np.all(np.isfinite(amps.view(np.float64))):
            raise ValueError("amplitudes must be finite")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > 1e-9:
            raise ValueError(f"state not normalized: |psi|^2 = {norm_sq}")
        if abs(norm_sq - 1.0) > _NORM_TOL:
            amps = amps / np.sqrt(norm_sq)
        object.__setattr__(self, "amplitudes", _readonly(amps))

    def amplitude(self, label: str) -> complex:
        return complex(self.amplitudes[BASIS_LABELS.index(label)])


@dataclass(frozen=True, eq=False)
class DensityMatrix2Q:
    """4x4 density matrix: Hermitian, unit trace, positive semidefinite.

    ``require_positive=False`` skips the eigenvalue check; it is used by
    representation round-trips that may produce unphysical matrices on
    purpose (the caller validates when physicality matters).
    """

    matrix: np.ndarray
    require_positive: bool = True

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128).reshape(4, 4).copy()
        if not np.all(np.isfinite(m.view(np.float64))):
            raise ValueError("matrix entries must be finite")
        herm_dev = float(np.max(np.abs(m - m.conj().T)))
        if herm_dev > _HERM_TOL:
            raise ValueError(f"matrix not Hermitian (deviation {herm_dev:g})")
        m = (m + m.conj().T) / 2
        tr = float(m.trace().real)
        if abs(tr - 1.0) > _TRACE_TOL:
            raise ValueError(f"trace must be 1, got {tr!r}")
        if self.require_positive:
            lo = float(np.linalg.eigvalsh(m)[0])
            if lo < -_EIG_TOL:
                raise ValueError(f"matrix not positive semidefinite (min eig {lo:g})")
        object.__setattr__(self, "matrix", _readonly(m))


def state_from_zeta(zeta) -> PureState2Q:
    """State of the |00> + zeta |11> family, normalized.

    Accepts a RiemannPoint or anything complex() accepts; the point at
    infinity gives |11>.  Stable against overflow for huge |zeta|.
    """
    pt = as_riemann(zeta)
    if pt.is_infinite:
        return PureState2Q(np.array([0, 0, 0, 1], dtype=np.complex128))
    z = pt.value
    amps = np.zeros(4, dtype=np.complex128)
    mag = abs(z)
    if mag <= 1.0:
        norm = np.sqrt(1.0 + mag * mag)
        amps[0] = 1.0 / norm
        amps[3] = z / norm
    else:
        # work with 1/z so that |zeta| up to float max cannot overflow
        u = 1.0 / z
        norm = np.sqrt(1.0 + abs(u) ** 2)
        phase = z / mag
        amps[0] = abs(u) / norm
        amps[3] = phase / norm
    return PureState2Q(amps)


def density_from_state(psi: PureState2Q) -> DensityMatrix2Q:
    """Rank-one projector |psi><psi|."""
    c = psi.amplitudes
    return DensityMatrix2Q(np.outer(c, c.conj()))


def werner_mix(zeta, lam: float) -> DensityMatrix2Q:
    """Isotropic-noise mixture lam * |Psi(zeta)><Psi(zeta)| + (1-lam)/4 * Id."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"mixing weight must be in [0, 1], got {lam!r}")
    proj = density_from_state(state_from_zeta(zeta)).matrix
    return DensityMatrix2Q(lam * proj + (1.0 - lam) / 4.0 * np.eye(4))


def _reduced_single_qubit(matrix: np.ndarray) -> np.ndarray:
    """Partial trace over the second qubit (index i = 2a + b)."""
    r = matrix.reshape(2, 2, 2, 2)
    return np.einsum("abcb->ac", r)


def _entropy_bits(eigs: np.ndarray) -> float:
    # 0 * log 0 := 0 (continuous extension); clip rounding noise
    p = np.clip(eigs.real, 0.0, 1.0)
    p = p[p > 0.0]
    return float(-np.sum(p * np.log2(p)))


def entanglement_entropy(psi: PureState2Q) -> float:
    """Entanglement of a pure two-qubit state, in bits.

    Von Neumann entropy (base 2) of the reduced single-qubit state; 0
    for product states, 1 for maximally entangled states.
    """
    rho_a = _reduced_single_qubit(
        np.outer(psi.amplitudes, psi.amplitudes.conj())
    )
    return _entropy_bits(np.linalg.eigvalsh(rho_a))


def reduced_entropy(rho: DensityMatrix2Q) -> float:
    """Base-2 entropy of the reduced single-qubit state of a density matrix.

    Coincides with ``entanglement_entropy`` on pure states; for mixed
    states it is reported as a trajectory observable only, not as an
    entanglement measure.
    """
    return _entropy_bits(np.linalg.eigvalsh(_reduced_single_qubit(rho.matrix)))


def purity(rho: DensityMatrix2Q) -> float:
    """Tr(rho^2), in [1/4, 1] for two qubits."""
    m = rho.matrix
    return float(np.trace(m @ m).real)


def trace_distance(a: DensityMatrix2Q, b: DensityMatrix2Q) -> float:
    """(1/2) * sum of |eigenvalues| of (a - b); in [0, 1]."""
    return trace_distance_matrices(a.matrix, b.matrix)


def trace_distance_matrices(a: np.ndarray, b: np.ndarray) -> float:
    """Trace distance of two Hermitian matrices given as raw arrays."""
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(a - b))))
