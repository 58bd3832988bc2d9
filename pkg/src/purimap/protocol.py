"""The iterated purification step: selection, local unitary, trajectories.

One iteration consumes two identically prepared qubit pairs: pairwise
CNOTs are applied between the kept pair and the sacrificed pair, the
sacrificed pair is measured, and the kept pair survives only when both
measurement outcomes are 0.  On the surviving sub-ensemble this induces

    pure:   c_i      ->  c_i^2 / sqrt(sum_j |c_j|^4)
    mixed:  rho_ik   ->  rho_ik^2 / sum_j rho_jj^2      (entry-wise square)

followed by a local unitary on the kept pair (Hadamard on each qubit by
default).  ``circuit_oracle`` re-derives the mixed-state rule by brute
force on the 16x16 two-pair state and exists as an independent check of
the closed form.

Each accepted step keeps the selected fraction of the surviving half of
the ensemble: success probability p = sum_j rho_jj^2 in [1/4, 1], and
the per-step resource yield is p/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import states
from .states import DensityMatrix2Q, PureState2Q

State = Union[PureState2Q, DensityMatrix2Q]

_UNITARY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class LocalUnitary:
    """A 2x2 unitary applied identically to both qubits (u tensor u)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128).reshape(2, 2).copy()
        residual = float(np.max(np.abs(m.conj().T @ m - np.eye(2))))
        if residual > _UNITARY_TOL:
            raise ValueError(f"matrix is not unitary (residual {residual:g})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def two_qubit(self) -> np.ndarray:
        return np.kron(self.matrix, self.matrix)


HADAMARD = LocalUnitary(np.array([[1, 1], [1, -1]]) / np.sqrt(2.0))


@dataclass(frozen=True)
class StepOutcome:
    """Post-selection state together with the per-step resource data."""

    state: State
    success_probability: float

    @property
    def yield_factor(self) -> float:
        """Fraction of the input ensemble surviving one full step (p/2)."""
        return self.success_probability / 2.0


@dataclass(frozen=True)
class TrajectoryRecord:
    step: int
    state: State
    entropy: float
    purity: float
    success_probability: float
    cumulative_yield: float


@dataclass(frozen=True)
class Trajectory:
    initial: State
    records: tuple


# raw-array steppers; the typed API wraps these ---------------------------

def _select_pure_raw(c: np.ndarray):
    sq = c * c
    p = float(np.sum((sq.real * sq.real + sq.imag * sq.imag)))
    return sq / np.sqrt(p), p


def _select_density_raw(m: np.ndarray):
    sq = m * m
    p = float(np.sum(sq.diagonal().real))
    return sq / p, p


def _step_pure_raw(c: np.ndarray, u4: np.ndarray):
    sel, p = _select_pure_raw(c)
    return u4 @ sel, p


def _step_density_raw(m: np.ndarray, u4: np.ndarray):
    sel, p = _select_density_raw(m)
    out = u4 @ sel @ u4.conj().T
    # the exact map preserves Hermiticity; project out rounding drift
    return (out + out.conj().T) / 2, p


def selection_step_pure(psi: PureState2Q) -> StepOutcome:
    """Amplitude-squaring selection; success probability sum |c_i|^4."""
    out, p = _select_pure_raw(psi.amplitudes)
    return StepOutcome(PureState2Q(out), p)


def selection_step_mixed(rho: DensityMatrix2Q) -> StepOutcome:
    """Entry-wise (Schur) square in the computational basis, normalized."""
    out, p = _select_density_raw(rho.matrix)
    out = (out + out.conj().T) / 2
    return StepOutcome(DensityMatrix2Q(out), p)


def apply_local_unitary(state: State, u: LocalUnitary = HADAMARD) -> State:
    """Apply u tensor u to a pure or mixed state."""
    u4 = u.two_qubit
    if isinstance(state, PureState2Q):
        return PureState2Q(u4 @ state.amplitudes)
    out = u4 @ state.matrix @ u4.conj().T
    return DensityMatrix2Q((out + out.conj().T) / 2)


def protocol_step(state: State, u: LocalUnitary = HADAMARD) -> StepOutcome:
    """One full iteration: selection followed by the local unitary."""
    if isinstance(state, PureState2Q):
        sel = selection_step_pure(state)
    else:
        sel = selection_step_mixed(state)
    return StepOutcome(apply_local_unitary(sel.state, u), sel.success_probability)


def _cnot16(control: int, target: int) -> np.ndarray:
    """CNOT on 4 qubits (bit 0 = most significant), as a 16x16 permutation."""
    m = np.zeros((16, 16))
    for idx in range(16):
        bits = [(idx >> (3 - k)) & 1 for k in range(4)]
        if bits[control]:
            bits[target] ^= 1
        out = sum(b << (3 - k) for k, b in enumerate(bits))
        m[out, idx] = 1.0
    return m


_CNOTS = _cnot16(0, 2) @ _cnot16(1, 3)  # kept pair (bits 0,1) controls


def circuit_oracle(rho: DensityMatrix2Q) -> StepOutcome:
    """Brute-force reference for the mixed selection step.

    Builds rho tensor rho on qubits (A1, A2, B1, B2), applies
    CNOT(A1->B1) and CNOT(A2->B2), projects B1 = B2 = |0> and traces
    out the measured pair.  The pre-normalization trace is the success
    probability.
    """
    big = np.kron(rho.matrix, rho.matrix)
    big = _CNOTS @ big @ _CNOTS.T
    # index = iA*4 + iB; keep the iB = 0 block
    kept = big[0::4, 0::4]
    p = float(kept.trace().real)
    out = kept / p
    out = (out + out.conj().T) / 2
    return StepOutcome(DensityMatrix2Q(out), p)


def _observables(state: State):
    if isinstance(state, PureState2Q):
        return states.entanglement_entropy(state), 1.0
    return states.reduced_entropy(state), states.purity(state)


def run_trajectory(initial: State, u: LocalUnitary = HADAMARD,
                   max_steps: int = 20) -> Trajectory:
    """Deterministic orbit of ``protocol_step`` with per-step metrics.

    Records are indexed 1..max_steps; ``cumulative_yield`` is the product
    of the per-step yield factors and is non-increasing.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    records = []
    state = initial
    cum_yield = 1.0
    for n in range(1, max_steps + 1):
        outcome = protocol_step(state, u)
        state = outcome.state
        cum_yield *= outcome.yield_factor
        entropy, pur = _observables(state)
        records.append(TrajectoryRecord(
            step=n,
            state=state,
            entropy=entropy,
            purity=pur,
            success_probability=outcome.success_probability,
            cumulative_yield=cum_yield,
        ))
    return Trajectory(initial=initial, records=tuple(records))
