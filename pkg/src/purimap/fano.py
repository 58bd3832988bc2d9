"""Pauli-product (Fano) coordinates and stability of the mixed dynamics.

A two-qubit density matrix is expanded over the 16 products of Pauli
matrices (identity included): r_mn = Tr[rho (sigma_m tensor sigma_n)],
giving 16 real coordinates with r_00 = 1 fixed by normalization.  The
protocol step expressed on these coordinates is used for numerical
stability analysis: Jacobians of one full cycle period are taken by
central finite differences in the 15 free coordinates, and a cycle is
called stable when every Jacobian eigenvalue magnitude is below 1.

Perturbed coordinate vectors may leave the physical (positive) set;
the step formula extends rationally and is applied as-is, since the
Jacobian is a local linearization of the algebraic map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import protocol, states
from .states import DensityMatrix2Q, trace_distance_matrices

_PAULIS = (
    np.eye(2, dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

#: products sigma_m tensor sigma_n, flat index 4*m + n
BASIS = np.array([np.kron(a, b) for a in _PAULIS for b in _PAULIS])
BASIS.setflags(write=False)

AXIS_LABELS = ("i", "x", "y", "z")
COORD_LABELS = tuple(f"{a}{b}" for a in AXIS_LABELS for b in AXIS_LABELS)

_R00_TOL = 1e-9


def to_fano(rho) -> np.ndarray:
    """16 real expansion coefficients of a density matrix (r_00 first)."""
    m = rho.matrix if isinstance(rho, DensityMatrix2Q) else np.asarray(rho)
    return np.real(np.einsum("kij,ji->k", BASIS, m))


def from_fano(coeffs) -> np.ndarray:
    """Inverse of ``to_fano``; returns the raw 4x4 Hermitian matrix.

    The result is Hermitian with unit trace by construction but may have
    negative eigenvalues; validate with DensityMatrix2Q when a physical
    state is required.
    """
    v = np.asarray(coeffs, dtype=np.float64).reshape(16)
    if abs(v[0] - 1.0) > _R00_TOL:
        raise ValueError(f"normalization coefficient must be 1, got {v[0]!r}")
    return 0.25 * np.einsum("k,kij->ij", v, BASIS)


def step_fano(coeffs, u: protocol.LocalUnitary = protocol.HADAMARD) -> np.ndarray:
    """One protocol step expressed on the 16 Pauli coordinates."""
    m = from_fano(coeffs)
    out, _ = protocol._step_density_raw(m, u.two_qubit)
    return to_fano(out)


def _step_fano_period(coeffs: np.ndarray, period: int, u4: np.ndarray) -> np.ndarray:
    m = from_fano(coeffs)
    for _ in range(period):
        m, _ = protocol._step_density_raw(m, u4)
    return to_fano(m)


def jacobian_cycle(points, h: float = 1e-6,
                   u: protocol.LocalUnitary = protocol.HADAMARD) -> np.ndarray:
    """Central-difference Jacobian of one full period around a cycle.

    ``points`` is the cycle as Fano vectors (or DensityMatrix2Q); the
    Jacobian of the ``len(points)``-fold composed step is evaluated at
    ``points[0]`` in the 15 free coordinates.
    """
    if not 1e-8 <= h <= 1e-4:
        raise ValueError("step size must be in [1e-8, 1e-4]")
    vecs = [to_fano(p) if isinstance(p, DensityMatrix2Q) else
            np.asarray(p, dtype=np.float64).reshape(16) for p in points]
    period = len(vecs)
    if period < 1:
        raise ValueError("need at least one cycle point")
    mats = [from_fano(v) for v in vecs]
    for k, m in enumerate(mats):
        nxt, _ = protocol._step_density_raw(m, u.two_qubit)
        if trace_distance_matrices(nxt, mats[(k + 1) % period]) > 1e-9:
            raise ValueError("points do not form a cycle of the step map")
    u4 = u.two_qubit
    base = vecs[0]
    jac = np.empty((15, 15))
    for i in range(15):
        vp = base.copy()
        vm = base.copy()
        vp[i + 1] += h
        vm[i + 1] -= h
        fp = _step_fano_period(vp, period, u4)
        fm = _step_fano_period(vm, period, u4)
        jac[:, i] = (fp[1:] - fm[1:]) / (2.0 * h)
    return jac


@dataclass(frozen=True)
class StabilityReport:
    """A cycle of the mixed dynamics with its linear stability data."""

    cycle: tuple            # DensityMatrix2Q members, in orbit order
    period: int
    eigenvalue_magnitudes: tuple  # 15 values, descending
    stable: bool

    @property
    def max_magnitude(self) -> float:
        return self.eigenvalue_magnitudes[0]


@dataclass(frozen=True)
class CycleSearchResult:
    cycles: tuple           # StabilityReport, deterministic order
    unresolved_seeds: tuple  # (zeta, lam) pairs that never settled


_STABLE_MARGIN = 1e-9


def _report_for_cycle(mats, h: float = 1e-6) -> StabilityReport:
    jac = jacobian_cycle([to_fano(m) for m in mats], h)
    mags = np.sort(np.abs(np.linalg.eigvals(jac)))[::-1]
    return StabilityReport(
        cycle=tuple(DensityMatrix2Q(m, require_positive=False) for m in mats),
        period=len(mats),
        eigenvalue_magnitudes=tuple(float(x) for x in mags),
        stable=bool(np.all(mags < 1.0 - _STABLE_MARGIN)),
    )


def mixed_cycle_seed() -> np.ndarray:
    """The equal mixture of |00><00| and |11><11| (a known cycle member)."""
    return np.diag([0.5, 0.0, 0.0, 0.5]).astype(np.complex128)


def mixed_cycle_reference_partner() -> np.ndarray:
    """Coherence-free reference form of the partner state.

    Quarter-weight mixture of |00><00|, |11><11| and the symmetric
    exchange projector (|01>+|10>)(<01|+<10|).  The partner reached by
    direct iteration agrees with this matrix on the diagonal and on the
    (|01>,|10>) block but additionally carries a (|00>,|11>) coherence
    of 1/4; see ``mixed_cycle_diagnostics``.
    """
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 0] = m[3, 3] = 0.25
    m[1, 1] = m[1, 2] = m[2, 1] = m[2, 2] = 0.25
    return m


def stable_mixed_cycle(u: protocol.LocalUnitary = protocol.HADAMARD):
    """The stable period-2 mixed cycle, polished to machine precision.

    Starts from the equal pole mixture and iterates the two-step map to
    closure; returns the two members as raw matrices in orbit order.
    """
    u4 = u.two_qubit
    m = mixed_cycle_seed()
    for _ in range(64):
        nxt = m
        for _ in range(2):
            nxt, _ = protocol._step_density_raw(nxt, u4)
        if trace_distance_matrices(nxt, m) < 1e-14:
            m = nxt
            break
        m = nxt
    partner, _ = protocol._step_density_raw(m, u4)
    return m, partner


def mixed_cycle_diagnostics() -> dict:
    """How the computed partner state relates to the coherence-free form."""
    _, partner = stable_mixed_cycle()
    ref = mixed_cycle_reference_partner()
    return {
        "trace_distance_to_reference": trace_distance_matrices(partner, ref),
        "diagonal_max_dev": float(np.max(np.abs(
            partner.diagonal().real - ref.diagonal().real))),
        "exchange_block_max_dev": float(np.max(np.abs(
            partner[1:3, 1:3] - ref[1:3, 1:3]))),
        "corner_coherence": abs(complex(partner[0, 3])),
    }


def fully_mixed_report(h: float = 1e-6) -> StabilityReport:
    """Stability data of the maximally mixed fixed point Id/4.

    Its one-step Jacobian is nilpotent (diagonal perturbations double but
    are rotated into off-diagonal coordinates, which the entry-wise
    square kills at first order), so every eigenvalue magnitude is ~0;
    the point is in fact attracting under the full nonlinear map.
    """
    iden = np.eye(4, dtype=np.complex128) / 4.0
    return _report_for_cycle([iden], h)


_DEFAULT_LAMBDAS = (0.5, 0.65, 0.75, 0.9, 1.0)


def _default_seeds(seed_count: int):
    """Deterministic (zeta, lam) seed grid over the noisy-to-pure range.

    Mixing weights below ~0.3 are excluded on purpose: that regime is
    attracted by the maximally mixed state (see ``fully_mixed_report``)
    and contributes no information about the advertised cycles.
    """
    per_lam = max(1, -(-seed_count // len(_DEFAULT_LAMBDAS)))
    rho = 1.32471795724474602596
    alphas = np.array([1.0 / rho, 1.0 / rho**2])
    idx = np.arange(1, per_lam + 1)[:, None]
    grid = (0.5 + idx * alphas[None, :]) % 1.0
    zetas = (4.0 * grid[:, 0] - 2.0) + 1j * (4.0 * grid[:, 1] - 2.0)
    seeds = []
    for lam in _DEFAULT_LAMBDAS:
        for z in zetas:
            seeds.append((complex(z), float(lam)))
    return seeds[: max(seed_count, len(_DEFAULT_LAMBDAS))]


def _detect_period(history, max_period: int, tol: float):
    """Smallest lag with trace-distance match sustained for 10 steps."""
    needed = 10
    if len(history) < max_period + needed:
        return None
    for p in range(1, max_period + 1):
        ok = True
        for j in range(needed):
            a = history[-1 - j]
            b = history[-1 - j - p]
            if trace_distance_matrices(a, b) > tol:
                ok = False
                break
        if ok:
            return p
    return None


def _polish_cycle(m: np.ndarray, period: int, u4: np.ndarray) -> list:
    cur = m
    for _ in range(60):
        nxt = cur
        for _ in range(period):
            nxt, _ = protocol._step_density_raw(nxt, u4)
        if trace_distance_matrices(nxt, cur) < 1e-13:
            cur = nxt
            break
        cur = nxt
    pts = [cur]
    for _ in range(period - 1):
        nxt, _ = protocol._step_density_raw(pts[-1], u4)
        pts.append(nxt)
    return pts


def _reduce_period(pts: list) -> list:
    n = len(pts)
    for q in range(1, n):
        if n % q:
            continue
        if all(trace_distance_matrices(pts[k], pts[k % q]) < 1e-9
               for k in range(n)):
            return pts[:q]
    return pts


def _match_cycles(a: list, b: list, tol: float = 1e-6) -> bool:
    if len(a) != len(b):
        return False
    return all(
        any(trace_distance_matrices(ma, mb) < tol for mb in b) for ma in a
    )


def _canonical_key(pts: list):
    keys = [tuple(np.round(to_fano(m), 8)) for m in pts]
    return min(keys)


def find_mixed_cycles(seed_count: int = 60, max_period: int = 4,
                      tol: float = 1e-9, max_steps: int = 800,
                      u: protocol.LocalUnitary = protocol.HADAMARD,
                      seeds=None) -> CycleSearchResult:
    """Sweep isotropic-noise seeds and report every attracting cycle found.

    Each seed state lam*|Psi(zeta)><Psi(zeta)| + (1-lam)/4*Id is iterated
    until its tail is periodic (trace-distance matching <= tol sustained
    over a 10-step window), the cycle is polished to closure and
    classified through the finite-difference Jacobian.  Cycles are
    deduplicated across seeds and returned in a deterministic order;
    seeds that never settle are reported separately.
    """
    if seed_count < 1 or max_period < 1 or tol <= 0:
        raise ValueError("seed_count, max_period must be >= 1 and tol > 0")
    u4 = u.two_qubit
    if seeds is None:
        seeds = _default_seeds(seed_count)
    found: list[list] = []
    unresolved = []
    for zeta, lam in seeds:
        m = states.werner_mix(zeta, lam).matrix.copy()
        history = [m]
        period = None
        for _ in range(max_steps):
            m, _ = protocol._step_density_raw(m, u4)
            history.append(m)
            if len(history) > 2 * max_period + 12:
                history.pop(0)
            period = _detect_period(history, max_period, tol)
            if period is not None:
                break
        if period is None:
            unresolved.append((zeta, lam))
            continue
        pts = _reduce_period(_polish_cycle(history[-1], period, u4))
        if not any(_match_cycles(pts, kept) for kept in found):
            found.append(pts)
    found.sort(key=lambda pts: (len(pts), _canonical_key(pts)))
    reports = tuple(_report_for_cycle(pts) for pts in found)
    return CycleSearchResult(cycles=reports, unresolved_seeds=tuple(unresolved))
