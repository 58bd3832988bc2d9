"""Reduced one-parameter dynamics of the purification iteration.

On the |00> + z|11> family, one full protocol step advances the family
parameter by the degree-two rational map

    step_map(z) = (1 - z^2) / (1 + z^2)

and two steps by its self-composition two_step_map(z) = 2 z^2 / (1 + z^4).
Both are maps of the Riemann sphere; poles and the point at infinity are
handled by explicit branches, and evaluation switches to the reciprocal
chart w = 1/z for very large |z| so float overflow can never masquerade
as a finite value.

Landmarks of the real line (``compute_constants``):

* ``zeta_A``: the real fixed point, the real root of z^3 + z^2 + z = 1
  (the reciprocal of the tribonacci constant), ~0.5436890127.
* ``zeta_B``: the positive preimage of -zeta_A, equal to the tribonacci
  constant ~1.8392867552 (so zeta_A * zeta_B = 1).
* ``zeta_C``: radius of the largest origin-centred disk that two steps
  strictly contract, sup{r : max_{|z|=r} |two_step_map(z)| < r}; the
  worst angle is pi/4, where the condition degenerates to the quartic
  r^4 + 2r - 1 = 0, giving ~0.4746.

Orbits reaching 0 at even iteration index correspond to trajectories
that settle on the separable two-state cycle; odd index corresponds to
convergence to the maximally entangled fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .riemann import INFINITY, RiemannPoint, as_riemann

_CHART_SWITCH = 1e6  # |z| above this: evaluate in the reciprocal chart

# classification thresholds on the cycle multiplier
_SUPER_TOL = 1e-9
_UNIT_TOL = 1e-9

SUPERATTRACTING = "superattracting"
ATTRACTING = "attracting"
INDIFFERENT = "indifferent"
REPELLING = "repelling"


def _finite_or_infinity(value: complex) -> RiemannPoint:
    if np.isfinite(value.real) and np.isfinite(value.imag):
        return RiemannPoint(value)
    return INFINITY


def step_map(z) -> RiemannPoint:
    """One-step parameter map (1 - z^2)/(1 + z^2) on the sphere.

    step_map(INFINITY) = -1; the poles +/-i map to INFINITY.
    """
    pt = as_riemann(z)
    if pt.is_infinite:
        return RiemannPoint(-1.0)
    val = pt.value
    if abs(val) > _CHART_SWITCH:
        w = 1.0 / val
        w2 = w * w
        return RiemannPoint((w2 - 1.0) / (w2 + 1.0))
    z2 = val * val
    den = 1.0 + z2
    if den == 0:
        return INFINITY
    return _finite_or_infinity((1.0 - z2) / den)


def two_step_map(z) -> RiemannPoint:
    """Two-step parameter map 2 z^2 / (1 + z^4); equals step_map twice."""
    pt = as_riemann(z)
    if pt.is_infinite:
        return RiemannPoint(0.0)
    val = pt.value
    if abs(val) > _CHART_SWITCH:
        w = 1.0 / val
        w2 = w * w
        return RiemannPoint(2.0 * w2 / (w2 * w2 + 1.0))
    z2 = val * val
    den = 1.0 + z2 * z2
    if den == 0:
        return INFINITY
    return _finite_or_infinity(2.0 * z2 / den)


def step_map_derivative(z) -> complex:
    """Derivative -4z / (1 + z^2)^2 of the one-step map.

    Rejects the point at infinity and the poles +/-i, where the sphere
    chart has to be changed before differentiating.
    """
    pt = as_riemann(z)
    if pt.is_infinite:
        raise ValueError("derivative at infinity requires a chart change")
    val = pt.value
    den = 1.0 + val * val
    if den == 0:
        raise ValueError("derivative undefined at a pole of the map")
    return -4.0 * val / (den * den)


def critical_points() -> list:
    """The two critical points of the one-step map: 0 and infinity."""
    return [RiemannPoint(0.0), INFINITY]


def orbit(z, length: int) -> list:
    """[z, step_map(z), ..., step_map^length(z)]."""
    pts = [as_riemann(z)]
    for _ in range(length):
        pts.append(step_map(pts[-1]))
    return pts


@dataclass(frozen=True)
class CycleReport:
    """A periodic orbit with its multiplier and stability class."""

    period: int
    points: tuple
    multiplier: complex
    classification: str

    def contains(self, z, tol: float = 1e-8) -> bool:
        pt = as_riemann(z)
        if pt.is_infinite:
            return any(p.is_infinite for p in self.points)
        return any(
            (not p.is_infinite) and abs(p.value - pt.value) < tol
            for p in self.points
        )


def _classify(multiplier: complex) -> str:
    mag = abs(multiplier)
    if mag < _SUPER_TOL:
        return SUPERATTRACTING
    if mag < 1.0 - _UNIT_TOL:
        return ATTRACTING
    if mag <= 1.0 + _UNIT_TOL:
        return INDIFFERENT
    return REPELLING


def _cycle_report(points: list) -> CycleReport:
    mult = 1.0 + 0.0j
    for p in points:
        mult *= step_map_derivative(p)
    # verify the orbit closes up
    for k, p in enumerate(points):
        nxt = step_map(p)
        tgt = points[(k + 1) % len(points)]
        if nxt.is_infinite or tgt.is_infinite or abs(nxt.value - tgt.value) > 1e-10:
            raise ValueError("points do not form a cycle of the map")
    return CycleReport(
        period=len(points),
        points=tuple(points),
        multiplier=complex(mult),
        classification=_classify(mult),
    )


def _polish_cubic(x):
    """Newton-polish a root of z^3 + z^2 + z - 1."""
    for _ in range(4):
        fx = ((x + 1.0) * x + 1.0) * x - 1.0
        dfx = (3.0 * x + 2.0) * x + 1.0
        x = x - fx / dfx
    return x


def _real_fixed_point() -> float:
    a = (17.0 + 3.0 * np.sqrt(33.0)) ** (1.0 / 3.0)
    return float(_polish_cubic((a - 1.0 - 2.0 / a) / 3.0).real)


def fixed_points() -> list:
    """All fixed points of the one-step map, i.e. roots of z^3+z^2+z-1.

    One real root (repelling) and a complex-conjugate pair; each report
    carries the multiplier and its classification.
    """
    r = _real_fixed_point()
    # remaining quadratic factor: z^2 + (1+r) z + 1/r
    b = 1.0 + r
    disc = complex(b * b - 4.0 / r)
    root = np.sqrt(disc)
    pair = [(-b + root) / 2.0, (-b - root) / 2.0]
    roots = [complex(r)] + [complex(_polish_cubic(z)) for z in pair]
    return [_cycle_report([RiemannPoint(z)]) for z in roots]


@dataclass(frozen=True)
class Constants:
    """Landmark values of the real-line basin structure."""

    zeta_A: float
    zeta_B: float
    zeta_C: float
    a: float

    def residuals(self) -> dict:
        zA, zB, zC, a = self.zeta_A, self.zeta_B, self.zeta_C, self.a
        return {
            "cubic": abs(zA**3 + zA**2 + zA - 1.0),
            "preimage": abs(step_map(zB).value + zA),
            "reciprocal": abs(zA * zB - 1.0),
            "contraction_quartic": abs(zC**4 + 2.0 * zC - 1.0),
            "cube_root": abs(a**3 - (17.0 + 3.0 * np.sqrt(33.0))),
        }


def _step_map_array(z: np.ndarray) -> np.ndarray:
    """Bulk one-step evaluation on complex arrays (scans and tests only).

    Encodes the point at infinity as complex inf; the public scalar API
    returns tagged RiemannPoint values instead.
    """
    z = np.asarray(z, dtype=np.complex128)
    big = np.abs(z) > _CHART_SWITCH
    zs = np.where(big, 0.0, z)
    z2 = zs * zs
    den = 1.0 + z2
    pole = den == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (1.0 - z2) / np.where(pole, 1.0, den)
        w = 1.0 / np.where(big, z, 1.0)
        w2 = w * w
        out_big = (w2 - 1.0) / (w2 + 1.0)
    out = np.where(big, out_big, out)
    return np.where(pole | ~np.isfinite(out), np.complex128(np.inf), out)


def _two_step_map_array(z: np.ndarray) -> np.ndarray:
    """Bulk two-step evaluation; same conventions as ``_step_map_array``."""
    z = np.asarray(z, dtype=np.complex128)
    big = np.abs(z) > _CHART_SWITCH
    zs = np.where(big, 0.0, z)
    z2 = zs * zs
    den = 1.0 + z2 * z2
    pole = den == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = 2.0 * z2 / np.where(pole, 1.0, den)
        w = 1.0 / np.where(big, z, 1.0)
        w2 = w * w
        out_big = 2.0 * w2 / (w2 * w2 + 1.0)
    out = np.where(big, out_big, out)
    return np.where(pole | ~np.isfinite(out), np.complex128(np.inf), out)


def _max_two_step_on_circle(radius: float, angles: np.ndarray) -> float:
    return float(np.max(np.abs(_two_step_map_array(radius * np.exp(1j * angles)))))


def compute_constants(angle_samples: int = 4096) -> Constants:
    """Closed forms for zeta_A/zeta_B plus the bisected contraction radius.

    zeta_C is found numerically: scan ``angle_samples`` directions for the
    worst-case growth of the two-step map on the circle |z| = r, then
    bisect on r.  The scan includes the exact worst angle pi/4 whenever
    ``angle_samples`` is a multiple of 8.
    """
    a = float((17.0 + 3.0 * np.sqrt(33.0)) ** (1.0 / 3.0))
    zeta_a = _real_fixed_point()
    zeta_b = float(np.sqrt((-2.0 + 2.0 * a + a * a) / (2.0 + 4.0 * a - a * a)))

    angles = np.linspace(0.0, 2.0 * np.pi, angle_samples, endpoint=False)
    lo, hi = 0.3, 0.6
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _max_two_step_on_circle(mid, angles) < mid:
            lo = mid
        else:
            hi = mid
    zeta_c = 0.5 * (lo + hi)
    return Constants(zeta_A=zeta_a, zeta_B=zeta_b, zeta_C=zeta_c, a=a)


class ParityLabel(Enum):
    """Which iteration parity first brings the orbit close to 0."""

    EVEN_ZERO = "even-zero"
    ODD_ZERO = "odd-zero"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class ReducedResult:
    label: ParityLabel
    steps: int


def iterate_reduced(z0, max_iters: int = 200, tol: float = 1e-6) -> ReducedResult:
    """Iterate the one-step map and report the parity of first approach to 0.

    Returns EVEN_ZERO / ODD_ZERO when the orbit first enters the disk
    |z| < tol at an even / odd iteration index (the start counts as
    index 0), or UNRESOLVED after max_iters iterations.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    pt = as_riemann(z0)
    for k in range(max_iters + 1):
        if not pt.is_infinite and abs(pt.value) < tol:
            label = ParityLabel.EVEN_ZERO if k % 2 == 0 else ParityLabel.ODD_ZERO
            return ReducedResult(label, k)
        if k == max_iters:
            break
        pt = step_map(pt)
    return ReducedResult(ParityLabel.UNRESOLVED, max_iters)


# cycle search ------------------------------------------------------------

def _plastic_sequence(n: int) -> np.ndarray:
    """2-D low-discrepancy points in [0,1)^2 (plastic-constant lattice)."""
    rho = 1.32471795724474602596  # real root of x^3 = x + 1
    alphas = np.array([1.0 / rho, 1.0 / rho**2])
    idx = np.arange(1, n + 1)[:, None]
    return (0.5 + idx * alphas[None, :]) % 1.0


def _orbit_values(z: complex, period: int):
    """Finite orbit values and the multiplier along it, or None on escape."""
    pts = [z]
    mult = 1.0 + 0.0j
    cur = z
    for _ in range(period):
        den = 1.0 + cur * cur
        if den == 0 or abs(cur) > _CHART_SWITCH:
            return None
        mult *= -4.0 * cur / (den * den)
        cur = (1.0 - cur * cur) / den
        pts.append(cur)
    return pts, mult


def _newton_periodic(z: complex, period: int, iters: int = 80):
    """Newton iteration on step_map^period(z) - z = 0."""
    for _ in range(iters):
        res = _orbit_values(z, period)
        if res is None:
            return None
        pts, mult = res
        f = pts[-1] - z
        df = mult - 1.0
        if df == 0:
            return None
        step = f / df
        z = z - step
        if abs(step) <= 1e-14 * (1.0 + abs(z)):
            break
    res = _orbit_values(z, period)
    if res is None:
        return None
    if abs(res[0][-1] - z) > 1e-9 * (1.0 + abs(z)):
        return None
    return z


def _minimal_period(z: complex, period: int) -> int:
    for q in range(1, period + 1):
        if period % q:
            continue
        res = _orbit_values(z, q)
        if res is not None and abs(res[0][-1] - z) < 1e-9:
            return q
    return period


def _same_orbit(points_a, points_b, tol: float = 1e-6) -> bool:
    if len(points_a) != len(points_b):
        return False
    return all(
        any(abs(pa - pb) < tol for pb in points_b) for pa in points_a
    )


def find_cycles(max_period: int, starts: int = 10000) -> list:
    """Find periodic orbits of the one-step map up to ``max_period``.

    Multi-start Newton on step_map^p(z) = z over a low-discrepancy set
    of starts with |z| <= 4, deduplicated by orbit equivalence.  The
    point at infinity is pre-periodic (it falls onto the superattracting
    cycle after two steps) and carries no cycle, so finite starts cover
    everything.  Cycles are reported with their minimal period.  Degree
    growth makes large periods expensive: max_period is capped at 6.
    """
    if not 1 <= max_period <= 6:
        raise ValueError("max_period must be in 1..6")
    grid = _plastic_sequence(starts)
    start_pts = (8.0 * grid[:, 0] - 4.0) + 1j * (8.0 * grid[:, 1] - 4.0)
    start_pts = start_pts[np.abs(start_pts) <= 4.0]

    cycles: list[CycleReport] = []
    for period in range(1, max_period + 1):
        for z0 in start_pts:
            root = _newton_periodic(complex(z0), period)
            if root is None:
                continue
            q = _minimal_period(root, period)
            if q != period:
                continue  # already covered at its minimal period
            res = _orbit_values(root, q)
            if res is None:
                continue
            orbit_pts = res[0][:-1]
            if any(_same_orbit(orbit_pts,
                               [p.value for p in c.points])
                   for c in cycles if c.period == q):
                continue
            try:
                cycles.append(_cycle_report([RiemannPoint(p) for p in orbit_pts]))
            except ValueError:
                continue  # failed the closure check; discard
    return cycles
