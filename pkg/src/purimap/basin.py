"""Basin-of-attraction grids over the family parameter plane.

Every grid cell center is classified by iterating the protocol from the
corresponding initial state (pure for lam = 1, isotropic-noise mixture
otherwise) until the trajectory is within ``tol`` trace distance of an
attractor member and stays there for one full period.  Attractor targets
are the maximally entangled fixed point, the separable two-state cycle
and, for lam < 1, the mixed two-state cycle determined numerically at
run time.

Cell classification is embarrassingly parallel: rows are split into
contiguous bands, each band is filled by exactly one worker, and the
result is byte-identical for any worker count.
"""

from __future__ import annotations

import threading
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import IntEnum
from functools import lru_cache

import numpy as np

from . import fano, kernels
from .riemann import as_riemann
from .states import trace_distance_matrices

DEFAULT_MAX_ITERS_PURE = 200
DEFAULT_MAX_ITERS_MIXED = 400
DEFAULT_TOL = 1e-4


class BasinLabel(IntEnum):
    BELL = kernels.LABEL_BELL
    SEPARABLE_CYCLE = kernels.LABEL_SEPARABLE
    MIXED_CYCLE = kernels.LABEL_MIXED
    UNRESOLVED = kernels.LABEL_UNRESOLVED


LABEL_STRINGS = {
    BasinLabel.BELL: "bell",
    BasinLabel.SEPARABLE_CYCLE: "separable",
    BasinLabel.MIXED_CYCLE: "mixed",
    BasinLabel.UNRESOLVED: "unresolved",
}

_COLORS = np.zeros((4, 3), dtype=np.uint8)
_COLORS[BasinLabel.BELL] = (0, 0, 255)
_COLORS[BasinLabel.SEPARABLE_CYCLE] = (0, 160, 0)
_COLORS[BasinLabel.MIXED_CYCLE] = (255, 220, 0)
_COLORS[BasinLabel.UNRESOLVED] = (0, 0, 0)


@dataclass(frozen=True)
class GridSpec:
    """Rectangular viewport and iteration settings for a basin chart."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    width: int
    height: int
    lam: float = 1.0
    max_iters: int | None = None
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("viewport must have positive extent")
        if self.width < 1 or self.height < 1:
            raise ValueError("grid must contain at least one cell")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("mixing weight must be in [0, 1]")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iters is not None and self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")

    @property
    def iters(self) -> int:
        if self.max_iters is not None:
            return self.max_iters
        return DEFAULT_MAX_ITERS_PURE if self.lam == 1.0 else DEFAULT_MAX_ITERS_MIXED

    def cell_centers_re(self) -> np.ndarray:
        step = (self.re_max - self.re_min) / self.width
        return self.re_min + (np.arange(self.width) + 0.5) * step

    def cell_centers_im(self) -> np.ndarray:
        """Imaginary coordinates by row, row 0 at the top (im_max)."""
        step = (self.im_max - self.im_min) / self.height
        return self.im_max - (np.arange(self.height) + 0.5) * step


@dataclass(frozen=True)
class BasinGrid:
    spec: GridSpec
    labels: np.ndarray  # uint8 (height, width), BasinLabel values
    steps: np.ndarray   # int32 (height, width), first-detection iteration

    def counts(self) -> dict:
        return {
            LABEL_STRINGS[lab]: int(np.sum(self.labels == int(lab)))
            for lab in BasinLabel
        }


@lru_cache(maxsize=1)
def _mixed_cycle_members() -> tuple:
    a, b = fano.stable_mixed_cycle()
    return (a, b)


def default_mixed_cycle() -> np.ndarray:
    """The stable mixed 2-cycle used as the lam < 1 classification target."""
    return np.array(_mixed_cycle_members())


@dataclass(frozen=True)
class PointClassification:
    label: BasinLabel
    steps: int
    diagnostic: str | None = None


def _classify_arrays(zr, zi, lam, max_iters, tol, mixed_cycle):
    if lam == 1.0:
        return kernels.classify_pure(zr, zi, max_iters, tol)
    if mixed_cycle is None:
        mixed_cycle = default_mixed_cycle()
    return kernels.classify_mixed(zr, zi, lam, max_iters, tol, mixed_cycle)


def classify_point(zeta, lam: float = 1.0, max_iters: int | None = None,
                   tol: float = DEFAULT_TOL,
                   mixed_cycle=None) -> PointClassification:
    """Classify a single family parameter (RiemannPoint or complex).

    The point at infinity means the |11> initial state; it is iterated
    directly (off the grid hot path) with the same detection rule as the
    kernels.
    """
    pt = as_riemann(zeta)
    if not 0.0 <= lam <= 1.0:
        raise ValueError("mixing weight must be in [0, 1]")
    if max_iters is None:
        max_iters = DEFAULT_MAX_ITERS_PURE if lam == 1.0 else DEFAULT_MAX_ITERS_MIXED
    if pt.is_infinite:
        return _classify_state_scalar(pt, lam, max_iters, tol, mixed_cycle)
    z = pt.value
    zr = np.array([z.real])
    zi = np.array([z.imag])
    labels, steps = _classify_arrays(zr, zi, lam, max_iters, tol, mixed_cycle)
    label = BasinLabel(int(labels[0]))
    diagnostic = None
    if label is BasinLabel.UNRESOLVED and lam < 1.0:
        diagnostic = _unresolved_diagnostic(z, lam, max_iters)
    return PointClassification(label, int(steps[0]), diagnostic)


def _classify_state_scalar(pt, lam, max_iters, tol,
                           mixed_cycle) -> PointClassification:
    """Kernel detection rule applied to one arbitrary initial state."""
    from . import protocol, states

    u4 = protocol.HADAMARD.two_qubit
    psi = states.state_from_zeta(pt)
    if lam == 1.0:
        m = np.outer(psi.amplitudes, psi.amplitudes.conj())
        targets = [(BasinLabel.BELL, 1), (BasinLabel.SEPARABLE_CYCLE, 2),
                   (BasinLabel.SEPARABLE_CYCLE, 2)]
        bank = [_kern_target(k) for k in range(3)]
    else:
        m = states.werner_mix(pt, lam).matrix.copy()
        if mixed_cycle is None:
            mixed_cycle = default_mixed_cycle()
        targets = [(BasinLabel.BELL, 1), (BasinLabel.SEPARABLE_CYCLE, 2),
                   (BasinLabel.SEPARABLE_CYCLE, 2),
                   (BasinLabel.MIXED_CYCLE, 2), (BasinLabel.MIXED_CYCLE, 2)]
        bank = [_kern_target(k) for k in range(3)] + list(mixed_cycle)
    for t in range(max_iters + 1):
        for (label, period), tgt in zip(targets, bank):
            if trace_distance_matrices(m, tgt) < tol:
                look = m.copy()
                for _ in range(period):
                    look, _ = protocol._step_density_raw(look, u4)
                if trace_distance_matrices(look, tgt) < tol:
                    return PointClassification(label, t)
        if t == max_iters:
            break
        m, _ = protocol._step_density_raw(m, u4)
    return PointClassification(BasinLabel.UNRESOLVED, max_iters)


def _kern_target(k: int) -> np.ndarray:
    bell = np.zeros((4, 4), dtype=np.complex128)
    for (i, j) in ((0, 0), (0, 3), (3, 0), (3, 3)):
        bell[i, j] = 0.5
    s00 = np.zeros((4, 4), dtype=np.complex128)
    s00[0, 0] = 1.0
    spp = np.full((4, 4), 0.25, dtype=np.complex128)
    return (bell, s00, spp)[k]


def _unresolved_diagnostic(z, lam, max_iters):
    from . import protocol, states
    m = states.werner_mix(z, lam).matrix.copy()
    u4 = protocol.HADAMARD.two_qubit
    for _ in range(max_iters):
        m, _ = protocol._step_density_raw(m, u4)
    iden = np.eye(4, dtype=np.complex128) / 4.0
    dist = trace_distance_matrices(m, iden)
    if dist < 1e-3:
        return ("trajectory settled at the maximally mixed state "
                f"(trace distance {dist:.2e}); this fixed point is not an "
                "advertised attractor")
    return None


def _row_band_edges(height: int, bands: int) -> list:
    bands = max(1, min(bands, height))
    edges = np.linspace(0, height, bands + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def compute_basin(spec: GridSpec, threads: int | None = None,
                  supersample: bool = False, mixed_cycle=None,
                  progress=None) -> BasinGrid:
    """Classify every cell center of the grid; deterministic output.

    ``threads`` defaults to the available CPU count.  ``supersample``
    classifies a 2x2 sub-grid per cell and takes the majority label
    (ties break toward the smaller label value, steps is the minimum
    over sub-cells that voted for the winner).
    """
    if threads is None:
        import os
        threads = os.cpu_count() or 1
    if spec.lam < 1.0 and mixed_cycle is None:
        mixed_cycle = default_mixed_cycle()

    re = spec.cell_centers_re()
    im = spec.cell_centers_im()
    h, w = spec.height, spec.width
    if supersample:
        dre = (spec.re_max - spec.re_min) / w
        dim = (spec.im_max - spec.im_min) / h
        sub_re = [re - 0.25 * dre, re + 0.25 * dre]
        sub_im = [im + 0.25 * dim, im - 0.25 * dim]
        votes = np.zeros((4, h, w), dtype=np.uint8)
        sub_steps = np.full((4, h, w), np.iinfo(np.int32).max, dtype=np.int32)
        sub_labels = np.empty((4, h, w), dtype=np.uint8)
        k = 0
        for si in sub_im:
            for sr in sub_re:
                g = _compute_grid(sr, si, spec, threads, mixed_cycle, progress)
                sub_labels[k], sub_steps[k] = g
                k += 1
        for lab in range(4):
            votes[lab] = np.sum(sub_labels == lab, axis=0)
        labels = np.argmax(votes, axis=0).astype(np.uint8)  # ties -> smaller
        steps = np.where(sub_labels == labels[None, :, :], sub_steps,
                         np.iinfo(np.int32).max).min(axis=0).astype(np.int32)
        return BasinGrid(spec, labels, steps)
    labels, steps = _compute_grid(re, im, spec, threads, mixed_cycle, progress)
    return BasinGrid(spec, labels, steps)


def _compute_grid(re, im, spec, threads, mixed_cycle, progress=None):
    h, w = im.size, re.size
    labels = np.empty((h, w), dtype=np.uint8)
    steps = np.empty((h, w), dtype=np.int32)
    bands = _row_band_edges(h, threads)
    done_rows = [0]
    lock = threading.Lock()

    def work(band):
        r0, r1 = band
        band_im = np.repeat(im[r0:r1], w)
        band_re = np.tile(re, r1 - r0)
        lab, stp = _classify_arrays(band_re, band_im, spec.lam, spec.iters,
                                    spec.tol, mixed_cycle)
        labels[r0:r1] = lab.reshape(r1 - r0, w)
        steps[r0:r1] = stp.reshape(r1 - r0, w)
        if progress is not None:
            with lock:
                done_rows[0] += r1 - r0
                progress(done_rows[0], h)

    if len(bands) == 1:
        work(bands[0])
    else:
        with ThreadPoolExecutor(max_workers=len(bands)) as pool:
            list(pool.map(work, bands))
    return labels, steps


def render_ppm(grid: BasinGrid) -> bytes:
    """Binary PPM (P6, maxval 255), row 0 at the top.

    Colors: entangled fixed point (0,0,255), separable cycle (0,160,0),
    mixed cycle (255,220,0), unresolved (0,0,0).
    """
    h, w = grid.labels.shape
    header = f"P6\n{w} {h}\n255\n".encode("ascii")
    pixels = _COLORS[grid.labels]
    return header + pixels.tobytes()


def grid_to_csv(grid: BasinGrid) -> str:
    """CSV dump: header re,im,label,steps; one row per cell, row-major
    from the top-left; floats with 9 significant digits."""
    re = grid.spec.cell_centers_re()
    im = grid.spec.cell_centers_im()
    lines = ["re,im,label,steps"]
    labels = grid.labels
    steps = grid.steps
    names = [LABEL_STRINGS[BasinLabel(k)] for k in range(4)]
    for i in range(grid.spec.height):
        imval = f"{im[i]:.9g}"
        row_lab = labels[i]
        row_stp = steps[i]
        for j in range(grid.spec.width):
            lines.append(
                f"{re[j]:.9g},{imval},{names[row_lab[j]]},{row_stp[j]}"
            )
    return "\n".join(lines) + "\n"


def boundary_mask(labels: np.ndarray) -> np.ndarray:
    """Cells whose label differs from the east or south neighbor."""
    b = np.zeros(labels.shape, dtype=bool)
    b[:, :-1] |= labels[:, :-1] != labels[:, 1:]
    b[:-1, :] |= labels[:-1, :] != labels[1:, :]
    return b


@dataclass(frozen=True)
class DimensionFit:
    dimension: float
    r2: float
    box_sizes: tuple
    box_counts: tuple


def boundary_dimension(grid_or_labels) -> DimensionFit:
    """Box-counting dimension estimate of the label boundary set.

    Boundary cells are covered with dyadic boxes from min(h,w)//8 cells
    down to 4 cells per side; the dimension is the least-squares slope
    of log N(eps) against log(1/eps), r2 the fit quality.  A grid with a
    single label has no boundary and is rejected.
    """
    labels = grid_or_labels.labels if isinstance(grid_or_labels, BasinGrid) \
        else np.asarray(grid_or_labels)
    if np.unique(labels).size < 2:
        raise ValueError("boundary dimension requires at least two labels")
    mask = boundary_mask(labels)
    h, w = mask.shape
    size = min(h, w) // 8
    sizes = []
    while size >= 4:
        sizes.append(size)
        size //= 2
    if len(sizes) < 2:
        raise ValueError("grid too small for a box-counting fit")
    counts = []
    for e in sizes:
        hh = -(-h // e)
        ww = -(-w // e)
        padded = np.zeros((hh * e, ww * e), dtype=bool)
        padded[:h, :w] = mask
        counts.append(int(padded.reshape(hh, e, ww, e).any(axis=(1, 3)).sum()))
    x = np.log(1.0 / np.array(sizes, dtype=float))
    y = np.log(np.array(counts, dtype=float))
    design = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)
    fitted = design @ (slope, intercept)
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return DimensionFit(float(slope), r2, tuple(sizes), tuple(counts))


@dataclass(frozen=True)
class ProbeResult:
    distinct_labels: int
    min_separation_with_distinct_labels: float
    label_counts: dict = field(default_factory=dict)


def sensitivity_probe(center, radius: float, lam: float = 1.0,
                      samples: int = 256, seed: int = 0,
                      max_iters: int | None = None,
                      tol: float = DEFAULT_TOL) -> ProbeResult:
    """Classify random points in a disk and measure label mixing.

    Reports the number of distinct attractor labels (unresolved points
    are not attractors and do not count) and the smallest observed
    distance between two points carrying different attractor labels.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if samples < 2:
        raise ValueError("need at least two samples")
    c = as_riemann(center).value
    rng = np.random.default_rng(seed)
    rad = radius * np.sqrt(rng.uniform(size=samples))
    ang = rng.uniform(0.0, 2.0 * np.pi, size=samples)
    zr = c.real + rad * np.cos(ang)
    zi = c.imag + rad * np.sin(ang)
    if max_iters is None:
        max_iters = DEFAULT_MAX_ITERS_PURE if lam == 1.0 else DEFAULT_MAX_ITERS_MIXED
    labels, _ = _classify_arrays(zr, zi, lam, max_iters, tol, None)
    resolved = labels != int(BasinLabel.UNRESOLVED)
    kinds = np.unique(labels[resolved])
    counts = {LABEL_STRINGS[BasinLabel(int(k))]: int(np.sum(labels == k))
              for k in np.unique(labels)}
    min_sep = float("inf")
    if kinds.size >= 2:
        pts = zr + 1j * zi
        for a in range(kinds.size):
            in_a = resolved & (labels == kinds[a])
            for b in range(a + 1, kinds.size):
                in_b = resolved & (labels == kinds[b])
                d = np.abs(pts[in_a][:, None] - pts[in_b][None, :])
                min_sep = min(min_sep, float(d.min()))
    return ProbeResult(int(kinds.size), min_sep, counts)


def count_label_components(grid_or_labels, label) -> int:
    """Number of 4-connected components carrying the given label."""
    labels = grid_or_labels.labels if isinstance(grid_or_labels, BasinGrid) \
        else np.asarray(grid_or_labels)
    mask = labels == int(label)
    seen = np.zeros(mask.shape, dtype=bool)
    h, w = mask.shape
    count = 0
    for i in range(h):
        row = mask[i]
        for j in range(w):
            if row[j] and not seen[i, j]:
                count += 1
                stack = deque([(i, j)])
                seen[i, j] = True
                while stack:
                    a, b = stack.pop()
                    if a > 0 and mask[a - 1, b] and not seen[a - 1, b]:
                        seen[a - 1, b] = True
                        stack.append((a - 1, b))
                    if a + 1 < h and mask[a + 1, b] and not seen[a + 1, b]:
                        seen[a + 1, b] = True
                        stack.append((a + 1, b))
                    if b > 0 and mask[a, b - 1] and not seen[a, b - 1]:
                        seen[a, b - 1] = True
                        stack.append((a, b - 1))
                    if b + 1 < w and mask[a, b + 1] and not seen[a, b + 1]:
                        seen[a, b + 1] = True
                        stack.append((a, b + 1))
    return count
