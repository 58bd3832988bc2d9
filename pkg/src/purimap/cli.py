"""Command-line front end.

Subcommands: ``iterate`` (trajectory JSON), ``basin`` (PPM/CSV charts),
``cycles`` (cycle + stability JSON), ``constants`` (landmark values),
``oracle-check`` (closed-form selection step against the brute-force
circuit).  Exit codes: 0 success, 1 I/O failure, 2 bad usage, 3
self-check failure.  All output files are byte-deterministic for fixed
inputs, independent of the worker count.
"""

from __future__ import annotations

import argparse
import re as _re
import sys

import numpy as np

from . import _jsonfmt, basin, fano, kernels, protocol, reduced, states
from .riemann import INFINITY, RiemannPoint

_COMPLEX_RE = _re.compile(
    r"""^\s*
    (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?
    (?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)?
    (?P<i>i)?
    \s*$""",
    _re.VERBOSE,
)


def parse_complex(text: str) -> RiemannPoint:
    """Parse 'a+bi' / 'a-bi' / 'a' / 'bi' / 'inf' into a sphere point."""
    s = text.strip().lower()
    if s in ("inf", "infinity"):
        return INFINITY
    m = _COMPLEX_RE.match(s)
    if m is None or (m.group("re") is None and not m.group("i")):
        raise ValueError(f"cannot parse complex literal {text!r}")
    if m.group("i"):
        if m.group("im") is not None:
            re_part = float(m.group("re")) if m.group("re") else 0.0
            im_txt = m.group("im")
            if im_txt in ("+", "-"):
                im_txt += "1"
            im_part = float(im_txt)
        else:
            # pure imaginary: the 're' group captured the coefficient
            re_part = 0.0
            im_part = float(m.group("re")) if m.group("re") else 1.0
        return RiemannPoint(complex(re_part, im_part))
    if m.group("im") is not None:
        raise ValueError(f"cannot parse complex literal {text!r}")
    return RiemannPoint(complex(float(m.group("re")), 0.0))


def _viewport(text: str):
    parts = text.split(":")
    if len(parts) != 4:
        raise ValueError("viewport must be re_min:re_max:im_min:im_max")
    return tuple(float(p) for p in parts)


def _write_text(path, content: str) -> None:
    if path == "-" or path is None:
        sys.stdout.write(content)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(content)


def _state_payload(state) -> list:
    if isinstance(state, states.PureState2Q):
        out = []
        for amp in state.amplitudes:
            out.extend([float(amp.real), float(amp.imag)])
        return out
    return [float(x) for x in fano.to_fano(state)]


def cmd_iterate(args) -> int:
    zeta = args.zeta
    if args.lam == 1.0:
        initial = states.state_from_zeta(zeta)
    else:
        initial = states.werner_mix(zeta, args.lam)
    traj = protocol.run_trajectory(initial, max_steps=args.steps)
    payload = [
        {
            "step": rec.step,
            "state": _state_payload(rec.state),
            "entropy": rec.entropy,
            "purity": rec.purity,
            "success_probability": rec.success_probability,
            "cumulative_yield": rec.cumulative_yield,
        }
        for rec in traj.records
    ]
    _write_text(args.out, _jsonfmt.dumps(payload))
    return 0


def _progress_printer(passes: int = 1):
    if not sys.stderr.isatty():
        return None
    state = {"base": 0, "prev": 0}

    def show(done, total):
        # done restarts from 0 on each supersampling pass
        if done < state["prev"]:
            state["base"] += state["prev"]
        state["prev"] = done
        grand = state["base"] + done
        pct = min(100.0, 100.0 * grand / (total * passes))
        sys.stderr.write(f"\r{pct:5.1f}%")
        sys.stderr.flush()
        if grand >= total * passes:
            sys.stderr.write("\n")

    return show


def cmd_basin(args) -> int:
    re_min, re_max, im_min, im_max = args.viewport
    spec = basin.GridSpec(
        re_min=re_min, re_max=re_max, im_min=im_min, im_max=im_max,
        width=args.resolution, height=args.height or args.resolution,
        lam=args.lam, max_iters=args.max_iters, tol=args.tol,
    )
    if args.lam == 0.0:
        sys.stderr.write(
            "note: at lambda = 0 every cell starts at the maximally mixed "
            "state, which is a stationary point; expect unresolved cells\n")
    grid = basin.compute_basin(spec, threads=args.threads,
                               supersample=args.supersample,
                               progress=_progress_printer(
                                   4 if args.supersample else 1))
    if args.out_ppm:
        with open(args.out_ppm, "wb") as fh:
            fh.write(basin.render_ppm(grid))
    if args.out_csv:
        _write_text(args.out_csv, basin.grid_to_csv(grid))
    c = grid.counts()
    total = spec.width * spec.height
    print(f"cells={total} bell={c['bell']} separable={c['separable']} "
          f"mixed={c['mixed']} unresolved={c['unresolved']}")
    return 0


def _cycle_payload(report: fano.StabilityReport) -> dict:
    return {
        "period": report.period,
        "stable": report.stable,
        "eigenvalue_magnitudes": list(report.eigenvalue_magnitudes),
        "states": [[float(x) for x in fano.to_fano(m)] for m in report.cycle],
    }


def cmd_cycles(args) -> int:
    seeds = None
    if args.lam is not None:
        rho = 1.32471795724474602596
        alphas = np.array([1.0 / rho, 1.0 / rho**2])
        idx = np.arange(1, args.seeds + 1)[:, None]
        grid = (0.5 + idx * alphas[None, :]) % 1.0
        seeds = [
            (complex(4.0 * g[0] - 2.0, 4.0 * g[1] - 2.0), args.lam)
            for g in grid
        ]
    result = fano.find_mixed_cycles(seed_count=args.seeds,
                                    max_period=args.max_period,
                                    seeds=seeds)
    payload = {
        "cycles": [_cycle_payload(r) for r in result.cycles],
        "unresolved_seed_count": len(result.unresolved_seeds),
    }
    mixed = [r for r in result.cycles
             if r.stable and any(
                 states.trace_distance_matrices(
                     m.matrix, fano.mixed_cycle_seed()) < 1e-6
                 for m in r.cycle)]
    if mixed:
        payload["mixed_partner_vs_reference"] = fano.mixed_cycle_diagnostics()
    if args.include_unstable:
        payload["fully_mixed_fixed_point"] = _cycle_payload(
            fano.fully_mixed_report())
    _write_text(args.out, _jsonfmt.dumps(payload))
    return 0


def cmd_constants(args) -> int:
    consts = reduced.compute_constants()
    payload = {
        "zeta_A": consts.zeta_A,
        "zeta_B": consts.zeta_B,
        "zeta_C": consts.zeta_C,
        "a": consts.a,
        "residuals": consts.residuals(),
    }
    _write_text(args.out, _jsonfmt.dumps(payload))
    return 0


def _random_density(rng) -> np.ndarray:
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = g @ g.conj().T
    return m / m.trace().real


def _random_pure_density(rng) -> np.ndarray:
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def _stress_states() -> list:
    tiny = 1e-12
    out = []
    for diag in ([1 - 3 * tiny, tiny, tiny, tiny],
                 [0.5, 0.5 - 2 * tiny, tiny, tiny]):
        out.append(np.diag(np.array(diag, dtype=np.complex128)))
    return out


def cmd_oracle_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    mats = []
    half = args.samples // 2
    for _ in range(half):
        mats.append(_random_pure_density(rng))
    for _ in range(args.samples - half):
        mats.append(_random_density(rng))
    mats.extend(_stress_states())
    max_entry = 0.0
    max_prob = 0.0
    for m in mats:
        rho = states.DensityMatrix2Q(m)
        fast = protocol.selection_step_mixed(rho)
        ref = protocol.circuit_oracle(rho)
        max_entry = max(max_entry, float(np.max(np.abs(
            fast.state.matrix - ref.state.matrix))))
        max_prob = max(max_prob, abs(
            fast.success_probability - ref.success_probability))
    ok = max_entry < 1e-10 and max_prob < 1e-12
    print(f"samples={len(mats)} max_entry_dev={max_entry:.3e} "
          f"max_prob_dev={max_prob:.3e} result={'PASS' if ok else 'FAIL'}")
    return 0 if ok else 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="purimap",
        description="Iterated two-qubit purification dynamics toolkit "
                    f"(kernel backend: {kernels.backend_name()})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iterate", help="run one trajectory, emit JSON")
    p.add_argument("--zeta", type=parse_complex, required=True,
                   help="family parameter, e.g. 0.5+0.1i or inf")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                   help="mixing weight in [0,1]; 1 = pure state")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("basin", help="compute a basin chart (PPM/CSV)")
    p.add_argument("--viewport", type=_viewport, default=(-2.0, 2.0, -2.0, 2.0),
                   metavar="RE_MIN:RE_MAX:IM_MIN:IM_MAX")
    p.add_argument("--resolution", type=int, default=512, help="grid width")
    p.add_argument("--height", type=int, default=None,
                   help="grid height (default: same as width)")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--tol", type=float, default=basin.DEFAULT_TOL)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--supersample", action="store_true",
                   help="classify a 2x2 sub-grid per cell")
    p.add_argument("--out-ppm", default=None)
    p.add_argument("--out-csv", default=None)
    p.set_defaults(func=cmd_basin)

    p = sub.add_parser("cycles", help="find attracting cycles, emit JSON")
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="restrict seeding to one mixing weight")
    p.add_argument("--max-period", type=int, default=4)
    p.add_argument("--seeds", type=int, default=60)
    p.add_argument("--include-unstable", action="store_true",
                   help="also report the maximally mixed fixed point")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("constants", help="landmark constants as JSON")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("oracle-check",
                       help="selection step against the circuit oracle")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def _validate(args, parser) -> None:
    lam = getattr(args, "lam", None)
    if lam is not None and not 0.0 <= lam <= 1.0:
        parser.error("--lambda must be in [0, 1]")
    for name in ("steps", "samples", "seeds", "resolution", "height",
                 "max_iters", "max_period", "threads"):
        val = getattr(args, name, None)
        if val is not None and val < 1 and not (name == "steps" and val == 0):
            parser.error(f"--{name.replace('_', '-')} must be positive")
    tol = getattr(args, "tol", None)
    if tol is not None and tol <= 0:
        parser.error("--tol must be positive")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)  # exits 2 on bad usage
    _validate(args, parser)
    try:
        return args.func(args)
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
