"""Command-line runners for the entropy experiments.

Every subcommand writes one CSV or JSON artifact to ``--output`` (stdout by
default). Exit codes: 0 success, 2 invalid input or unwritable output, 3 when
the grid-convergence guard trips under ``--guard fail`` or a quadrature fails
to converge. Diagnostics go to stderr as JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .dispersion import DIRAC, SCHROEDINGER, CoherentState, DispersionModel, coherent_entropy_series, \
    evolve_exact, make_coherent
from .entropy import amplitude_entropy, min_entropy_bound
from .grid import GridSpec, normalize
from .guard import GUARD_TOLERANCE, GuardResult, check_convergence
from .hydrogen import ALT, STANDARD, QuadratureError, hydrogen_entropy_budget
from .io import amplitude_metadata, amplitude_to_csv, columns_to_csv, read_amplitude_csv, \
    read_series_csv, series_columns, to_json, write_json
from .qcurve import classify, detect_critical_time
from .symmetry import OPERATIONS, apply_cpt, entropy_invariance, gamma_identities, random_spinor_field, \
    time_reversal_without_sign
from .twolevel import TwoLevelSystem, density_period, harmonic_oscillator_basis, n_level_transition, \
    oscillation_entropy_series, superposition_entropy
from .twoparticle import BOSON, FERMION, CollisionSetup, collision_entropy, collision_entropy_series

MIN_POINTS = 8
EXIT_OK, EXIT_INVALID, EXIT_GUARD = 0, 2, 3


class GuardFailure(Exception):
    def __init__(self, diagnostic: dict):
        super().__init__(diagnostic.get("message", "guard failure"))
        self.diagnostic = diagnostic


# ---------------------------------------------------------------------------
# validation helpers


def _positive(args, *names):
    for n in names:
        v = getattr(args, n)
        if v is None or not np.isfinite(v) or v <= 0:
            raise ValueError(f"--{n.replace('_', '-')} must be positive, got {v}")


def _nonnegative(args, *names):
    for n in names:
        v = getattr(args, n)
        if v is None or not np.isfinite(v) or v < 0:
            raise ValueError(f"--{n.replace('_', '-')} must be nonnegative, got {v}")


def _points(n: int) -> int:
    if n < MIN_POINTS:
        raise ValueError(f"grid needs at least {MIN_POINTS} points per axis, got {n}")
    return n


def _times(tmax: float, steps: int) -> np.ndarray:
    if steps < 2:
        raise ValueError("--steps must be at least 2")
    return np.linspace(0.0, tmax, steps)


def _json_arg(text: str):
    """Inline JSON, or a path to a JSON file."""
    p = Path(text)
    if p.is_file():
        text = p.read_text()
    return json.loads(text)


def _check_writable(path) -> None:
    if path is None or str(path) == "-":
        return
    p = Path(path)
    parent = p.parent if str(p.parent) else Path(".")
    if p.is_dir() or not parent.is_dir() or not os.access(parent, os.W_OK) \
            or (p.exists() and not os.access(p, os.W_OK)):
        raise PermissionError(f"cannot write to {path}")


# ---------------------------------------------------------------------------
# guard


def _guard(args, compute, grid: GridSpec, label: str) -> dict | None:
    """Run the convergence check unless disabled; raise ``GuardFailure`` on
    a trip under ``--guard fail``."""
    if args.guard == "off":
        return None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res: GuardResult = check_convergence(compute, grid, warn=False)
    report = {"check": label, "points": grid.points_per_axis,
              "refined_points": 2 * grid.points_per_axis, **res.as_dict()}
    if not res.ok:
        diag = {"status": "guard_failure" if args.guard == "fail" else "guard_warning",
                "message": f"entropy not converged: |S(N) - S(2N)| = {res.delta:.3g} > {GUARD_TOLERANCE:g}",
                "guard": report}
        if args.guard == "fail":
            raise GuardFailure(diag)
        sys.stderr.write(to_json(diag))
    return report


# ---------------------------------------------------------------------------
# subcommands


def _model(args) -> DispersionModel:
    return DispersionModel(args.model, args.mass)


def cmd_entropy(args) -> None:
    if args.input:
        amp = _amplitude_from_csv(args.input)
        report = {"source": str(args.input), "grid": amp.grid.to_dict()}
        guard = None
    else:
        _positive(args, "sigma2", "extent")
        points = _points(args.points)
        grid = GridSpec(args.dim, points, args.extent)
        cs = CoherentState(args.center, args.k0, args.sigma2, dim=args.dim)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            amp = make_coherent(grid, cs)
        report = {"source": "coherent", "grid": grid.to_dict(), "sigma2": args.sigma2,
                  "center": args.center, "k0": args.k0,
                  "warnings": sorted({str(w.message) for w in caught})}
        guard = _guard(args, lambda g: amplitude_entropy(make_coherent(g, cs)).total, grid, "entropy")
    e = amplitude_entropy(amp)
    report.update(e.as_dict())
    report["min_bound"] = min_entropy_bound(amp.grid.dim)
    if guard is not None:
        report["guard"] = guard
    if args.save_amplitude:
        _check_writable(args.save_amplitude)
        amplitude_to_csv(amp, args.save_amplitude)
        write_json(amplitude_metadata(amp), str(args.save_amplitude) + ".json")
    write_json(report, args.output)


def _amplitude_from_csv(path):
    with open(path) as fh:
        header = fh.readline().strip().split(",")
    if header[:2] != ["index", "x"] or "re" not in header or "im" not in header:
        raise ValueError("amplitude CSV needs columns index,x,re,im")
    if len(header) != 4:
        raise ValueError("amplitude CSV input supports one dimension only")
    x = np.loadtxt(path, delimiter=",", skiprows=1, usecols=1, ndmin=1)
    n = _points(x.size)
    dx = float(x[1] - x[0])
    grid = GridSpec(1, n, n * dx)
    if not np.allclose(x, grid.axis(), rtol=0, atol=1e-9 * max(1.0, abs(x[0]))):
        raise ValueError("x column is not the centred uniform grid -L/2 + j dx")
    return normalize(read_amplitude_csv(path, grid))


def cmd_coherent_evolve(args) -> None:
    _positive(args, "sigma2", "mass", "tmax", "extent")
    points = _points(args.points or (4096 if args.dim == 1 else 48))
    extent = args.extent
    grid = GridSpec(args.dim, points, extent)
    cs = CoherentState(args.center, args.k0, args.sigma2, dim=args.dim)
    model = _model(args)
    times = _times(args.tmax, args.steps)

    def at_tmax(g):
        return amplitude_entropy(evolve_exact(make_coherent(g, cs), model, args.tmax)).total

    _guard(args, at_tmax, grid, "coherent-evolve at tmax")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        s = coherent_entropy_series(grid, cs, model, times)
    columns_to_csv(series_columns(s, ("s_r", "s_k", "s_total", "s_closed_form")), args.output)


def _two_level(args) -> TwoLevelSystem:
    return TwoLevelSystem(args.omega1, args.omega2, args.w11, args.w22, args.w12)


def cmd_two_state(args) -> None:
    _positive(args, "extent", "width")
    sys_ = _two_level(args)
    levels = tuple(int(v) for v in args.levels.split(","))
    if len(levels) != 2 or levels[0] == levels[1] or min(levels) < 0:
        raise ValueError("--levels needs two distinct nonnegative oscillator levels, e.g. 0,1")
    grid = GridSpec(1, _points(args.points), args.extent)
    tmax = args.tmax if args.tmax is not None else density_period(sys_)
    if not np.isfinite(tmax) or tmax <= 0:
        raise ValueError("--tmax must be positive (degenerate system has no period)")
    times = _times(tmax, args.steps)
    basis = harmonic_oscillator_basis(grid, levels, args.width)

    def at_quarter(g):
        return superposition_entropy(harmonic_oscillator_basis(g, levels, args.width), sys_, 0.25 * tmax).total

    _guard(args, at_quarter, grid, "two-state at tmax/4")
    s = oscillation_entropy_series(basis, sys_, times)
    p2 = s.meta["p2"]
    columns_to_csv({"t": s.times, "p1": 1.0 - p2, "p2": p2, "s_total": s.values}, args.output)


def cmd_n_state(args) -> None:
    _positive(args, "tmax")
    h0 = np.asarray(_json_arg(args.h0), dtype=float)
    hi = np.asarray(_json_arg(args.hi), dtype=float)
    if h0.ndim != 1 or h0.size < 2:
        raise ValueError("--h0 must be a JSON list of at least two frequencies")
    times = _times(args.tmax, args.steps)
    cols = {"t": times}
    for j in range(h0.size):
        cols[f"p{j + 1}"] = n_level_transition(h0, hi, j, times)
    columns_to_csv(cols, args.output)


def cmd_collide(args) -> None:
    _positive(args, "sigma2", "hbar_over_m", "c", "extent")
    grid = GridSpec(1, _points(args.grid), args.extent)
    setup = CollisionSetup(-args.c, args.c, args.p1, args.sigma2, args.hbar_over_m, args.stats, grid)
    meet = setup.meeting_time()
    tmax = args.tmax if args.tmax is not None else 2.0 * meet
    if not np.isfinite(tmax) or tmax <= 0:
        raise ValueError("--tmax must be positive (packets at rest never meet)")
    times = _times(tmax, args.steps)
    probe = min(meet, tmax)

    def at_meeting(g):
        return collision_entropy(CollisionSetup(-args.c, args.c, args.p1, args.sigma2, args.hbar_over_m,
                                                args.stats, g), probe).total

    _guard(args, at_meeting, grid, "collide at meeting time")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        s = collision_entropy_series(setup, times)
    columns_to_csv(series_columns(s, ("s_total", "s_sum_singles", "overlap")), args.output)


def cmd_hydrogen(args) -> None:
    _positive(args, "a0")
    if args.n_radial < MIN_POINTS or args.n_polar < MIN_POINTS:
        raise ValueError(f"quadrature orders must be at least {MIN_POINTS}")
    try:
        report = dict(hydrogen_entropy_budget(args.variant, args.a0, args.n_radial, args.n_polar))
    except QuadratureError as exc:
        raise GuardFailure({"status": "guard_failure", "message": str(exc),
                            "guard": {"check": "hydrogen quadrature", "n_radial": args.n_radial,
                                      "n_polar": args.n_polar}}) from None
    write_json(report, args.output)


def cmd_classify(args) -> None:
    series = read_series_csv(args.input)
    if args.epsilon is not None:
        _nonnegative(args, "epsilon")
    c = classify(series, args.epsilon)
    write_json({"label": c.label.value, "t_c": detect_critical_time(series, c.epsilon),
                "epsilon": c.epsilon, "samples": len(series)}, args.output)


def cmd_verify_symmetries(args) -> None:
    _positive(args, "extent")
    if args.count < 1:
        raise ValueError("--count must be at least 1")
    points = _points(args.points)
    if points % 2:
        raise ValueError("--points must be even so the grid is symmetric under r -> -r")
    grid = GridSpec(args.dim, points, args.extent)
    rng = np.random.default_rng(args.seed)
    worst = {name: 0.0 for name in OPERATIONS}
    cpt_residual = 0.0
    for _ in range(args.count):
        f = random_spinor_field(grid, rng)
        inv = entropy_invariance(f)
        for name in OPERATIONS:
            worst[name] = max(worst[name], inv[name]["delta_s_r"], inv[name]["delta_s_k"])
        cpt_residual = max(cpt_residual, float(np.max(np.abs(apply_cpt(apply_cpt(f)).values - f.values))))
    ident = gamma_identities()
    report = {
        "seed": args.seed,
        "count": args.count,
        "grid": grid.to_dict(),
        "identities": ident,
        "identities_ok": bool(max(ident.values()) <= 1e-13),
        "time_reversal_without_sign": time_reversal_without_sign(),
        "max_entropy_deviation": worst,
        "entropy_invariant": bool(max(worst.values()) <= 1e-9),
        "cpt_involution_residual": cpt_residual,
        "cpt_involution_ok": bool(cpt_residual <= 1e-12),
    }
    write_json(report, args.output)


def cmd_min_bound(args) -> None:
    if args.dim < 1:
        raise ValueError("--dim must be at least 1")
    write_json({"dim": args.dim, "min_entropy": min_entropy_bound(args.dim)}, args.output)


# ---------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--output", "-o", default=None, help="output file (default stdout)")
    p.add_argument("--config", default=None, help="JSON file of option defaults; flags override")
    p.add_argument("--guard", choices=("off", "warn", "fail"), default="warn",
                   help="grid-convergence check at N and 2N points")
    p.add_argument("--seed", type=int, default=0)
    return p


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="qentropy", description="Phase-space entropy experiments.")
    parser.add_argument("--version", action="version", version=f"qentropy {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    subs = {}

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        p.set_defaults(func=func)
        subs[name] = p
        return p

    p = add("entropy", cmd_entropy, "Entropy of a coherent state or of an amplitude CSV.")
    p.add_argument("--input", default=None, help="1D amplitude CSV with columns index,x,re,im")
    p.add_argument("--dim", type=int, choices=(1, 2, 3), default=1)
    p.add_argument("--points", type=int, default=4096)
    p.add_argument("--extent", type=float, default=80.0)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--center", type=float, default=0.0)
    p.add_argument("--k0", type=float, default=0.0)
    p.add_argument("--save-amplitude", default=None, help="also write the sampled amplitude CSV")

    p = add("coherent-evolve", cmd_coherent_evolve, "Entropy growth of a freely evolving coherent state.")
    p.add_argument("--dim", type=int, choices=(1, 2, 3), default=1)
    p.add_argument("--points", type=int, default=None, help="default 4096 in 1D, 48 otherwise")
    p.add_argument("--extent", type=float, default=80.0)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--center", type=float, default=0.0)
    p.add_argument("--k0", type=float, default=0.0)
    p.add_argument("--model", choices=(SCHROEDINGER, DIRAC), default=SCHROEDINGER)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--tmax", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=21)

    p = add("two-state", cmd_two_state, "Two-level transition and entropy oscillation.")
    p.add_argument("--omega1", type=float, default=1.0)
    p.add_argument("--omega2", type=float, default=2.0)
    p.add_argument("--w11", type=float, default=0.0)
    p.add_argument("--w22", type=float, default=0.0)
    p.add_argument("--w12", type=float, default=0.5)
    p.add_argument("--tmax", type=float, default=None, help="default one density period")
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--levels", default="0,1", help="oscillator levels of the spatial basis")
    p.add_argument("--width", type=float, default=1.0)
    p.add_argument("--points", type=int, default=1024)
    p.add_argument("--extent", type=float, default=40.0)

    p = add("n-state", cmd_n_state, "Level populations of an N-level system.")
    p.add_argument("--h0", required=True, help="JSON list of unperturbed frequencies (or file)")
    p.add_argument("--hi", required=True, help="JSON symmetric perturbation matrix (or file)")
    p.add_argument("--tmax", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=101)

    p = add("collide", cmd_collide, "Entropy of two colliding identical particles.")
    p.add_argument("--p1", type=float, default=1.0)
    p.add_argument("--hbar-over-m", type=float, default=1.0)
    p.add_argument("--sigma2", type=float, default=25.0)
    p.add_argument("--c", type=float, default=150.0, help="packets start at -c and +c")
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--extent", type=float, default=800.0)
    p.add_argument("--stats", choices=(FERMION, BOSON), default=FERMION)
    p.add_argument("--tmax", type=float, default=None, help="default twice the meeting time")
    p.add_argument("--steps", type=int, default=81)

    p = add("hydrogen", cmd_hydrogen, "Electron entropy budget of the 2p -> 1s transition.")
    p.add_argument("--variant", choices=(STANDARD, ALT), default=STANDARD)
    p.add_argument("--a0", type=float, default=1.0)
    p.add_argument("--n-radial", type=int, default=128)
    p.add_argument("--n-polar", type=int, default=48)

    p = add("classify", cmd_classify, "Label an entropy series C, D, I or O.")
    p.add_argument("--input", required=True, help="CSV with columns t and s_total")
    p.add_argument("--epsilon", type=float, default=None)

    p = add("verify-symmetries", cmd_verify_symmetries, "Gamma identities and C, P, T entropy invariance.")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--dim", type=int, choices=(1, 2, 3), default=1)
    p.add_argument("--points", type=int, default=128)
    p.add_argument("--extent", type=float, default=20.0)

    p = add("min-bound", cmd_min_bound, "Entropy minimum dim (1 + ln pi).")
    p.add_argument("--dim", type=int, default=3)
    return parser, subs


def _apply_config(sub: argparse.ArgumentParser, path: str) -> None:
    cfg = json.loads(Path(path).read_text())
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    known = {a.dest for a in sub._actions}
    norm = {k.replace("-", "_"): v for k, v in cfg.items()}
    unknown = sorted(set(norm) - known - {"command"})
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    norm.pop("command", None)
    norm.pop("config", None)
    sub.set_defaults(**norm)


def _parse(argv):
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        _apply_config(subs[args.command], args.config)
        args = parser.parse_args(argv)
    return args


def run(argv=None) -> int:
    """Parse ``argv``, run the subcommand and return the exit code."""
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = _parse(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"qentropy: error: {exc}\n")
        return EXIT_INVALID
    try:
        _check_writable(args.output)
        args.func(args)
    except GuardFailure as exc:
        sys.stderr.write(to_json(exc.diagnostic))
        return EXIT_GUARD
    except (ValueError, IndexError, OSError) as exc:
        sys.stderr.write(f"qentropy: error: {exc}\n")
        return EXIT_INVALID
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
