"""Command-line front end.

    eqcalc [--config FILE] moments|verify|simulate|hamiltonian [options]

Exit codes: 0 success, 1 a check failed or the integrator blew up, 2 bad
arguments.  A config file holds ``key = value`` lines (``#`` comments) whose
keys are option names with dashes or underscores; flags given on the
command line win over the file.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings

import numpy as np

from .dynamics import IntegratorConfig, characteristic_frequency, compare_statistics, write_csv
from .exceptions import BlowUpError, DomainError
from .moments import FiducialSpec, moment_table
from .oracle import QuadConfig
from .published import discrepancy_report
from .symbol import (
    InconsistencyError,
    PhysicalParams,
    classical_limit,
    enhanced_hamiltonian,
    eval_hamiltonian,
)
from .verify import all_passed, verify_angular, verify_appendix, verify_fock, verify_moments

__all__ = ["main", "build_parser", "read_config"]

DEFAULT_GAMMAS = "0,0.25,0.5,1,1.5"
DEFAULT_X0 = "0,0,0,0,1,0,-1,0"
X0_NOTE = "default x0 (q1=(1,0), q2=(-1,0), p=0) is chosen by this tool, not taken from any source"


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        vals = [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("expected at least one number")
    return vals


def _point(text: str) -> list[float]:
    vals = _floats(text)
    if vals == [0.0]:
        return [0.0] * 8
    if len(vals) != 8:
        raise argparse.ArgumentTypeError("a phase-space point has 8 components (px1,py1,px2,py2,qx1,qy1,qx2,qy2)")
    return vals


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def _physical(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--m", type=float, default=1.0, help="particle mass")
    sub.add_argument("--varpi", type=float, default=1.0, help="harmonic frequency")
    sub.add_argument("--g", type=float, default=1.0, help="quartic coupling")
    sub.add_argument("--hbar", type=float, default=1.0)
    sub.add_argument("--omega", type=float, default=1.0, help="fiducial width constant")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eqcalc", description="Enhanced-quantization calculus toolkit.")
    ap.add_argument("--config", help="key = value file overriding defaults")
    sp = ap.add_subparsers(dest="command", required=True)

    m = sp.add_parser("moments", help="closed-form moment table")
    m.add_argument("--gamma", type=float, default=0.0)
    m.add_argument("--omega", type=float, default=1.0)
    m.add_argument("--hbar", type=float, default=1.0)
    m.add_argument("--format", choices=("json", "csv"), default="json")
    m.add_argument("--out")

    v = sp.add_parser("verify", help="check closed forms against oracles")
    v.add_argument("--suite", choices=("moments", "appendix", "angular", "fock", "all"), default="all")
    v.add_argument("--gamma", type=_floats, default=DEFAULT_GAMMAS, help="comma-separated grid")
    v.add_argument("--lam", type=_floats, default="1", help="comma-separated λ = Ω/ħ grid")
    v.add_argument("--rel-tol", type=float, default=1e-6)
    v.add_argument("--appendix-tol", type=float, default=1e-7)
    v.add_argument("--mc-samples", type=int, default=1_000_000)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--no-mc", action="store_true", help="skip the Monte Carlo oracle")
    v.add_argument("--radial-nodes", type=int, default=64)
    v.add_argument("--angular-nodes", type=int, default=64)
    v.add_argument("--smax", type=int, default=12)
    v.add_argument("--dim", type=int, default=128, help="Fock truncation")
    v.add_argument("--out")

    s = sp.add_parser("simulate", help="integrate enhanced Hamiltonians and compare them")
    s.add_argument("--gamma", type=_floats, default="0")
    _physical(s)
    s.add_argument("--x0", type=_point, default=DEFAULT_X0, help="px1,py1,px2,py2,qx1,qy1,qx2,qy2")
    s.add_argument("--dt", type=float, help="default: period/1000")
    s.add_argument("--t-end", type=float, help="default: 10 periods")
    s.add_argument("--scheme", choices=("leapfrog", "yoshida4"), default="yoshida4")
    s.add_argument("--record-every", type=int, default=10)
    s.add_argument("--out", default="simulate_out", help="output directory")

    h = sp.add_parser("hamiltonian", help="assemble and evaluate an enhanced Hamiltonian")
    h.add_argument("--gamma", type=float, default=0.0)
    _physical(h)
    h.add_argument("--point", type=_point, default="0")
    h.add_argument("--dump-discrepancies", action="store_true")
    h.add_argument("--out")
    return ap


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _params(a) -> PhysicalParams:
    return PhysicalParams(m=a.m, varpi=a.varpi, g=a.g, hbar=a.hbar, Omega=a.omega)


def cmd_moments(a) -> int:
    table = moment_table(FiducialSpec.of(a.gamma, a.omega, a.hbar))
    if a.format == "json":
        _emit(table.to_json(indent=2, sort_keys=True) + "\n", a.out)
    else:
        _emit("name,value\n" + "".join(f"{k},{v!r}\n" for k, v in table.to_dict().items()), a.out)
    return 0


def cmd_verify(a) -> int:
    cfg = QuadConfig(a.radial_nodes, a.angular_nodes, a.mc_samples, a.seed, a.rel_tol)
    suites = ("moments", "appendix", "angular", "fock") if a.suite == "all" else (a.suite,)
    report = {"config": dict(suite=a.suite, gamma=a.gamma, lam=a.lam, rel_tol=a.rel_tol,
                             mc_samples=0 if a.no_mc else a.mc_samples, seed=a.seed,
                             radial_nodes=a.radial_nodes, angular_nodes=a.angular_nodes,
                             smax=a.smax, dim=a.dim)}
    for suite in suites:
        rows = []
        if suite == "moments":
            for g in a.gamma:
                for lam in a.lam:
                    rows += verify_moments(g, lam, cfg, mc=not a.no_mc)
        elif suite == "appendix":
            for g in a.gamma:
                rows += verify_appendix(g, a.smax, a.appendix_tol)
        elif suite == "angular":
            rows = verify_angular(seed=a.seed)
        else:
            rows = verify_fock(a.dim, seed=a.seed)
        report[suite] = rows
    ok = all(all_passed(report[s]) for s in suites)
    report["passed"] = ok
    _emit(_dumps(report), a.out)
    failed = sum(not r["pass"] for s in suites for r in report[s])
    print(f"verify: {'PASS' if ok else 'FAIL'} ({failed} failing checks)", file=sys.stderr)
    return 0 if ok else 1


def cmd_simulate(a) -> int:
    params = _params(a)
    hs = [enhanced_hamiltonian(g, params) for g in a.gamma]
    x0 = np.array(a.x0)
    omega = characteristic_frequency(hs[0], x0)
    if (a.dt is None or a.t_end is None) and omega <= 0:
        raise UsageError("no oscillation frequency at x0; give --dt and --t-end")
    period = 2.0 * math.pi / omega if omega > 0 else None
    cfg = IntegratorConfig(dt=a.dt if a.dt is not None else period / 1000.0,
                           t_end=a.t_end if a.t_end is not None else 10.0 * period,
                           scheme=a.scheme, record_every=a.record_every)
    report = compare_statistics(hs, x0, cfg)
    os.makedirs(a.out, exist_ok=True)
    comments = [X0_NOTE if a.x0 == _point(DEFAULT_X0) else "x0 supplied by the user",
                f"params m={params.m!r} varpi={params.varpi!r} g={params.g!r} hbar={params.hbar!r} "
                f"Omega={params.Omega!r}",
                f"integrator scheme={cfg.scheme} dt={cfg.dt!r} t_end={cfg.t_end!r} "
                f"record_every={cfg.record_every}"]
    files = []
    for g, traj in zip(a.gamma, report.trajectories):
        name = f"trajectory_gamma_{g!r}.csv"
        write_csv(traj, os.path.join(a.out, name), comments + [f"gamma={g!r}"])
        files.append(name)
    summary = report.summary()
    summary.update(files=files, x0=list(a.x0), x0_note=comments[0],
                   params=dict(m=params.m, varpi=params.varpi, g=params.g, hbar=params.hbar, Omega=params.Omega),
                   integrator=dict(scheme=cfg.scheme, dt=cfg.dt, t_end=cfg.t_end, record_every=cfg.record_every))
    with open(os.path.join(a.out, "comparison.json"), "w", newline="") as fh:
        fh.write(_dumps(summary))
    print(f"simulate: wrote {len(files)} trajectories to {a.out}; max pairwise distance "
          f"{summary['max_distance']:.3e}", file=sys.stderr)
    return 0


def cmd_hamiltonian(a) -> int:
    params = _params(a)
    h = enhanced_hamiltonian(a.gamma, params)
    x = np.array(a.point)
    out = dict(gamma=a.gamma,
               params=dict(m=params.m, varpi=params.varpi, g=params.g, hbar=params.hbar, Omega=params.Omega),
               coefficients=h.dump(), point=list(a.point),
               value=eval_hamiltonian(h, x), classical_value=classical_limit(h, x))
    if a.dump_discrepancies:
        out["discrepancies"] = discrepancy_report(h)
    _emit(_dumps(out), a.out)
    return 0


COMMANDS = {"moments": cmd_moments, "verify": cmd_verify, "simulate": cmd_simulate,
            "hamiltonian": cmd_hamiltonian}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    try:
        if known.config:
            conf = read_config(known.config)
            subs = parser._subparsers._group_actions[0].choices  # noqa: SLF001
            for name, sub in subs.items():
                dests = {act.dest for act in sub._actions}  # noqa: SLF001
                sub.set_defaults(**{k: v for k, v in conf.items() if k in dests})
            every = set().union(*({act.dest for act in s._actions} for s in subs.values()))  # noqa: SLF001
            unknown = sorted(set(conf) - every)
            if unknown:
                raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    except (OSError, UsageError) as exc:
        print(f"eqcalc: error: {exc}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return COMMANDS[args.command](args)
    except (DomainError, UsageError, InconsistencyError) as exc:
        if isinstance(exc, InconsistencyError) and args.command == "simulate":
            print(f"eqcalc: check failed: {exc}", file=sys.stderr)
            return 1
        print(f"eqcalc: error: {exc}", file=sys.stderr)
        return 2
    except BlowUpError as exc:
        print(f"eqcalc: integrator blew up: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
