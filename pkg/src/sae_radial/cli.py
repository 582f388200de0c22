"""Command-line surface.

Subcommands: classify, spectrum, oracle-verify, sweep, specfun-eval.
Reports are deterministic JSON (fixed key order, floats at 17 significant
digits) on stdout; sweeps can emit CSV instead.  A `key = value` config
file supplies defaults and explicit flags win.  Exit codes: 0 success,
1 usage error, 2 regime/precondition error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import oracle, specfun, spectra
from .errors import SaeRadialError
from .singular import RadialProblem, Regime, analyze, oscillator_tail, sinh_squared_problem
from .spectra import SAEParameter

OUTDIR_ENV = "SAE_RADIAL_OUTDIR"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REGIME = 2
EXIT_VERIFY = 3

COMMANDS = ("classify", "spectrum", "oracle-verify", "sweep", "specfun-eval")


class _UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """One fully resolved invocation.

    Flags and config-file lines both land here; `run` validates and
    dispatches.  tau and theta are mutually exclusive inputs.
    """

    command: str
    m: float = 1.0
    l: int = 0
    v0: float = 0.0
    coulomb: float = 0.0
    tail: str = ""
    tau: Optional[str] = None
    theta: Optional[float] = None
    count: int = 3
    fall_c: float = 0.0
    n_min: int = 0
    n_max: int = 2
    tol: float = 1e-6
    points_per_decade: int = 2000
    sweep_param: str = ""
    sweep_min: float = 0.0
    sweep_max: float = 0.0
    sweep_count: int = 0
    sweep_scale: str = "linear"
    fn: str = ""
    args: tuple = ()
    format: str = "json"
    out: str = ""
    config: str = ""

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise _UsageError(f"command must be one of {COMMANDS}, got {self.command!r}")
        if self.tau is not None and self.theta is not None:
            raise _UsageError("tau and theta are mutually exclusive")
        if self.command == "sweep" and self.sweep_count < 2:
            raise _UsageError("sweep needs at least 2 grid points")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# deterministic serialization


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def dump_json(obj, indent: int = 0) -> str:
    """Minimal JSON emitter with deterministic float formatting and
    insertion-ordered keys."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [
            f'{pad}  "{k}": {dump_json(v, indent + 1).lstrip()}' for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [f"{pad}  {dump_json(v, indent + 1).lstrip()}" for v in obj]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    s = str(obj).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


# ---------------------------------------------------------------------------
# argument plumbing


def _add_problem_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=float, default=1.0, help="mass (hbar = 1 units)")
    p.add_argument("--l", type=int, default=0, help="orbital quantum number")
    p.add_argument("--v0", type=float, default=0.0, help="inverse-square strength (positive = attractive)")
    p.add_argument("--coulomb", type=float, default=0.0, help="Coulomb strength (negative = attractive)")
    p.add_argument(
        "--tail",
        default="",
        help="regular tail: 'oscillator:G' or 'sinh2:STRENGTH:ALPHA'",
    )


def _add_tau_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--tau", default=None, help="extension parameter (float, 'inf' or '-inf')")
    g.add_argument("--theta", type=float, default=None, help="canonical angle, tau = tan(theta)")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default="", help="output file (relative paths resolve against $%s)" % OUTDIR_ENV)
    p.add_argument("--config", default="", help="key = value defaults file; flags win")


def _parse_config_file(path: str) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise _UsageError(f"bad config line: {raw.strip()!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = val
    return values


def _build_problem(args) -> RadialProblem:
    tail_spec = (args.tail or "").strip()
    if not tail_spec:
        return RadialProblem(m=args.m, l=args.l, v0=args.v0, coulomb=args.coulomb)
    kind, _, rest = tail_spec.partition(":")
    if kind == "oscillator":
        g = float(rest)
        return RadialProblem(
            m=args.m, l=args.l, v0=args.v0, coulomb=args.coulomb,
            tail=oscillator_tail(g), tail_label=tail_spec,
        )
    if kind == "sinh2":
        strength, alpha = (float(tok) for tok in rest.split(":"))
        if args.v0 not in (0.0, strength / alpha**2):
            raise _UsageError("sinh2 tail fixes v0 = strength/alpha^2; leave --v0 at 0")
        return sinh_squared_problem(args.m, args.l, strength, alpha)
    raise _UsageError(f"unknown tail kind {kind!r}")


def _build_tau(args) -> SAEParameter:
    if args.theta is not None:
        return SAEParameter.from_theta(args.theta)
    if args.tau is None:
        return SAEParameter.from_tau(0.0)
    text = str(args.tau).strip().lower()
    if text in ("inf", "+inf", "-inf"):
        return SAEParameter.from_tau(math.inf)
    return SAEParameter.from_tau(float(text))


def _problem_dict(args) -> dict:
    return {
        "m": args.m,
        "l": args.l,
        "v0": args.v0,
        "coulomb": args.coulomb,
        "tail": args.tail or "",
    }


def _analysis_dict(ana) -> dict:
    return {
        "gamma": ana.gamma,
        "p_squared": ana.p_squared,
        "p": ana.p,
        "imag_p": ana.imag_p,
        "exponents": list(ana.exponents) if ana.exponents else None,
        "regime": ana.regime.value,
        "anti_centrifugal": ana.anti_centrifugal,
    }


def _tau_dict(tau: SAEParameter) -> dict:
    return {"theta": tau.theta, "tau": tau.tau, "kind": tau.kind}


def _state_dict(s) -> dict:
    d = {"energy": s.energy, "n_r": s.n_r, "branch": s.branch, "source": s.source}
    if s.lam is not None:
        d["lambda"] = s.lam
    if s.tower_n is not None:
        d["tower_n"] = s.tower_n
    if s.total_mass is not None:
        d["total_mass"] = s.total_mass
    return d


def _spectrum_dict(result) -> dict:
    return {
        "states": [_state_dict(s) for s in result.states],
        "diagnostics": list(result.diagnostics),
    }


def _emit(args, text: str) -> None:
    if args.out:
        path = args.out
        if not os.path.isabs(path):
            path = os.path.join(os.environ.get(OUTDIR_ENV, "."), path)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# spectrum dispatch shared by `spectrum`, `oracle-verify`, `sweep`


def _compute_spectrum(problem: RadialProblem, tau: SAEParameter, args):
    ana = analyze(problem)
    if ana.regime is Regime.FALL_TO_CENTER:
        return spectra.fall_spectrum(
            problem, args.fall_c, (args.n_min, args.n_max)
        )
    if problem.coulomb < 0.0:
        if tau.is_standard:
            return spectra.closed_levels(problem, "standard", args.count - 1)
        if tau.is_additional:
            return spectra.closed_levels(problem, "additional", args.count - 1)
        return spectra.solve_attractive_coulomb(problem, tau, args.count)
    if problem.coulomb > 0.0:
        return spectra.solve_repulsive_coulomb(problem, tau, args.count)
    # coulomb = 0
    if tau.is_standard or tau.is_additional:
        return spectra.SpectrumResult(
            problem=problem, tau=tau, states=(),
            diagnostics=("no level for tau in {0, +-inf}",),
        )
    state = spectra.inverse_square_level(problem, tau)
    return spectra.SpectrumResult(problem=problem, tau=tau, states=(state,))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_classify(args) -> int:
    problem = _build_problem(args)
    report = {
        "config": _problem_dict(args),
        "analysis": _analysis_dict(analyze(problem)),
    }
    _emit(args, dump_json(report))
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    problem = _build_problem(args)
    tau = _build_tau(args)
    result = _compute_spectrum(problem, tau, args)
    report = {
        "config": {**_problem_dict(args), "tau": _tau_dict(tau), "count": args.count},
        "analysis": _analysis_dict(analyze(problem)),
        "spectrum": _spectrum_dict(result),
    }
    _emit(args, dump_json(report))
    return EXIT_OK


def _cmd_oracle_verify(args) -> int:
    problem = _build_problem(args)
    tau = _build_tau(args)
    ana = analyze(problem)
    if ana.regime is Regime.FALL_TO_CENTER:
        raise SaeRadialError("oracle verification not available in the fall regime")
    result = _compute_spectrum(problem, tau, args)
    verification = []
    worst = 0.0
    if result.states:
        energies = result.energies
        window = (1.5 * energies[0], energies[-1] / 3.0)
        oracle_result = oracle.find_levels(
            problem, tau, window, len(energies), points_per_decade=args.points_per_decade
        )
        oracle_e = oracle_result.energies
        for i, s in enumerate(result.states):
            if i < len(oracle_e):
                dev = abs(oracle_e[i] - s.energy) / abs(s.energy)
                worst = max(worst, dev)
                verification.append(
                    {
                        "energy_formula": s.energy,
                        "energy_oracle": oracle_e[i],
                        "rel_deviation": dev,
                        "node_count": oracle_result.states[i].n_r,
                    }
                )
            else:
                worst = math.inf
                verification.append(
                    {"energy_formula": s.energy, "energy_oracle": None, "rel_deviation": None}
                )
    report = {
        "config": {
            **_problem_dict(args),
            "tau": _tau_dict(tau),
            "count": args.count,
            "tolerance": args.tol,
        },
        "analysis": _analysis_dict(ana),
        "spectrum": _spectrum_dict(result),
        "verification": verification,
    }
    _emit(args, dump_json(report))
    return EXIT_OK if worst <= args.tol else EXIT_VERIFY


_SWEEPABLE = ("tau", "theta", "m", "v0", "coulomb")


def _cmd_sweep(args) -> int:
    if args.sweep_param not in _SWEEPABLE:
        raise _UsageError(f"sweep parameter must be one of {_SWEEPABLE}")
    lo, hi, n = args.sweep_min, args.sweep_max, args.sweep_count
    if args.sweep_scale == "geometric":
        if lo == 0.0 or hi == 0.0 or (lo < 0.0) != (hi < 0.0):
            raise _UsageError("geometric sweep needs same-sign nonzero endpoints")
        ratio = (hi / lo) ** (1.0 / (n - 1))
        grid = [lo * ratio**i for i in range(n)]
    else:
        grid = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    records = []
    for value in grid:
        view = argparse.Namespace(**vars(args))
        if args.sweep_param == "tau":
            view.tau, view.theta = value, None
        elif args.sweep_param == "theta":
            view.theta, view.tau = value, None
        else:
            setattr(view, args.sweep_param, value)
        record = {"param": args.sweep_param, "value": float(value)}
        try:
            problem = _build_problem(view)
            tau = _build_tau(view)
            result = _compute_spectrum(problem, tau, view)
            energies = result.energies
        except SaeRadialError as exc:
            record["error"] = str(exc)
            energies = []
        record["n_levels"] = len(energies)
        for i in range(args.count):
            record[f"e{i}"] = energies[i] if i < len(energies) else None
        records.append(record)
    if args.format == "csv":
        header = ["param", "value", "n_levels"] + [f"e{i}" for i in range(args.count)]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for rec in records:
            writer.writerow(
                [
                    rec["param"],
                    format(rec["value"], ".17g"),
                    rec["n_levels"],
                ]
                + [
                    "" if rec.get(f"e{i}") is None else format(rec[f"e{i}"], ".17g")
                    for i in range(args.count)
                ]
            )
        _emit(args, buf.getvalue().rstrip("\n"))
    else:
        report = {"config": {**_problem_dict(args), "count": args.count}, "sweep": records}
        _emit(args, dump_json(report))
    return EXIT_OK


_SPECFUN_TABLE = {
    "log_gamma": lambda a: specfun.log_gamma(a[0]).log_magnitude,
    "gamma": lambda a: specfun.gamma(a[0]),
    "gamma_ratio": lambda a: specfun.gamma_ratio(a[0], a[1]),
    "digamma": lambda a: specfun.digamma(a[0]),
    "kummer_m": lambda a: specfun.kummer_m(a[0], a[1], a[2]),
    "tricomi_psi": lambda a: specfun.tricomi_psi(a[0], a[1], a[2]),
    "whittaker_w": lambda a: specfun.whittaker_w(a[0], a[1], a[2]),
    "bessel_i": lambda a: specfun.bessel_i(a[0], a[1]),
    "bessel_k": lambda a: specfun.bessel_k(a[0], a[1]),
    "fp_lambda": lambda a: spectra.fp_lambda(a[0], a[1]),
    "scarf_b": lambda a: spectra.scarf_b(a[0], a[1], a[2]),
}


def _cmd_specfun_eval(args) -> int:
    fn = _SPECFUN_TABLE.get(args.fn)
    if fn is None:
        raise _UsageError(
            f"unknown function {args.fn!r}; choose from {sorted(_SPECFUN_TABLE)}"
        )
    value = fn([float(tok) for tok in args.args])
    _emit(args, dump_json({"fn": args.fn, "args": [float(t) for t in args.args], "value": value}))
    return EXIT_OK


# ---------------------------------------------------------------------------


def _build_parser():
    parser = _Parser(prog="sae-radial", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {}

    p_classify = sub.add_parser("classify", help="near-origin regime analysis")
    _add_problem_args(p_classify)
    _add_output_args(p_classify)
    p_classify.set_defaults(handler=_cmd_classify)

    p_spec = sub.add_parser("spectrum", help="closed-form / transcendental levels")
    _add_problem_args(p_spec)
    _add_tau_args(p_spec)
    _add_output_args(p_spec)
    p_spec.add_argument("--count", type=int, default=3)
    p_spec.add_argument("--fall-c", type=float, default=0.0, help="fall-regime phase constant")
    p_spec.add_argument("--n-min", type=int, default=0)
    p_spec.add_argument("--n-max", type=int, default=2)
    p_spec.set_defaults(handler=_cmd_spectrum)

    p_ver = sub.add_parser("oracle-verify", help="recompute each level by shooting")
    _add_problem_args(p_ver)
    _add_tau_args(p_ver)
    _add_output_args(p_ver)
    p_ver.add_argument("--count", type=int, default=3)
    p_ver.add_argument("--fall-c", type=float, default=0.0)
    p_ver.add_argument("--n-min", type=int, default=0)
    p_ver.add_argument("--n-max", type=int, default=2)
    p_ver.add_argument("--tol", type=float, default=1e-6)
    p_ver.add_argument("--points-per-decade", type=int, default=2000)
    p_ver.set_defaults(handler=_cmd_oracle_verify)

    p_sweep = sub.add_parser("sweep", help="spectrum along a parameter grid")
    _add_problem_args(p_sweep)
    _add_tau_args(p_sweep)
    _add_output_args(p_sweep)
    p_sweep.add_argument("--count", type=int, default=3)
    p_sweep.add_argument("--fall-c", type=float, default=0.0)
    p_sweep.add_argument("--n-min", type=int, default=0)
    p_sweep.add_argument("--n-max", type=int, default=2)
    p_sweep.add_argument("--sweep-param", required=True)
    p_sweep.add_argument("--sweep-min", type=float, required=True)
    p_sweep.add_argument("--sweep-max", type=float, required=True)
    p_sweep.add_argument("--sweep-count", type=int, required=True)
    p_sweep.add_argument("--sweep-scale", choices=("linear", "geometric"), default="linear")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_fun = sub.add_parser("specfun-eval", help="evaluate one kernel function")
    p_fun.add_argument("--fn", required=True)
    p_fun.add_argument("args", nargs="*")
    _add_output_args(p_fun)
    p_fun.set_defaults(handler=_cmd_specfun_eval)

    commands.update(
        classify=p_classify,
        spectrum=p_spec,
        **{"oracle-verify": p_ver},
        sweep=p_sweep,
        **{"specfun-eval": p_fun},
    )
    return parser, commands


def _apply_config(subparser, path: str) -> None:
    defaults = _parse_config_file(path)
    actions = {a.dest: a for a in subparser._actions}
    converted = {}
    for key, raw in defaults.items():
        if key not in actions:
            raise _UsageError(f"unknown config key {key!r}")
        act = actions[key]
        converted[key] = act.type(raw) if act.type is not None else raw
    subparser.set_defaults(**converted)


_HANDLERS = {
    "classify": _cmd_classify,
    "spectrum": _cmd_spectrum,
    "oracle-verify": _cmd_oracle_verify,
    "sweep": _cmd_sweep,
    "specfun-eval": _cmd_specfun_eval,
}


def run(config: RunConfig) -> int:
    """Execute one resolved configuration; returns the exit status."""
    return _HANDLERS[config.command](config)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, commands = _build_parser()
    try:
        # first pass only to find --config; then re-parse with its defaults
        probe, _ = parser.parse_known_args(argv)
        config_path = getattr(probe, "config", "")
        if config_path:
            _apply_config(commands[probe.command], config_path)
        args = parser.parse_args(argv)
        payload = {k: v for k, v in vars(args).items() if k != "handler"}
        if isinstance(payload.get("args"), list):
            payload["args"] = tuple(payload["args"])
        return run(RunConfig(**payload))
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SaeRadialError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGIME


if __name__ == "__main__":
    sys.exit(main())
