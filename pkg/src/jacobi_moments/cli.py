"""Command-line front end.

Every subcommand takes its parameters as flags, from a JSON file passed with
``--config``, or both; flags win.  Exit codes: 0 success, 2 usage or parameter
error, 3 numeric failure, 1 I/O failure.  Worker threads come from
JACOBI_MOMENTS_THREADS and never change results.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import arith, moments, painleve
from .ensemble import Group, sample_jacobi_batch, write_samples_csv
from .jacobi import JacobiParams

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

EULER_CLAIM = "EULER_AS"
EULER_GRID = (10**4, 10**5, 10**6)


class UsageError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    """One run: the subcommand, its parameters and the seed.  Round-trips through JSON."""

    command: str
    params: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        raw = json.loads(text)
        if not isinstance(raw, dict) or "command" not in raw:
            raise UsageError("config must be a JSON object with a 'command' field")
        return cls(raw["command"], dict(raw.get("params", {})))

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        return cls.from_json(Path(path).read_text())


# defaults per subcommand; a flag left unset falls back to the config file, then here
DEFAULTS = {
    "sample": {"group": None, "a": None, "b": None, "n": None, "reps": 1, "seed": 0, "out": None},
    "report": {"claim": None, "grid": None, "settings": {}, "out": None, "format": "csv"},
    "painleve": {
        "a": None,
        "t_max": 5.0,
        "init_mode": "McMatched",
        "tol": 1e-8,
        "n": 800,
        "b": 0.5,
        "reps": 100_000,
        "seed": 20_240_801,
        "check_seed": 7_070_707,
        "out": None,
    },
    "euler": {"s": None, "prime_limit": 10**6},
    "moments": {
        "statistic": "M",
        "a": None,
        "b": None,
        "n": None,
        "h": 1,
        "method": "exact",
        "reps": 10_000,
        "seed": 0,
    },
}


def _grid(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid must be comma-separated integers, got {text!r}") from exc


def _setting(text: str) -> tuple[str, object]:
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"settings take the form key=value, got {text!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jacobi-moments", description="Jacobi ensemble moment experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file; flags given here override it")
        return p

    p = add("sample", "write ensemble draws as CSV")
    p.add_argument("--group", choices=["sp", "so", "Sp", "SO"])
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")

    p = add("report", "tabulate a limit claim over N")
    p.add_argument("--claim", choices=[c.value for c in moments.Claim] + [EULER_CLAIM])
    p.add_argument("--grid", type=_grid, help="comma-separated N values (prime limits for EULER_AS)")
    p.add_argument("--set", dest="settings", type=_setting, action="append", metavar="KEY=VALUE")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"])

    p = add("painleve", "solve the sigma-PIII equation")
    p.add_argument("--a", type=float)
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--init-mode", dest="init_mode", choices=[m.value for m in painleve.InitMode])
    p.add_argument("--tol", type=float)
    p.add_argument("--n", type=int, help="N for the Monte Carlo oracle")
    p.add_argument("--b", type=float, help="b for the Monte Carlo oracle")
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int, help="seed of the fitting oracle")
    p.add_argument("--check-seed", dest="check_seed", type=int, help="seed of the independent check oracle")
    p.add_argument("--out")

    p = add("euler", "truncated Euler product for a_s")
    p.add_argument("--s", type=float)
    p.add_argument("--prime-limit", dest="prime_limit", type=int)

    p = add("moments", "one moment of M_N or Z_N")
    p.add_argument("--statistic", choices=[s.value for s in moments.Statistic])
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--method", choices=["exact", "mc"])
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int)
    return parser


def resolve(args: argparse.Namespace) -> ExperimentConfig:
    """Merge defaults, the config file and explicit flags, in that order."""
    params = dict(DEFAULTS[args.command])
    if args.config:
        cfg = ExperimentConfig.load(args.config)
        if cfg.command != args.command:
            raise UsageError(f"config is for '{cfg.command}', not '{args.command}'")
        unknown = set(cfg.params) - set(params)
        if unknown:
            raise UsageError(f"unknown config keys for {args.command}: {sorted(unknown)}")
        params.update(cfg.params)
    for key in DEFAULTS[args.command]:
        value = getattr(args, key, None)
        if value is None:
            continue
        if key == "settings":
            params["settings"] = {**params.get("settings", {}), **dict(value)}
        else:
            params[key] = value
    return ExperimentConfig(args.command, params)


def _require(params: dict, *keys):
    missing = [k for k in keys if params.get(k) is None]
    if missing:
        raise UsageError("missing required parameter(s): " + ", ".join(missing))


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_sample(p: dict) -> int:
    _require(p, "n", "out")
    if p["group"] is not None:
        if p["a"] is not None or p["b"] is not None:
            raise UsageError("give either --group or --a/--b, not both")
        params = Group.parse(p["group"]).params
    else:
        _require(p, "a", "b")
        params = JacobiParams(p["a"], p["b"])
    rows = sample_jacobi_batch(params, p["n"], p["reps"], p["seed"])
    write_samples_csv(p["out"], rows, params, p["seed"])
    return EXIT_OK


def _euler_report(grid, settings) -> tuple[str, str, bool, str]:
    s = float(settings.get("s", 1.0))
    grid = list(grid or EULER_GRID)
    results = [arith.euler_a_s(s, P) for P in grid]
    ok = all(abs(r.log_value - q.log_value) < q.tail_bound for q, r in zip(results, results[1:]))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["claim", "prime_limit", "log_a_s", "a_s", "tail_bound"])
    for r in results:
        w.writerow([EULER_CLAIM, r.prime_limit, repr(r.log_value), repr(r.value), repr(r.tail_bound)])
    payload = {"claim": EULER_CLAIM, "settings": {"s": s}, "rows": [r.to_dict() for r in results]}
    return buf.getvalue(), _json(payload), ok, "ladder changes within tail bounds: " + str(ok)


def cmd_report(p: dict) -> int:
    _require(p, "claim")
    if p["claim"] == EULER_CLAIM:
        csv_text, json_text, ok, msg = _euler_report(p["grid"], p["settings"])
    else:
        report = moments.convergence_report(p["claim"], p["grid"], p["settings"])
        csv_text, json_text = report.to_csv(), report.to_json() + "\n"
        ok, msg = moments.judge(report)
    _emit(csv_text if p["format"] == "csv" else json_text, p["out"])
    print(f"{'PASS' if ok else 'FAIL'} {p['claim']}: {msg}", file=sys.stderr if not p["out"] else sys.stdout)
    return EXIT_OK


def cmd_painleve(p: dict) -> int:
    _require(p, "a")
    a, t_max = float(p["a"]), float(p["t_max"])
    if not t_max > 0:
        raise UsageError("t_max must be positive")
    mc = painleve.McMatchConfig(n=p["n"], b=p["b"], reps=p["reps"], seed=p["seed"])
    mode = painleve.InitMode(p["init_mode"])
    summary: dict = {}
    data = None
    if mode is not painleve.InitMode.SERIES_FIT:
        data = painleve.mc_laplace_data(JacobiParams(a, mc.b), mc.n, mc.fit_t, mc.reps, mc.seed)
    if mode is painleve.InitMode.MC_MATCHED:
        sol = painleve.solve_sigma_p3(a, t_max, mode, p["tol"], mc=mc, data=data)
        matched = sol
    else:
        sol = painleve.solve_sigma_p3(a, t_max, mode, p["tol"], mc=mc)
        matched = None
    summary["solution"] = sol.metadata()
    summary["residual_max"] = sol.max_residual
    summary["residual_below_tol"] = bool(sol.max_residual <= sol.tol)

    if mode is painleve.InitMode.MC_MATCHED:
        # compare against an oracle the fit never saw
        check = painleve.mc_laplace_data(JacobiParams(a, mc.b), mc.n, mc.fit_t, mc.reps, p["check_seed"])
        rows = []
        for t, f, se in zip(check.t, check.f, check.f_se):
            if t <= sol.t_max:
                model = painleve.laplace_from_tau(sol, t)
                rows.append({"t": t, "solution": model, "mc": f, "mc_se": se, "z": (model - f) / se})
        summary["oracle_check"] = {"seed": check.seed, "n": check.n, "reps": check.reps, "rows": rows}
    if mode is painleve.InitMode.PAPER_BC:
        matched = painleve.solve_sigma_p3(a, t_max, painleve.InitMode.MC_MATCHED, p["tol"], mc=mc, data=data)
        summary["discrepancy"] = json.loads(painleve.paper_bc_discrepancy(matched, data, p["tol"], paper_bc=sol).to_json())

    if p["out"]:
        Path(p["out"]).write_text(sol.to_csv())
    else:
        sys.stdout.write(sol.to_csv())
    text = _json(summary)
    if p["out"]:
        Path(p["out"]).with_suffix(".json").write_text(text)
        sys.stdout.write(text)
    else:
        sys.stderr.write(text)
    return EXIT_OK


def cmd_euler(p: dict) -> int:
    _require(p, "s")
    r = arith.euler_a_s(p["s"], p["prime_limit"])
    sys.stdout.write(_json(r.to_dict()))
    return EXIT_OK


def cmd_moments(p: dict) -> int:
    _require(p, "a", "b", "n")
    params = JacobiParams(p["a"], p["b"])
    if p["method"] == "exact":
        est = moments.exact_moment_via_expansion(params, p["n"], p["statistic"], p["h"])
    else:
        est = moments.mc_moment(params, p["n"], p["statistic"], p["h"], p["reps"], p["seed"])
    out = {
        "statistic": moments.Statistic(p["statistic"]).value,
        "a": params.a,
        "b": params.b,
        "n": p["n"],
        "h": p["h"],
        "value": est.value,
        "std_error": est.std_error,
        "n_samples": est.n_samples,
        "method": est.method.value,
    }
    sys.stdout.write(_json(out))
    return EXIT_OK


COMMANDS = {
    "sample": cmd_sample,
    "report": cmd_report,
    "painleve": cmd_painleve,
    "euler": cmd_euler,
    "moments": cmd_moments,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = resolve(args)
        return COMMANDS[args.command](config.params)
    except (ArithmeticError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, TypeError, KeyError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
