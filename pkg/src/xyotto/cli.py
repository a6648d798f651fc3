"""Command-line front end: ``xyotto {spectrum,point,sweep,critical,verify}``.

Exit status: 0 success, 1 verification failure, 2 invalid parameters,
3 I/O failure, 4 search failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict

from .analysis import FIG1, CycleTemplate, InvalidGrid, SearchFailed, critical_report, evaluate, find_j_min, sweep
from .analysis import verify_suite
from .qinfo import SupportMismatch
from .thermo import InvalidTemperature
from .xymodel import InvalidParams, ModelParams, analytic_spectrum

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO, EXIT_SEARCH = 0, 1, 2, 3, 4

CSV_FIELDS = [
    "j2", "W_AB", "term_entropy", "term_T1_relent", "term_T2_relent", "Q2", "Q4",
    "w_A", "w_B", "deficit", "S1", "S2", "mutual_info_2", "concurrence_2",
    "p21", "p22", "p23", "p24",
]  # fmt: skip

CONFIG_KEYS = ("gamma", "eta", "t1", "j1", "t2", "j2", "j", "j2_min", "j2_max", "steps", "format", "out")
DEFAULTS = {"gamma": FIG1.gamma, "eta": FIG1.eta, "t1": FIG1.T1, "j1": FIG1.J1, "t2": FIG1.T2, "format": "json"}


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    # repr is the shortest string that round-trips, never more than 17 digits
    return repr(float(x))


def rows_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for rec in records:
        w.writerow([fmt(rec[k]) for k in CSV_FIELDS])
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _add_common(p: argparse.ArgumentParser, engine: bool = True) -> None:
    p.add_argument("--config", help="JSON file with the same keys as the flags; flags win")
    p.add_argument("--gamma", type=float)
    p.add_argument("--eta", type=float)
    if engine:
        p.add_argument("--t1", type=float)
        p.add_argument("--j1", type=float)
        p.add_argument("--t2", type=float)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", help="output file (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xyotto", description="Quantum Otto cycle on a two-qubit XY chain.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="closed-form eigensystem of the Hamiltonian")
    _add_common(p, engine=False)
    p.add_argument("--j", type=float, help="coupling J (default 8)")

    p = sub.add_parser("point", help="every quantity at one J2")
    _add_common(p)
    p.add_argument("--j2", type=float, required=False)

    p = sub.add_parser("sweep", help="quantities on a uniform J2 grid")
    _add_common(p)
    p.add_argument("--j2-min", dest="j2_min", type=float)
    p.add_argument("--j2-max", dest="j2_max", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--workers", type=int, default=None, help="threads for row evaluation")

    p = sub.add_parser("critical", help="J_min, work maxima, critical concurrence, separability threshold")
    _add_common(p)

    sub.add_parser("verify", help="run the oracle cross-checks and invariants")
    return parser


def resolve(args: argparse.Namespace) -> dict:
    cfg: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except OSError as exc:
            raise OSError(f"cannot read config {args.config}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"config {args.config} is not valid JSON: {exc.msg}") from exc
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
        unknown = set(cfg) - set(CONFIG_KEYS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    merged = dict(DEFAULTS)
    merged.update(cfg)
    for key, val in vars(args).items():
        if val is not None and key in CONFIG_KEYS:
            merged[key] = val
    return merged


def template_from(c: dict) -> CycleTemplate:
    try:
        return CycleTemplate(
            gamma=float(c["gamma"]), eta=float(c["eta"]), J1=float(c["j1"]), T1=float(c["t1"]), T2=float(c["t2"])
        )
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_spectrum(c: dict) -> str:
    params = ModelParams(gamma=float(c["gamma"]), J=float(c.get("j", 8.0)), eta=float(c["eta"]))
    spec = analytic_spectrum(params)
    doc = {
        "gamma": params.gamma,
        "eta": params.eta,
        "J": params.J,
        "B_m": params.B_m,
        "calB": params.calB,
        "energies": [float(e) for e in spec.energies],
        "states": [[float(z.real) for z in v] for v in spec.states],
    }
    return to_json(doc)


def cmd_point(c: dict) -> str:
    if c.get("j2") is None:
        raise UsageError("point needs --j2")
    tpl = template_from(c)
    rec = evaluate(tpl, float(c["j2"])).as_record()
    if c["format"] == "csv":
        return rows_to_csv([rec])
    return to_json(rec)


def cmd_sweep(c: dict, workers: int | None = None) -> str:
    tpl = template_from(c)
    lo = find_j_min(tpl) if c.get("j2_min") is None else float(c["j2_min"])
    hi = tpl.J1 if c.get("j2_max") is None else float(c["j2_max"])
    steps = 1000 if c.get("steps") is None else c["steps"]
    if isinstance(steps, float) and steps.is_integer():
        steps = int(steps)
    records = [r.as_record() for r in sweep(tpl, lo, hi, steps, workers=workers)]
    if c["format"] == "csv":
        return rows_to_csv(records)
    return to_json(records)


def cmd_critical(c: dict) -> str:
    return to_json(asdict(critical_report(template_from(c))))


def cmd_verify() -> tuple[str, bool]:
    checks = verify_suite()
    lines = [
        f"{ch.name:<40} {ch.value:.3e} <= {ch.tolerance:.0e}  {'PASS' if ch.passed else 'FAIL'}" for ch in checks
    ]
    ok = all(ch.passed for ch in checks)
    lines.append(f"{sum(ch.passed for ch in checks)}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n", ok


def emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        text, ok = cmd_verify()
        sys.stdout.write(text)
        return EXIT_OK if ok else EXIT_VERIFY
    try:
        c = resolve(args)
        if args.command == "spectrum":
            text = cmd_spectrum(c)
        elif args.command == "point":
            text = cmd_point(c)
        elif args.command == "sweep":
            text = cmd_sweep(c, workers=args.workers)
        else:
            text = cmd_critical(c)
    except (UsageError, InvalidParams, InvalidGrid, InvalidTemperature) as exc:
        print(f"xyotto: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SupportMismatch as exc:
        print(f"xyotto: error: occupations underflow at these parameters ({exc})", file=sys.stderr)
        return EXIT_USAGE
    except SearchFailed as exc:
        print(f"xyotto: search failed: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except OSError as exc:
        print(f"xyotto: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        emit(text, c.get("out"))
    except OSError as exc:
        print(f"xyotto: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
