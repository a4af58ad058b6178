"""Command-line front end: ``kgspec table1|sweep|scatter|verify``.

Exit codes: 0 success, 1 usage or configuration error, 2 check failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from . import bound as B
from . import oracle as O
from . import scatter as S
from . import verify as V
from .config import RunConfig, load, load_preset
from .errors import BelowThreshold, ConfigError, KGSpecError
from .potential import MassParams
from .reference import PRINT_ANOMALIES, REFERENCE_PARAMS, TABLE_ROWS

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2
NO_ROOT = "no_root"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return format(x, ".12g") if isinstance(x, float) else str(x)


def write_csv(header: list[str], rows: list[list], out: str | None) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    text = buf.getvalue()
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _map(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))  # map keeps input order


def _split_branches(energies: list[float], centre: float) -> tuple[float | None, float | None]:
    """(upper, lower) branch energies.

    With two or more roots the largest and smallest are used; a lone root is
    assigned by its side of the gap centre.
    """
    if not energies:
        return None, None
    if len(energies) >= 2:
        return max(energies), min(energies)
    e = energies[0]
    return (e, None) if e >= centre else (None, e)


def _solve_row(args):
    cfg, qn, solver = args
    if solver == "oracle":
        es = O.oracle_bound_energies(qn, cfg.potential, cfg.mass, grid=cfg.grid, convention=cfg.omega_convention)
    else:
        es = [s.energy for s in B.solve_bound_energies(qn, cfg.potential, cfg.mass, cfg.search,
                                                       convention=cfg.omega_convention)]
    return es


def cmd_table1(cfg: RunConfig, args) -> int:
    tol = args.tol if args.tol is not None else cfg.tolerance
    ref = {(n, l, D): (ep, em) for n, l, D, ep, em in TABLE_ROWS}
    qns = list(cfg.quantum) if cfg.quantum else [B.QuantumNumbers(n, l, D) for n, l, D, *_ in TABLE_ROWS]
    results = _map(_solve_row, [(cfg, qn, args.solver) for qn in qns], args.jobs)
    centre = cfg.potential.V1
    rows, misses, worst = [], 0, 0.0
    for qn, es in zip(qns, results):
        ep, em = _split_branches(es, centre)
        rp, rm = ref.get((qn.n, qn.l, qn.D), (None, None))
        errs = []
        for got, want in ((ep, rp), (em, rm)):
            if want is None:
                errs.append(None)
            elif got is None:
                errs.append(math.inf)
            else:
                errs.append(abs(got - want))
        for e in errs:
            if e is not None:
                worst = max(worst, e)
                if not e < tol:
                    misses += 1
        rows.append([qn.n, qn.l, qn.D, NO_ROOT if ep is None else ep, NO_ROOT if em is None else em,
                     rp, rm, *errs])
    write_csv(["n", "l", "D", "E_plus", "E_minus", "E_plus_ref", "E_minus_ref", "abs_err_plus", "abs_err_minus"],
              rows, args.out or cfg.output)
    if misses:
        print(f"table1: {misses} reference entries missed at tol {tol:g} (worst |err| = {worst:.6g}); "
              f"reference not reproduced with omega convention '{cfg.omega_convention}' "
              f"(known print anomalies: {len(PRINT_ANOMALIES)})", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def _with_value(cfg: RunConfig, var: str, value: float) -> RunConfig:
    if var == "m1":
        return replace(cfg, mass=MassParams(cfg.mass.m0, value))
    return replace(cfg, potential=replace(cfg.potential, **{var: value}))


def _sweep_row(args):
    cfg, qn, solver = args
    try:
        return _solve_row((cfg, qn, solver))
    except KGSpecError:
        return []


def cmd_sweep(cfg: RunConfig, args) -> int:
    if cfg.sweep is None:
        print("sweep: config needs a 'sweep' block", file=sys.stderr)
        return EXIT_USAGE
    qns = list(cfg.quantum) if cfg.quantum else [B.QuantumNumbers(0, 0, 3)]
    tasks, keys = [], []
    for v in cfg.sweep.values():
        try:
            c = _with_value(cfg, cfg.sweep.variable, v)
        except KGSpecError as exc:
            print(f"sweep: invalid value {cfg.sweep.variable}={v}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        for qn in qns:
            tasks.append((c, qn, args.solver))
            keys.append((v, qn))
    results = _map(_sweep_row, tasks, args.jobs)
    rows = []
    for (v, qn), task, es in zip(keys, tasks, results):
        ep, em = _split_branches(es, task[0].potential.V1)
        status = "ok" if (ep is not None or em is not None) else NO_ROOT
        rows.append([cfg.sweep.variable, v, qn.n, qn.l, qn.D, ep, em, status])
    write_csv(["variable", "value", "n", "l", "D", "E_plus", "E_minus", "status"], rows, args.out or cfg.output)
    return EXIT_OK


def _scatter_setup(cfg: RunConfig):
    if cfg.case == "hulthen":
        return cfg.hulthen.general(), MassParams(cfg.case_m0, 0.0)
    if cfg.case == "woods_saxon":
        return cfg.woods_saxon.hulthen().general(), MassParams(cfg.case_m0, 0.0)
    return cfg.potential, cfg.mass


def _scatter_row(args):
    cfg, qn, E, with_oracle = args
    p, m = _scatter_setup(cfg)
    k = S.wave_number(E, qn, p, m, cfg.omega_convention)
    raw = S.phase_shift(E, qn, p, m, raw=True, convention=cfg.omega_convention)
    red = S.phase_shift(E, qn, p, m, convention=cfg.omega_convention)
    norm = S.scatter_normalization(E, qn, p, m, cfg.omega_convention)
    d_or = None
    if with_oracle:
        try:
            d_or = O.oracle_phase_shift(E, qn, p, m, grid=cfg.grid, convention=cfg.omega_convention)
        except KGSpecError as exc:
            d_or = f"error: {exc}"
    row = [qn.n, qn.l, qn.D, E, k, raw, red, d_or, norm]
    if cfg.case == "hulthen":
        row += list(S.hulthen_closed_form(cfg.hulthen, E, qn, cfg.case_m0))
    elif cfg.case == "woods_saxon":
        row += list(S.woods_saxon_closed_form(cfg.woods_saxon, E, qn, cfg.case_m0))
    return row


def cmd_scatter(cfg: RunConfig, args) -> int:
    if not cfg.energies:
        print("scatter: config needs a 'scatter' block with energies", file=sys.stderr)
        return EXIT_USAGE
    p, m = _scatter_setup(cfg)
    qns = list(cfg.quantum) if cfg.quantum else [B.QuantumNumbers(0, 0, 3)]
    tasks = []
    for qn in qns:
        for E in cfg.energies:
            try:
                S.wave_number(E, qn, p, m, cfg.omega_convention)
            except BelowThreshold:
                print(f"scatter: skipping E = {E:g} (inside the gap)", file=sys.stderr)
                continue
            tasks.append((cfg, qn, E, not args.no_oracle))
    if not tasks:
        print("scatter: every requested energy lies inside the gap", file=sys.stderr)
        return EXIT_USAGE
    rows = _map(_scatter_row, tasks, args.jobs)
    header = ["n", "l", "D", "E", "k", "delta_raw", "delta_reduced", "delta_oracle", "N"]
    if cfg.case != "general":
        header += ["delta_closed", "N_closed"]
    write_csv(header, rows, args.out or cfg.output)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    qns = list(cfg.quantum) if cfg.quantum else [B.QuantumNumbers(0, 0, 3), B.QuantumNumbers(1, 0, 1),
                                                  B.QuantumNumbers(2, 1, 4)]
    points = V.panel() if args.panel else [V.PanelPoint(cfg.potential, cfg.mass, qn) for qn in qns]
    if args.report_only == "approximation":
        rep = V.approximation_report(points)
        for row in rep["centrifugal"]:
            print(f"alpha r = {row['alpha_r']:<6g} relative error = {row['relative_error']:.3e} "
                  f"(alpha r)^2/3 = {row['taylor_bound']:.3e}")
        for row in rep["energies"]:
            print(f"{row['point']}: approximated {row['approximated']} exact-centrifugal {row['exact_centrifugal']}")
        _dump_json(rep, args.out)
        return EXIT_OK
    checks = V.run_checks(points, convention=cfg.omega_convention, corrupt_omega=args.corrupt_omega,
                          with_oracle=not args.no_oracle, with_scattering=not args.no_scattering, grid=cfg.grid)
    for c in checks:
        print(c.line())
    rep = V.as_report(checks)
    _dump_json(rep, args.out)
    return EXIT_OK if rep["passed"] else EXIT_CHECK


def _dump_json(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, default=str)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="kgspec", description="Klein-Gordon bound spectra and phase shifts.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--tol", type=float, help="acceptance tolerance (table1)")
    common.add_argument("--solver", choices=("analytic", "oracle"), default="analytic")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--out", help="output file (CSV, or JSON for verify)")
    common.add_argument("--omega", choices=B.OMEGA_CONVENTIONS, help="override the omega convention")
    sub.add_parser("table1", parents=[common], help="reference-table regression")
    sub.add_parser("sweep", parents=[common], help="energy vs one parameter")
    sc = sub.add_parser("scatter", parents=[common], help="phase shifts over an energy range")
    sc.add_argument("--no-oracle", action="store_true", help="skip the numerical phase-shift column")
    vf = sub.add_parser("verify", parents=[common], help="cross-check report")
    vf.add_argument("--panel", action="store_true", help="run on the built-in q/alpha panel")
    vf.add_argument("--no-oracle", action="store_true")
    vf.add_argument("--no-scattering", action="store_true")
    vf.add_argument("--corrupt-omega", action="store_true", help="debug: flip the sign of omega2 in the Riccati check")
    vf.add_argument("--report-only", choices=("approximation",))
    return ap


_DEFAULT_PRESET = {"table1": "table1", "sweep": "table1", "scatter": "hulthen", "verify": "table1"}
COMMANDS = {"table1": cmd_table1, "sweep": cmd_sweep, "scatter": cmd_scatter, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("kgspec: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.tol is not None and not args.tol > 0:
        print("kgspec: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = load(args.config) if args.config else load_preset(_DEFAULT_PRESET[args.command])
        if args.omega:
            cfg = replace(cfg, omega_convention=args.omega)
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"kgspec: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"kgspec: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


__all__ = ["main", "build_parser", "REFERENCE_PARAMS"]
