"""Command line front end: parameter sweeps, figure data and single points.

Exit codes: 0 success, 2 invalid input, 3 zero-probability post-selection,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from importlib import metadata
from pathlib import Path

import numpy as np

from .errors import DegenerateObjectiveWarning, DegenerateStateError, ValidationError
from .measures import concurrence, concurrence_ud, scaled_discord
from .optimize import q_state_dependent, q_state_independent
from .protocol import closed_form_rho
from .states import R_MAX, ProtocolParams

EXIT_OK, EXIT_VALIDATION, EXIT_DEGENERATE, EXIT_IO = 0, 2, 3, 4

VARIABLES = ("alpha", "p", "q", "r")
MEASURE_NAMES = ("concurrence", "scaled_discord", "success_probability", "n1", "n2")
Q_MODES = ("fixed", "si", "sd")
DOMAINS = {"alpha": (0.0, 1.0), "p": (0.0, 1.0), "q": (0.0, 1.0 - 1e-12), "r": (0.0, R_MAX)}
FIGURES = ("fig2a", "fig2b", "fig3a", "fig3b", "fig4")
DEFAULT_ALPHAS = (0.2, 0.4, 1 / math.sqrt(2))
FIG3_ALPHAS = (0.3, 1 / math.sqrt(2), 0.9)
FIG3_PS = (0.0, 0.3, 0.6, 0.9)
FIG4_PS = (0.0, 0.3, 0.6, 0.99)
FIG_R = 0.6
P_STOP = 0.999


def fmt(x: float) -> str:
    """12 significant digits, locale independent."""
    v = float(x)
    if v == 0.0:
        v = 0.0  # drop the sign of -0.0
    return format(v, ".12g")


def version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


@dataclass
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int
    fixed: dict = field(default_factory=dict)
    q_mode: str = "fixed"
    measures: tuple = ("concurrence",)
    sd_measure: str = "concurrence"

    def validate(self) -> None:
        if self.variable not in VARIABLES:
            raise ValidationError(f"field 'variable': must be one of {VARIABLES}, got {self.variable!r}")
        if self.q_mode not in Q_MODES:
            raise ValidationError(f"field 'q_mode': must be one of {Q_MODES}, got {self.q_mode!r}")
        if self.steps < 2:
            raise ValidationError(f"field 'steps': need at least 2, got {self.steps}")
        lo, hi = DOMAINS[self.variable]
        for name, v in (("start", self.start), ("stop", self.stop)):
            if not lo <= v <= hi:
                raise ValidationError(f"field '{name}': {v} outside the domain [{lo}, {hi}] of {self.variable}")
        bad = [m for m in self.measures if m not in MEASURE_NAMES]
        if bad or not self.measures:
            raise ValidationError(f"field 'measures': unknown {bad}; choose from {MEASURE_NAMES}")
        if self.q_mode != "fixed":
            if self.variable == "q":
                raise ValidationError("field 'variable': cannot sweep q when q_mode is si or sd")
            if self.fixed.get("q") is not None:
                raise ValidationError("field 'q': a fixed q is not allowed when q_mode is si or sd")
        if self.sd_measure not in ("concurrence", "scaled_discord"):
            raise ValidationError(f"field 'sd_measure': unknown {self.sd_measure!r}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


def resolve_q(alpha: float, p: float, r: float, q_mode: str, q_fixed: float | None, sd_measure: str) -> float:
    if q_mode == "si":
        return q_state_independent(p, r)
    if q_mode == "sd":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DegenerateObjectiveWarning)
            return q_state_dependent(alpha, p, r, sd_measure).q_opt
    return 0.0 if q_fixed is None else q_fixed


def evaluate_point(params: ProtocolParams, measures) -> dict:
    outcome = closed_form_rho(params)
    row = {}
    for m in measures:
        if m == "concurrence":
            row[m] = concurrence(outcome.rho)
        elif m == "scaled_discord":
            row[m] = scaled_discord(outcome.rho)
        elif m == "success_probability":
            row[m] = outcome.success_probability
        elif m == "n1":
            row[m] = outcome.n1
        elif m == "n2":
            row[m] = outcome.n2
    return row


def run_sweep(spec: SweepSpec) -> list[dict]:
    """One row per grid point: the swept value, each requested measure, and q used."""
    spec.validate()
    rows = []
    for value in spec.grid():
        point = {"alpha": 1 / math.sqrt(2), "p": 0.0, "q": None, "r": 0.0}
        point.update({k: v for k, v in spec.fixed.items() if v is not None})
        point[spec.variable] = float(value)
        q_fixed = point["q"] if spec.variable == "q" or spec.q_mode == "fixed" else None
        q = resolve_q(point["alpha"], point["p"], point["r"], spec.q_mode, q_fixed, spec.sd_measure)
        params = ProtocolParams.from_alpha(point["alpha"], p=point["p"], q=q, r=point["r"])
        row = {spec.variable: float(value)}
        row.update(evaluate_point(params, spec.measures))
        row["q_used"] = q
        rows.append(row)
    return rows


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0])
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(row[k]) for k in header])
    return buf.getvalue()


def to_json(rows: list[dict], meta: dict) -> str:
    payload = {"meta": meta, "rows": [{k: float(fmt(v)) for k, v in row.items()} for row in rows]}
    return json.dumps(payload, indent=2) + "\n"


def write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    path = Path(out)
    try:
        path.write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc


# figures ---------------------------------------------------------------------


def _alpha_label(a: float) -> str:
    return "1/sqrt2" if abs(a - 1 / math.sqrt(2)) < 1e-15 else fmt(a)


def figure_rows(name: str, steps: int = 101, alphas=DEFAULT_ALPHAS) -> list[dict]:
    """Data behind one figure panel, as ordered rows."""
    rows = []
    if name == "fig2a":
        for r in np.linspace(0.0, R_MAX, steps):
            row = {"r": r}
            for a in alphas:
                row[f"C_UD(alpha={_alpha_label(a)})"] = concurrence_ud(a, r)
            rows.append(row)
    elif name == "fig2b":
        for p in np.linspace(0.0, P_STOP, steps):
            q = q_state_independent(p, FIG_R)
            row = {"p": p, "q_SI": q}
            for a in alphas:
                out = closed_form_rho(ProtocolParams.from_alpha(a, p=p, q=q, r=FIG_R))
                row[f"C_SI(alpha={_alpha_label(a)})"] = concurrence(out.rho)
                row[f"P_SI(alpha={_alpha_label(a)})"] = out.success_probability
            rows.append(row)
    elif name == "fig3a":
        for a in np.linspace(0.01, 0.99, steps):
            row = {"alpha": a}
            for p in FIG3_PS:
                row[f"q_SD(p={fmt(p)})"] = q_state_dependent(a, p, FIG_R).q_opt
            rows.append(row)
    elif name == "fig3b":
        for p in np.linspace(0.0, P_STOP, steps):
            row = {"p": p}
            for a in FIG3_ALPHAS:
                params = ProtocolParams.from_alpha(a, p=p, q=q_state_independent(p, FIG_R), r=FIG_R)
                row[f"C_SI(alpha={_alpha_label(a)})"] = concurrence(closed_form_rho(params).rho)
                row[f"C_SD(alpha={_alpha_label(a)})"] = q_state_dependent(a, p, FIG_R).value
            rows.append(row)
    elif name == "fig4":
        a = 1 / math.sqrt(2)
        for r in np.linspace(0.0, R_MAX, steps):
            row = {"r": r, "UD": scaled_discord(closed_form_rho(ProtocolParams.from_alpha(a, r=r)).rho)}
            for p in FIG4_PS:
                params = ProtocolParams.from_alpha(a, p=p, q=q_state_independent(p, r), r=r)
                row[f"p={fmt(p)}"] = scaled_discord(closed_form_rho(params).rho)
            rows.append(row)
    else:
        raise ValidationError(f"field 'name': unknown figure {name!r}; choose from {FIGURES}")
    return rows


def point_report(params: ProtocolParams) -> dict:
    outcome = closed_form_rho(params)
    row = {"alpha": params.alpha, "beta": params.beta, "p": params.p, "q": params.q, "r": params.r}
    row.update(evaluate_point(params, MEASURE_NAMES))
    rho = np.asarray(outcome.rho)
    for i in range(4):
        for j in range(4):
            row[f"rho{i + 1}{j + 1}"] = rho[i, j].real
    return row


# argument parsing --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unruh-retrieval",
        description="Retrieve Unruh-degraded entanglement with partial measurement and reversal.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p, q_help="fixed reversal strength (q-mode fixed only)"):
        p.add_argument("--alpha", type=float, default=None, help="amplitude of |00> (default 1/sqrt2)")
        p.add_argument("--p", type=float, default=None, help="first measurement strength (default 0)")
        p.add_argument("--q", type=float, default=None, help=q_help)
        p.add_argument("--r", type=float, default=None, help="acceleration parameter in [0, pi/4] (default 0)")
        p.add_argument("--q-mode", choices=Q_MODES, default="fixed")
        p.add_argument("--sd-measure", choices=("concurrence", "scaled_discord"), default="concurrence",
                       help="measure optimized when --q-mode sd")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    sw = sub.add_parser("sweep", help="sweep one parameter over a grid")
    sw.add_argument("--var", required=True, choices=VARIABLES)
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--stop", type=float, required=True)
    sw.add_argument("--steps", type=int, default=50)
    sw.add_argument("--measure", action="append", choices=MEASURE_NAMES,
                    help="repeatable; default concurrence")
    add_params(sw)

    fig = sub.add_parser("figure", help="write the data behind a figure panel as CSV")
    fig.add_argument("name", choices=FIGURES)
    fig.add_argument("--steps", type=int, default=101)
    fig.add_argument("--alphas", type=float, nargs="+", default=None,
                     help="alpha values for fig2a/fig2b (default 0.2 0.4 1/sqrt2)")
    fig.add_argument("--out-dir", default=".", help="directory for <name>.csv")

    pt = sub.add_parser("point", help="report every quantity at one parameter point")
    add_params(pt)
    return parser


def _meta(args, extra=None) -> dict:
    meta = {
        "version": version(),
        "alpha": args.alpha if args.alpha is not None else 1 / math.sqrt(2),
        "p": args.p if args.p is not None else 0.0,
        "q": args.q,
        "r": args.r if args.r is not None else 0.0,
        "q_mode": args.q_mode,
    }
    if args.q_mode == "sd":
        meta["sd_measure"] = args.sd_measure
    meta.update(extra or {})
    return meta


def _cmd_sweep(args) -> None:
    spec = SweepSpec(
        variable=args.var,
        start=args.start,
        stop=args.stop,
        steps=args.steps,
        fixed={"alpha": args.alpha, "p": args.p, "q": args.q, "r": args.r},
        q_mode=args.q_mode,
        measures=tuple(dict.fromkeys(args.measure or ["concurrence"])),
        sd_measure=args.sd_measure,
    )
    rows = run_sweep(spec)
    if args.format == "csv":
        text = to_csv(rows)
    else:
        text = to_json(rows, _meta(args, {"variable": spec.variable, "start": spec.start,
                                          "stop": spec.stop, "steps": spec.steps,
                                          "measures": list(spec.measures)}))
    write_output(text, args.out)


def _cmd_point(args) -> None:
    alpha = args.alpha if args.alpha is not None else 1 / math.sqrt(2)
    p = args.p if args.p is not None else 0.0
    r = args.r if args.r is not None else 0.0
    if args.q_mode != "fixed" and args.q is not None:
        raise ValidationError("field 'q': a fixed q is not allowed when q_mode is si or sd")
    q = resolve_q(alpha, p, r, args.q_mode, args.q, args.sd_measure)
    rows = [point_report(ProtocolParams.from_alpha(alpha, p=p, q=q, r=r))]
    text = to_csv(rows) if args.format == "csv" else to_json(rows, _meta(args))
    write_output(text, args.out)


def _cmd_figure(args) -> None:
    if args.steps < 2:
        raise ValidationError(f"field 'steps': need at least 2, got {args.steps}")
    alphas = tuple(args.alphas) if args.alphas else DEFAULT_ALPHAS
    rows = figure_rows(args.name, steps=args.steps, alphas=alphas)
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"{out_dir}: {exc.strerror or exc}") from exc
    write_output(to_csv(rows), str(out_dir / f"{args.name}.csv"))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"sweep": _cmd_sweep, "figure": _cmd_figure, "point": _cmd_point}[args.command]
    try:
        handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except DegenerateStateError as exc:
        print(f"error: degenerate parameters: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
