"""Command-line interface: ingest a series, run fit plans, emit comparison tables.

Exit codes: 0 success, 2 input/parse error, 3 fitting error, 4 evaluation or
response-domain error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, replace
from typing import Optional

from .errors import (
    GreyModelError,
    InputError,
    ResponseDomainError,
)
from .optimize import FitPlan, fit_pipeline
from .params import ResidualObjective
from .response import EvaluationReport, ReportRow
from .series import RawSeries

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_FIT = 3
EXIT_EVAL = 4

_IC_NAMES = {
    "beta": "beta-fixed",
    "beta-fixed": "beta-fixed",
    "c-lsq": "c-least-squares",
    "c-least-squares": "c-least-squares",
    "c-min-f1": "c-minimize-f1",
    "c-minimize-f1": "c-minimize-f1",
    "c-min-f2": "c-minimize-f2",
    "c-minimize-f2": "c-minimize-f2",
}


@dataclass(frozen=True)
class RunConfig:
    input_path: str
    fit_len: Optional[int]
    horizon: int
    plans: tuple[FitPlan, ...]
    output_format: str = "table"
    output_path: Optional[str] = None
    precision: int = 4
    labels: tuple[str, ...] = ()
    verbose: bool = False


def ingest(path: str) -> tuple[list[float], list[str]]:
    """Parse newline-delimited values or label,value records."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    values: list[float] = []
    labels: list[str] = []
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = [p.strip() for p in text.split(",")]
        if len(parts) == 1:
            label, field = "", parts[0]
        elif len(parts) == 2:
            label, field = parts
        else:
            raise InputError(f"line {lineno}: expected 1 or 2 fields, got {text!r}")
        try:
            v = float(field)
        except ValueError:
            raise InputError(f"line {lineno}: not a number: {field!r}") from None
        if not math.isfinite(v) or v <= 0.0:
            raise InputError(f"line {lineno}: value must be finite and positive: {field!r}")
        values.append(v)
        labels.append(label)
    if len(values) < 4:
        raise InputError(f"{path}: need at least 4 observations, got {len(values)}")
    if not any(labels):
        labels = []
    return values, labels


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise InputError(f"not a boolean: {text!r}")


def plan_from_section(name: str, section) -> FitPlan:
    """Build a FitPlan from one config-file section."""
    try:
        alpha = float(section.get("alpha", "0"))
        lam_text = section.get("lambda", "0.5").strip().lower()
        if lam_text == "grid":
            lambda_policy, lam = "grid", 0.5
        else:
            lambda_policy, lam = "fixed", float(lam_text)
        fit = section.get("fit", "lsq").strip().lower()
        if fit not in ("lsq", "norm"):
            raise InputError(f"plan {name!r}: fit must be lsq or norm, got {fit!r}")
        norm_text = section.get("norm", "2").strip().lower()
        p = math.inf if norm_text == "inf" else float(norm_text)
        relative = _parse_bool(section.get("relative", "false"))
        ic_text = section.get("ic", "beta").strip().lower()
        if ic_text not in _IC_NAMES:
            raise InputError(f"plan {name!r}: unknown ic policy {ic_text!r}")
        beta = float(section.get("beta", "1"))
        restoration = section.get("restoration", "difference").strip().lower()
        scoring = section.get("scoring", "equation").strip().lower()
        obj = ResidualObjective(p=p, relative=relative)
        return FitPlan(
            alpha=alpha,
            lambda_policy=lambda_policy,
            lam=lam,
            param_policy=fit,
            param_objective=obj if fit == "norm" else None,
            lambda_objective=obj,
            ic_policy=_IC_NAMES[ic_text],
            beta=beta,
            restoration=restoration,
            lambda_scoring=scoring,
            name=name,
        )
    except GreyModelError:
        raise
    except ValueError as exc:
        raise InputError(f"plan {name!r}: {exc}") from exc


def load_plans(path: str) -> tuple[FitPlan, ...]:
    parser = configparser.ConfigParser()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise InputError(f"bad config {path}: {exc}") from exc
    plans = tuple(
        plan_from_section(section, parser[section]) for section in parser.sections()
    )
    if not plans:
        raise InputError(f"config {path} defines no plan sections")
    return plans


def default_plan() -> FitPlan:
    return FitPlan(name="classic")


# ---------------------------------------------------------------------------
# Serialization


def report_to_dict(report: EvaluationReport, labels=()) -> dict:
    return {
        "config": dict(report.config),
        "rows": [
            {
                "t": r.t,
                "label": labels[r.t - 1] if r.t - 1 < len(labels) else "",
                "actual": r.actual,
                "predicted": r.predicted,
                "relative_error_percent": r.relative_error_percent,
                "phase": r.phase,
            }
            for r in report.rows
        ],
        "fit_mean_error": report.fit_mean_error,
        "forecast_mean_error": report.forecast_mean_error,
        "combined_mean_error": report.combined_mean_error,
    }


def report_from_dict(d: dict) -> EvaluationReport:
    rows = tuple(
        ReportRow(
            t=int(r["t"]),
            actual=r["actual"],
            predicted=r["predicted"],
            relative_error_percent=r["relative_error_percent"],
            phase=r["phase"],
        )
        for r in d["rows"]
    )
    return EvaluationReport(
        rows=rows,
        fit_mean_error=d["fit_mean_error"],
        forecast_mean_error=d["forecast_mean_error"],
        combined_mean_error=d["combined_mean_error"],
        config=dict(d.get("config", {})),
    )


def reports_to_json(reports: list[EvaluationReport], config: RunConfig) -> str:
    payload = {
        "input": config.input_path,
        "fit_len": config.fit_len,
        "horizon": config.horizon,
        "plans": [report_to_dict(r, config.labels) for r in reports],
    }
    return json.dumps(payload, indent=2)


_CSV_FIELDS = ["plan", "t", "label", "actual", "predicted", "relative_error_percent", "phase"]


def reports_to_csv(reports: list[EvaluationReport], config: RunConfig) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(_CSV_FIELDS)
    for report in reports:
        name = report.config.get("name", "")
        for r in report.rows:
            label = config.labels[r.t - 1] if r.t - 1 < len(config.labels) else ""
            writer.writerow(
                [
                    name,
                    r.t,
                    label,
                    "" if r.actual is None else repr(r.actual),
                    repr(r.predicted),
                    ""
                    if r.relative_error_percent is None
                    else repr(r.relative_error_percent),
                    r.phase,
                ]
            )
    return buf.getvalue()


def reports_from_csv(text: str) -> dict[str, EvaluationReport]:
    """Rebuild per-plan reports (means recomputed) from the long-format CSV."""
    reader = csv.DictReader(io.StringIO(text))
    by_plan: dict[str, list[ReportRow]] = {}
    for rec in reader:
        row = ReportRow(
            t=int(rec["t"]),
            actual=float(rec["actual"]) if rec["actual"] else None,
            predicted=float(rec["predicted"]),
            relative_error_percent=float(rec["relative_error_percent"])
            if rec["relative_error_percent"]
            else None,
            phase=rec["phase"],
        )
        by_plan.setdefault(rec["plan"], []).append(row)
    out = {}
    for name, rows in by_plan.items():
        fit = [r.relative_error_percent for r in rows
               if r.phase == "fit" and r.relative_error_percent is not None]
        fc = [r.relative_error_percent for r in rows
              if r.phase == "forecast" and r.relative_error_percent is not None]
        both = [r.relative_error_percent for r in rows
                if r.relative_error_percent is not None]
        out[name] = EvaluationReport(
            rows=tuple(rows),
            fit_mean_error=sum(fit) / len(fit) if fit else None,
            forecast_mean_error=sum(fc) / len(fc) if fc else None,
            combined_mean_error=sum(both) / len(both) if both else None,
        )
    return out


# ---------------------------------------------------------------------------
# Table rendering


def _fmt(v, prec):
    if v is None:
        return ""
    return f"{v:.{prec}f}"


def render_table(reports: list[EvaluationReport], config: RunConfig) -> str:
    prec = config.precision
    names = [r.config.get("name") or f"plan{i + 1}" for i, r in enumerate(reports)]
    header = ["t", "actual"]
    for name in names:
        header += [f"{name}", "err(%)"]
    body = []
    nrows = max(len(r.rows) for r in reports)
    for i in range(nrows):
        base = reports[0].rows[i]
        label = (
            config.labels[base.t - 1]
            if base.t - 1 < len(config.labels)
            else str(base.t)
        )
        line = [label, _fmt(base.actual, prec)]
        for rep in reports:
            r = rep.rows[i]
            line += [_fmt(r.predicted, prec), _fmt(r.relative_error_percent, prec)]
        body.append(line)

    def mean_row(title, getter):
        line = [title, ""]
        for rep in reports:
            line += ["", _fmt(getter(rep), prec)]
        return line

    body.append(mean_row("mean(fit)", lambda r: r.fit_mean_error))
    if any(r.forecast_mean_error is not None for r in reports):
        body.append(mean_row("mean(forecast)", lambda r: r.forecast_mean_error))
    body.append(mean_row("mean(all)", lambda r: r.combined_mean_error))

    def footer_row(title, key):
        line = [title, ""]
        for rep in reports:
            v = rep.config.get(key)
            line += ["" if v is None else f"{v:.6g}", ""]
        return line

    body.append(footer_row("r", "lambda"))
    body.append(footer_row("beta", "beta"))

    rows = [header] + body
    widths = [max(len(row[j]) for row in rows) for j in range(len(header))]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
        if i == 0:
            lines.append("-" * len(lines[0]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Driver


def run(config: RunConfig) -> int:
    """Execute every plan and emit one comparison report."""
    try:
        values, labels = ingest(config.input_path)
        fit_len = config.fit_len if config.fit_len is not None else len(values)
        raw = RawSeries(values, fit_len=fit_len)
        if fit_len + config.horizon > len(values) and config.verbose:
            print(
                f"note: horizon extends {fit_len + config.horizon - len(values)} "
                "steps past the observed data",
                file=sys.stderr,
            )
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if not config.labels and labels:
        config = replace(config, labels=tuple(labels))

    reports = []
    for plan in config.plans:
        try:
            result, report = fit_pipeline(raw, plan, horizon=config.horizon)
        except ResponseDomainError as exc:
            print(f"evaluation error [{plan.name}]: {exc}", file=sys.stderr)
            return EXIT_EVAL
        except GreyModelError as exc:
            print(f"fitting error [{plan.name}]: {exc}", file=sys.stderr)
            return EXIT_FIT
        if config.verbose:
            cfg = report.config
            print(
                f"{plan.name or 'plan'}: a={cfg['a']:.6g} b={cfg['b']:.6g} "
                f"lambda={cfg['lambda']:.6g} beta={cfg['beta']:.6g} "
                f"objective={result.achieved_objective:.6g}",
                file=sys.stderr,
            )
        reports.append(report)

    if config.output_format == "json":
        text = reports_to_json(reports, config)
    elif config.output_format == "csv":
        text = reports_to_csv(reports, config)
    else:
        text = render_table(reports, config)

    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greypower",
        description="Fit grey power models (GM(1,1), Verhulst, power) to a "
        "small positive series and report predictions.",
    )
    parser.add_argument("--input", "-i", required=True, help="series file: one value "
                        "per line, or label,value records")
    parser.add_argument("--fit-len", type=int, default=None,
                        help="number of leading points used for fitting "
                        "(default: all)")
    parser.add_argument("--horizon", type=int, default=0,
                        help="forecast steps past the fit window")
    parser.add_argument("--config", help="INI file with one section per fit plan")
    parser.add_argument("--format", choices=("table", "csv", "json"),
                        default="table", dest="output_format")
    parser.add_argument("--output", "-o", default=None,
                        help="write output here instead of stdout")
    parser.add_argument("--precision", type=int, default=4,
                        help="decimals shown in the table (default 4)")
    parser.add_argument("--verbose", "-v", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        plans = load_plans(args.config) if args.config else (default_plan(),)
    except GreyModelError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    config = RunConfig(
        input_path=args.input,
        fit_len=args.fit_len,
        horizon=args.horizon,
        plans=plans,
        output_format=args.output_format,
        output_path=args.output,
        precision=args.precision,
        verbose=args.verbose,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
