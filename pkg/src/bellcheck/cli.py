"""Command-line front end.

Subcommands: run (sample an experiment and write a report), bound (exact
analysis of a named model), fine-check (joint-probability feasibility of
given statistics), ghz-check (constraint-system satisfiability), zoo
(list models). Exit codes: 0 success, 2 configuration error, 3 model
error, 4 enumeration guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import ghz as ghz_mod
from .core import SETTING_PAIRS, CorrelationTable
from .engine import (
    chsh_report,
    chsh_statistic,
    class_frequencies,
    exact_class_frequencies,
    exact_class_weights,
    exact_correlation_table,
    hoeffding_epsilon,
    mi_diagnostic,
    run_experiment,
    theoretical_chsh,
)
from .errors import ModelError, ResourceLimitError
from .jointprob import BehaviorStatistics, chsh_criterion, jp_feasible
from .quantum import TSIRELSON_ANGLES, AnglePair, run_quantum_experiment
from .zoo import MODEL_FACTORIES, available_models, get_model

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_MODEL = 3
EXIT_RESOURCE = 4

_EXACT_MI_TOLERANCE = 1e-12


@dataclass
class ExperimentConfig:
    model: str
    n_per_series: int = 100_000
    seed: int = 0
    angles: AnglePair | None = None
    output: str | None = None
    format: str = "json"
    interleave: bool = False

    def __post_init__(self):
        if self.model != "quantum" and self.model not in MODEL_FACTORIES:
            raise ValueError(
                f"unknown model {self.model!r}; available: "
                f"{', '.join(available_models() + ['quantum'])}"
            )
        if self.n_per_series < 1:
            raise ValueError("n_per_series must be at least 1")
        if self.format not in ("json", "csv"):
            raise ValueError(f"format must be json or csv, got {self.format!r}")


def _parse_angles(text: str) -> AnglePair:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError("--angles expects four comma-separated radians: a1,a2,b1,b2")
    return AnglePair(*(float(p) for p in parts))


def _load_config(args: argparse.Namespace) -> ExperimentConfig:
    base: dict = {}
    if args.config:
        base = json.loads(Path(args.config).read_text())
        if not isinstance(base, dict):
            raise ValueError("config file must hold a JSON object")
    merged = {
        "model": args.model if args.model is not None else base.get("model"),
        "n_per_series": args.n if args.n is not None else base.get("n_per_series", 100_000),
        "seed": args.seed if args.seed is not None else base.get("seed", 0),
        "output": args.out if args.out is not None else base.get("output"),
        "format": args.format if args.format is not None else base.get("format", "json"),
        "interleave": args.interleave or bool(base.get("interleave", False)),
    }
    if merged["model"] is None:
        raise ValueError("no model given (use --model or a config file)")
    angles = base.get("angles")
    if angles is not None:
        angles = AnglePair(*(float(v) for v in angles))
    if args.angles is not None:
        angles = _parse_angles(args.angles)
    merged["angles"] = angles
    merged["n_per_series"] = int(merged["n_per_series"])
    merged["seed"] = int(merged["seed"])
    return ExperimentConfig(**merged)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _pair_key(pair) -> str:
    return f"{pair[0]},{pair[1]}"


def _table_dict(table: CorrelationTable) -> dict:
    return {
        "e11": float(table.e11),
        "e12": float(table.e12),
        "e21": float(table.e21),
        "e22": float(table.e22),
    }


def _report_dict(config: ExperimentConfig, log, model) -> dict:
    report = chsh_report(log)
    out = {
        "model": config.model,
        "n_per_series": report.n_per_series,
        "seed": log.seed,
        "angles": list(config.angles.as_tuple()) if config.angles else None,
        "correlations": _table_dict(report.table),
        "s_star": float(report.s_star),
        "bound_satisfied": report.bound_satisfied,
        "hoeffding_epsilon": report.hoeffding_epsilon,
    }
    if model is not None:
        freqs = class_frequencies(log, model)
        out["class_frequencies"] = {
            _pair_key(pair): {beh.compact(): float(f) for beh, f in sorted(
                inner.items(), key=lambda kv: kv[0].code)}
            for pair, inner in freqs.per_pair.items()
        }
        tolerance = 3 * hoeffding_epsilon(log.n_per_series, value_range=1.0)
        mi = mi_diagnostic(freqs, tolerance)
        out["mi"] = {
            "declared": model.declares_mi,
            "holds": mi.holds,
            "tolerance": tolerance,
            "max_deviation": mi.max_deviation,
            "worst_pair": list(mi.worst_pair),
            "worst_class": mi.worst_class.compact() if mi.worst_class else None,
        }
    return out


def _render_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _render_csv(report_dict: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["pair_i", "pair_k", "n", "e_hat", "hoeffding_eps"])
    corr = report_dict["correlations"]
    n = report_dict["n_per_series"]
    eps = report_dict["hoeffding_epsilon"]
    for (i, k), key in zip(SETTING_PAIRS, ("e11", "e12", "e21", "e22")):
        writer.writerow([i, k, n, _fmt(corr[key]), _fmt(eps)])
    writer.writerow(["s_star", "bound_2", "tsirelson_2sqrt2"])
    writer.writerow([_fmt(report_dict["s_star"]), 2, _fmt(2 * math.sqrt(2))])
    return buf.getvalue()


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_run(args: argparse.Namespace) -> int:
    config = _load_config(args)
    if config.model == "quantum":
        angles = config.angles or TSIRELSON_ANGLES
        config.angles = angles
        log = run_quantum_experiment(
            angles, config.n_per_series, config.seed, interleave=config.interleave
        )
        model = None
    else:
        model = get_model(config.model, config.angles)
        log = run_experiment(
            model, config.n_per_series, config.seed, interleave=config.interleave
        )
    report = _report_dict(config, log, model)
    text = _render_json(report) if config.format == "json" else _render_csv(report)
    _emit(text, config.output)
    if config.output:
        print(
            f"{config.model}: n={config.n_per_series} seed={config.seed} "
            f"S*={report['s_star']:+.6f} -> {config.output}"
        )
    return EXIT_OK


def _frac_str(x) -> str:
    return str(Fraction(x))


def cmd_bound(args: argparse.Namespace) -> int:
    if args.model == "quantum":
        raise ValueError("bound analyses hidden-variable models; use `run --model quantum`")
    model = get_model(args.model)
    table = exact_correlation_table(model)
    series_s = chsh_statistic(table)
    weights = exact_class_weights(model, (1, 1))
    s_single, per_class = theoretical_chsh(weights)
    mi = mi_diagnostic(exact_class_frequencies(model), _EXACT_MI_TOLERANCE)
    out = {
        "model": args.model,
        "series_table": {
            key: {"exact": _frac_str(v), "float": float(v)}
            for key, v in zip(("e11", "e12", "e21", "e22"), table.as_tuple())
        },
        "series_s": {"exact": _frac_str(series_s), "float": float(series_s)},
        "single_distribution": {
            "classes": [
                {
                    "behavior": beh.compact(),
                    "weight": _frac_str(w),
                    "c": per_class[beh],
                }
                for beh, w in sorted(weights.items(), key=lambda kv: kv[0].code)
            ],
            "s": {"exact": _frac_str(s_single), "float": float(s_single)},
        },
        "mi_holds_exact": mi.holds,
    }
    _emit(_render_json(out), args.out)
    return EXIT_OK


def _parse_fraction_list(text: str, count: int, what: str) -> list[Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise ValueError(f"{what} expects {count} comma-separated values")
    return [Fraction(p) for p in parts]


def cmd_fine_check(args: argparse.Namespace) -> int:
    es = _parse_fraction_list(args.correlations, 4, "--correlations")
    ms = (
        _parse_fraction_list(args.marginals, 4, "--marginals")
        if args.marginals
        else [Fraction(0)] * 4
    )
    stats = BehaviorStatistics(CorrelationTable(*es), *ms)
    result = jp_feasible(stats)
    all_pass, max_facet = chsh_criterion(stats.correlations)
    out = {
        "feasible": result.feasible,
        "witness": (
            {
                beh.compact(): _frac_str(w)
                for beh, w in sorted(result.witness.weights.items(), key=lambda kv: kv[0].code)
            }
            if result.witness
            else None
        ),
        "violated_facet": (
            {
                "signs": list(result.certificate.signs),
                "value": {"exact": _frac_str(result.certificate.value),
                          "float": float(result.certificate.value)},
            }
            if result.certificate
            else None
        ),
        "chsh_criterion": {
            "all_pass": all_pass,
            "max_facet_value": {"exact": _frac_str(max_facet), "float": float(max_facet)},
        },
    }
    _emit(_render_json(out), args.out)
    return EXIT_OK


def cmd_ghz_check(args: argparse.Namespace) -> int:
    constraints = ghz_mod.ghz_constraint_system(args.phi, include_fifth=args.fifth)
    result = ghz_mod.check_satisfiable(constraints)
    out = {
        "phi": args.phi,
        "include_fifth": args.fifth,
        "n_constraints": len(constraints),
        "satisfiable": result.satisfiable,
        "assignments_checked": result.assignments_checked,
        "witness": (
            {f"{party}({angle:.6g})": value for (party, angle), value in sorted(result.witness.items())}
            if result.witness
            else None
        ),
    }
    _emit(_render_json(out), args.out)
    return EXIT_OK


def cmd_zoo(args: argparse.Namespace) -> int:
    for name in available_models():
        print(f"{name:12s} {MODEL_FACTORIES[name]().description}")
    print(f"{'quantum':12s} singlet sampling, no hidden variables (run only)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellcheck",
        description="Run and verify Bell/CHSH experiments on hidden-variable models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="sample an experiment and write a report")
    run.add_argument("--model", help="zoo model name or 'quantum'")
    run.add_argument("--n", type=int, help="trials per setting pair")
    run.add_argument("--seed", type=int, help="experiment seed (unsigned 64-bit)")
    run.add_argument("--angles", help="a1,a2,b1,b2 in radians")
    run.add_argument("--out", help="report file (default: stdout)")
    run.add_argument("--format", choices=("json", "csv"), help="report format")
    run.add_argument("--config", help="JSON config file; flags override it")
    run.add_argument("--interleave", action="store_true",
                     help="shuffle block dispatch order (results are unchanged)")
    run.set_defaults(func=cmd_run)

    bound = sub.add_parser("bound", help="exact CHSH analysis of a zoo model")
    bound.add_argument("--model", required=True)
    bound.add_argument("--out")
    bound.set_defaults(func=cmd_bound)

    fine = sub.add_parser("fine-check", help="joint-probability feasibility of given statistics")
    fine.add_argument("--correlations", required=True, help="e11,e12,e21,e22 (fractions or decimals)")
    fine.add_argument("--marginals", help="m_a1,m_a2,m_b1,m_b2 (default zeros)")
    fine.add_argument("--out")
    fine.set_defaults(func=cmd_fine_check)

    ghz = sub.add_parser("ghz-check", help="satisfiability of the parity constraint system")
    ghz.add_argument("--phi", type=float, default=math.pi / 2)
    ghz.add_argument("--fifth", action="store_true", help="append the contradicting fifth constraint")
    ghz.add_argument("--out")
    ghz.set_defaults(func=cmd_ghz_check)

    zoo = sub.add_parser("zoo", help="list available models")
    zoo.set_defaults(func=cmd_zoo)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ModelError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
