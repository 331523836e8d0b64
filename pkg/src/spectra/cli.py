"""Command-line front end: deterministic subcommands over the whole toolkit.

Every subcommand resolves one RunConfig, prints decimal strings only, and
keeps byte-identical output for identical invocations.  Exit codes: 0 for a
decided result, 2 for an inconclusive verdict, 3 for an exhausted precision
budget, 64 for usage errors.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .attractor import analyze, attractor_to_json, rasterize
from .classify import NumberClass, classify
from .counting import count_distinct, growth_ratio
from .criteria import (
    DEFAULT_SEARCH_DEGREE,
    INCONCLUSIVE,
    resolve_root,
    verdict,
    verdict_to_json,
)
from .errors import EmptyTail, PrecisionExhausted, SpectraError, UsageError
from .fixtures import FIXTURES, run_all
from .heightsearch import height_one_analysis
from .intervals import Box
from .polyalg import IntPolynomial
from .spectrum import (
    LAMBDA_DIGITS,
    PM_DIGITS,
    Y_DIGITS,
    enumerate_spectrum,
    gap_stats,
    gap_stats_to_json,
    smallest_positive_lambda,
    spectrum_to_csv,
)

EXIT_OK = 0
EXIT_FIXTURE_MISMATCH = 1
EXIT_INCONCLUSIVE = 2
EXIT_PRECISION = 3
EXIT_USAGE = 64

_DIGITSETS = {"0,1": Y_DIGITS, "-1,0,1": LAMBDA_DIGITS, "-1,1": PM_DIGITS}


@dataclass(frozen=True)
class RunConfig:
    """Fixed defaults: 4096 budget bits, seed 1, text output to stdout."""

    precision_budget: int = 4096
    seed: int = 1
    output_format: str = "text"
    output_path: str | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit(2); the contract wants 64
        raise UsageError(message)


def _env_budget() -> int:
    raw = os.environ.get("SPECTRA_BUDGET_BITS")
    if raw is None:
        return RunConfig.precision_budget
    try:
        bits = int(raw)
    except ValueError as exc:
        raise UsageError(f"SPECTRA_BUDGET_BITS must be an integer, got {raw!r}") from exc
    if bits < 64:
        raise UsageError("SPECTRA_BUDGET_BITS must be at least 64")
    return bits


def _parse_fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad {what} {text!r}") from exc


def _parse_interval(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--root-interval wants 'a,b', got {text!r}")
    return _parse_fraction(parts[0], "interval endpoint"), _parse_fraction(
        parts[1], "interval endpoint"
    )


def _parse_lambda(text: str):
    parts = text.split(",")
    if len(parts) == 1:
        return _parse_fraction(parts[0], "lambda")
    if len(parts) == 2:
        re = _parse_fraction(parts[0], "lambda real part")
        im = _parse_fraction(parts[1], "lambda imaginary part")
        return Box.point(re, im)
    raise UsageError(f"--lambda wants 're' or 're,im', got {text!r}")


def _poly(ns: argparse.Namespace) -> IntPolynomial:
    return IntPolynomial.parse(ns.poly)


def _selector(ns: argparse.Namespace) -> tuple[int | None, tuple[Fraction, Fraction] | None]:
    index = getattr(ns, "root_index", None)
    raw = getattr(ns, "root_interval", None)
    interval = _parse_interval(raw) if raw is not None else None
    if index is not None and interval is not None:
        raise UsageError("pick the root by --root-index or --root-interval, not both")
    return index, interval


def _emit(cfg: RunConfig, text: str) -> None:
    data = text if text.endswith("\n") else text + "\n"
    if cfg.output_path is None:
        sys.stdout.write(data)
    else:
        with open(cfg.output_path, "w") as handle:
            handle.write(data)


def _emit_json(cfg: RunConfig, obj: dict) -> None:
    _emit(cfg, json.dumps(obj, indent=2))


def _class_to_json(nc: NumberClass) -> dict:
    return {
        "schema_version": 1,
        "pisot": nc.is_pisot,
        "perron": nc.is_perron,
        "salem": nc.is_salem,
        "anti_pisot": nc.is_anti_pisot,
        "monic": nc.monic,
        "minimality_verified": nc.minimality_verified,
        "conjugates_inside": nc.conjugates_inside,
        "conjugates_on_circle": nc.conjugates_on_circle,
        "conjugates_outside": nc.conjugates_outside,
        "margins": dict(nc.margins),
        "notes": list(nc.notes),
    }


# -- subcommand handlers -------------------------------------------------------------


def _cmd_classify(ns: argparse.Namespace, cfg: RunConfig) -> int:
    f = _poly(ns)
    index, interval = _selector(ns)
    q = resolve_root(f, index, interval, cfg.precision_budget)
    nc = classify(f, q)
    if cfg.output_format == "json":
        out = _class_to_json(nc)
        out["q"] = q.decimal(12)
        _emit_json(cfg, out)
        return EXIT_OK
    lines = [f"q: {q.decimal(12)}"]
    for label, flag in (
        ("pisot", nc.is_pisot),
        ("perron", nc.is_perron),
        ("salem", nc.is_salem),
        ("anti-pisot", nc.is_anti_pisot),
        ("monic", nc.monic),
        ("minimality verified", nc.minimality_verified),
    ):
        lines.append(f"{label}: {'yes' if flag else 'no'}")
    lines.append(
        "conjugates inside/on/outside the unit circle: "
        f"{nc.conjugates_inside}/{nc.conjugates_on_circle}/{nc.conjugates_outside}"
    )
    for key in sorted(nc.margins):
        lines.append(f"margin[{key}]: {nc.margins[key]}")
    for note in nc.notes:
        lines.append(f"note: {note}")
    _emit(cfg, "\n".join(lines))
    return EXIT_OK


def _cmd_verdict(ns: argparse.Namespace, cfg: RunConfig) -> int:
    f = _poly(ns)
    index, interval = _selector(ns)
    v = verdict(f, index, interval, dmax=ns.dmax, budget_bits=cfg.precision_budget)
    if cfg.output_format == "json":
        _emit_json(cfg, verdict_to_json(v))
    else:
        lines = [
            f"conclusion: {v.conclusion}",
            f"rules: {', '.join(v.rule_ids) if v.rule_ids else 'none'}",
            f"liminf gap flag: {v.liminf_flag}",
            f"limsup gap flag: {v.limsup_flag}",
            f"q: {v.q_decimal}",
            f"q^2 < 2: {'yes' if v.q_squared_below_two else 'no'}",
        ]
        for r in v.rules_applied:
            lines.append(f"{r.rule_id} [{r.conclusion}]: {r.citation}")
        for caveat in v.caveats:
            lines.append(f"caveat: {caveat}")
        for note in v.notes:
            lines.append(f"note: {note}")
        _emit(cfg, "\n".join(lines))
    return EXIT_INCONCLUSIVE if v.conclusion == INCONCLUSIVE else EXIT_OK


def _cmd_spectrum(ns: argparse.Namespace, cfg: RunConfig) -> int:
    f = _poly(ns)
    index, interval = _selector(ns)
    q = resolve_root(f, index, interval, cfg.precision_budget)
    digits = _DIGITSETS[ns.digits]
    report = enumerate_spectrum(f, q, ns.n, digits, budget_bits=cfg.precision_budget)
    if cfg.output_format == "csv":
        if cfg.output_path is None:
            spectrum_to_csv(report, sys.stdout)
        else:
            spectrum_to_csv(report, cfg.output_path)
        return EXIT_OK
    try:
        stats = gap_stats(report)
    except EmptyTail:
        stats = None
    if cfg.output_format == "json":
        if stats is not None:
            out = gap_stats_to_json(stats)
        else:
            mg, idx = report.min_gap()
            lo, hi = mg.decimal_pair(20)
            out = {
                "schema_version": 1,
                "min_gap": {"lo": lo, "hi": hi, "decimal": mg.decimal(20)},
                "min_gap_index": idx,
                "notes": ["no finalized prefix for this digit set"],
            }
        out["count"] = report.count
        out["n"] = report.n
        out["digits"] = digits.label
        _emit_json(cfg, out)
        return EXIT_OK
    mg, idx = report.min_gap()
    lines = [
        f"digits: {digits.label}",
        f"n: {report.n}",
        f"distinct values: {report.count}",
        f"min gap: {mg.decimal(12)} (at index {idx})",
    ]
    if stats is not None:
        lines.append(f"tail min gap: {stats.tail_min_gap.decimal(12)}")
        lines.append(f"tail max gap: {stats.max_gap_tail.decimal(12)}")
    else:
        lines.append("gap statistics: no finalized prefix for this digit set")
    _emit(cfg, "\n".join(lines))
    return EXIT_OK


def _cmd_count(ns: argparse.Namespace, cfg: RunConfig) -> int:
    f = _poly(ns)
    if cfg.output_format == "text":
        _emit(cfg, str(count_distinct(f, ns.n)))
        return EXIT_OK
    index, interval = _selector(ns)
    q = resolve_root(f, index, interval, cfg.precision_budget)
    series = growth_ratio(f, q, ns.n)
    rows = [
        {"n": k, "z_n": z, "ratio": series.ratios[k].decimal(12)}
        for k, z in enumerate(series.counts)
    ]
    if cfg.output_format == "json":
        _emit_json(
            cfg,
            {
                "schema_version": 1,
                "rows": rows,
                "divergence_hint": series.divergence,
                "notes": list(series.notes),
            },
        )
        return EXIT_OK
    buf = io.StringIO()
    buf.write("n,z_n,ratio_decimal\n")
    for row in rows:
        buf.write(f"{row['n']},{row['z_n']},{row['ratio']}\n")
    _emit(cfg, buf.getvalue())
    return EXIT_OK


def _cmd_lambda_min(ns: argparse.Namespace, cfg: RunConfig) -> int:
    f = _poly(ns)
    index, interval = _selector(ns)
    q = resolve_root(f, index, interval, cfg.precision_budget)
    res = smallest_positive_lambda(f, q, ns.n, budget_bits=cfg.precision_budget)
    if cfg.output_format == "json":
        lo, hi = res.value.decimal_pair(20)
        _emit_json(
            cfg,
            {
                "schema_version": 1,
                "n": res.n,
                "value": {"lo": lo, "hi": hi, "decimal": res.value.decimal(20)},
                "witness": list(res.witness),
                "relations_found": res.relations_found,
                "notes": list(res.notes),
            },
        )
        return EXIT_OK
    lines = [
        f"n: {res.n}",
        f"smallest positive element: {res.value.decimal(15)}",
        f"witness digits: {','.join(str(d) for d in res.witness)}",
        f"vanishing combinations found: {res.relations_found}",
    ]
    _emit(cfg, "\n".join(lines))
    return EXIT_OK


def _cmd_attractor(ns: argparse.Namespace, cfg: RunConfig) -> int:
    lam = _parse_lambda(ns.lam)
    if ns.raster is not None:
        data = rasterize(lam, depth=ns.depth, pixels=ns.pixels)
        with open(ns.raster, "wb") as handle:
            handle.write(data)
        _emit(cfg, f"wrote {len(data)} bytes to {ns.raster}")
        return EXIT_OK
    analysis = analyze(lam, depth=ns.depth, budget_bits=cfg.precision_budget)
    if cfg.output_format == "json":
        _emit_json(cfg, attractor_to_json(analysis))
        return EXIT_OK
    conn = analysis.connectivity
    lines = [
        f"connectivity: {conn.verdict} (depth {conn.depth}, {conn.nodes} nodes)",
        f"interior counting region: {'yes' if analysis.interior else 'no'}",
        f"count exponent: {analysis.zn_exponent if analysis.zn_exponent else 'none'}",
    ]
    if conn.gap_lower is not None:
        lines.append(f"gap lower bound: {float(conn.gap_lower):.6g}")
    if conn.witness is not None:
        lines.append(f"witness digits: {','.join(str(d) for d in conn.witness)}")
    for note in analysis.notes + conn.notes:
        lines.append(f"note: {note}")
    _emit(cfg, "\n".join(lines))
    return EXIT_OK


def _cmd_search(ns: argparse.Namespace, cfg: RunConfig) -> int:
    f = _poly(ns)
    res = height_one_analysis(f, ns.dmax)
    cert = res.filter_certificate
    if cfg.output_format == "json":
        out = {
            "schema_version": 1,
            "status": res.status,
            "searched_degree": res.searched_degree,
            "coefficient_cap": res.coefficient_cap,
            "witness": None if res.witness is None else res.witness.to_text(),
        }
        if cert is not None:
            lo, hi = cert.product.decimal_pair(12)
            out["filter_certificate"] = {
                "triple_product": {"lo": lo, "hi": hi},
                "squared_bound": "27/256",
            }
        _emit_json(cfg, out)
        return EXIT_OK
    lines = [f"status: {res.status}", f"searched degree: {res.searched_degree}"]
    if res.witness is not None:
        lines.append(f"witness: {res.witness.to_text()}")
    if cert is not None:
        lines.append(
            f"filter triple product: {cert.product.decimal(12)} < 0.32476"
        )
    _emit(cfg, "\n".join(lines))
    return EXIT_OK


def _cmd_examples(ns: argparse.Namespace, cfg: RunConfig) -> int:
    results = run_all(cfg.precision_budget)
    if cfg.output_format == "json":
        out = {
            "schema_version": 1,
            "fixtures": [
                {
                    "name": r.fixture.name,
                    "example": r.fixture.example,
                    "conclusion": None if r.verdict is None else r.verdict.conclusion,
                    "rules": [] if r.verdict is None else list(r.verdict.rule_ids),
                    "passed": r.passed,
                    "failures": list(r.failures),
                }
                for r in results
            ],
        }
        examples = sorted({r.fixture.example for r in results})
        out["examples_passed"] = sum(
            1
            for ex in examples
            if all(r.passed for r in results if r.fixture.example == ex)
        )
        out["examples_total"] = len(examples)
        _emit_json(cfg, out)
        return EXIT_OK if out["examples_passed"] == out["examples_total"] else EXIT_FIXTURE_MISMATCH
    width = max(len(r.fixture.name) for r in results)
    lines = [f"{'ex':<3} {'fixture':<{width}} {'conclusion':<13} {'rules':<8} status"]
    for r in results:
        ruletxt = ",".join(r.fixture.rules) if r.fixture.rules else "-"
        concl = r.verdict.conclusion if r.verdict is not None else "error"
        lines.append(
            f"{r.fixture.example:<3} {r.fixture.name:<{width}} {concl:<13} "
            f"{ruletxt:<8} {'PASS' if r.passed else 'FAIL'}"
        )
        for failure in r.failures:
            lines.append(f"    mismatch: {failure}")
    examples = sorted({r.fixture.example for r in results})
    passed = sum(
        1 for ex in examples if all(r.passed for r in results if r.fixture.example == ex)
    )
    lines.append(f"{passed}/{len(examples)} examples pass")
    _emit(cfg, "\n".join(lines))
    return EXIT_OK if passed == len(examples) else EXIT_FIXTURE_MISMATCH


# -- parser wiring -------------------------------------------------------------------


def _add_poly_options(p: argparse.ArgumentParser, with_selector: bool = True) -> None:
    p.add_argument("--poly", required=True, help="polynomial: 'x^4 - x - 1' or '-1,-1,0,0,1'")
    if with_selector:
        p.add_argument("--root-index", type=int, default=None, help="pick the k-th root (sorted)")
        p.add_argument(
            "--root-interval",
            default=None,
            metavar="A,B",
            help="pick the unique real root in the open interval (A, B)",
        )


def _add_global_options(p: argparse.ArgumentParser) -> None:
    # registered on the main parser and every subparser so the flags work in
    # either position; SUPPRESS keeps an absent later occurrence from erasing
    # an earlier one, and the subcommand position wins when both are given
    p.add_argument(
        "--budget", type=int, default=argparse.SUPPRESS, help="precision budget in bits"
    )
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="sampler seed")
    p.add_argument(
        "--format",
        choices=("text", "json", "csv"),
        default=argparse.SUPPRESS,
        help="output format",
    )
    p.add_argument("--output", default=argparse.SUPPRESS, help="write output to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spectra", description=__doc__)
    _add_global_options(parser)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("classify", help="Pisot/Perron/Salem/anti-Pisot flags for a root")
    _add_global_options(p)
    _add_poly_options(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("verdict", help="gap-behaviour verdict with fired rules")
    _add_global_options(p)
    _add_poly_options(p)
    p.add_argument("--dmax", type=int, default=DEFAULT_SEARCH_DEGREE)
    p.set_defaults(handler=_cmd_verdict)

    p = sub.add_parser("spectrum", help="enumerate power-sum values with exact dedup")
    _add_global_options(p)
    _add_poly_options(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--digits", choices=tuple(_DIGITSETS), default="0,1")
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("count", help="number of distinct digit-string sums z_n")
    _add_global_options(p)
    _add_poly_options(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("lambda-min", help="smallest positive signed power sum")
    _add_global_options(p)
    _add_poly_options(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_lambda_min)

    p = sub.add_parser("attractor", help="connectivity and counting region of A_lambda")
    _add_global_options(p)
    p.add_argument("--lambda", dest="lam", required=True, metavar="RE[,IM]")
    p.add_argument("--depth", type=int, default=40)
    p.add_argument("--pixels", type=int, default=800)
    p.add_argument("--raster", default=None, help="write a P5 raster to this path")
    p.set_defaults(handler=_cmd_attractor)

    p = sub.add_parser("search", help="height-one multiple search with the product filter")
    _add_global_options(p)
    _add_poly_options(p, with_selector=False)
    p.add_argument("--dmax", type=int, default=DEFAULT_SEARCH_DEGREE)
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("examples", help="run the pinned regression fixtures")
    _add_global_options(p)
    p.set_defaults(handler=_cmd_examples)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if getattr(ns, "handler", None) is None:
            raise UsageError("a subcommand is required (try --help)")
        budget = getattr(ns, "budget", None)
        if budget is None:
            budget = _env_budget()
        if budget < 64:
            raise UsageError("--budget must be at least 64 bits")
        cfg = RunConfig(
            precision_budget=budget,
            seed=getattr(ns, "seed", RunConfig.seed),
            output_format=getattr(ns, "format", RunConfig.output_format),
            output_path=getattr(ns, "output", None),
        )
        return ns.handler(ns, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except SpectraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIXTURE_MISMATCH


if __name__ == "__main__":
    raise SystemExit(main())
