"""Command-line interface.

Every subcommand prints one JSON report (schema ``crofton-inconstancy/1``)
to stdout; ``--table`` prints a rounded human-readable view instead.
Exit status: 0 on success, 1 on I/O or malformed input files, 2 on usage
errors and invalid arguments.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass
from typing import Sequence

from . import __version__
from .crofton import empirical_pn, estimate_crofton
from .entropy import empirical_entropy, entropy_std_error, max_entropy
from .errors import NotPrimitiveError
from .frequencies import (
    asymptotic_inconstancy,
    count_blocks,
    empirical_frequencies,
    finite_binary_inconstancy,
    morphism_block_frequencies,
    named_constants,
    periodic_inconstancy,
    prefix_inconstancy,
    sturmian_inconstancy,
)
from .geometry import (
    Polyline,
    convex_hull,
    inconstancy,
    polyline_from_points,
    polyline_from_sequence,
    polyline_from_values,
)
from .metrics import fluctuation_report, inconstancy_changes, predict_next
from .sequences import (
    ABCD_CODING,
    PAPERFOLDING,
    PERIOD_DOUBLING,
    RUDIN_SHAPIRO,
    THUE_MORSE,
    Morphism,
    SymbolSequence,
    code,
    fixed_point,
    paperfolding,
    parse_coding,
    periodic,
    random_binary,
    rudin_shapiro,
    sturmian,
    thue_morse,
)

SCHEMA = "crofton-inconstancy/1"
SEQUENCE_NAMES = (
    "thue-morse",
    "rudin-shapiro",
    "paperfolding",
    "period-doubling",
    "alternating",
    "periodic",
    "sturmian",
    "random",
    "constant",
    "morphism",
)
REFERENCE_CURVES = ([1.0, 0.0], [0.0, 3.0], [2.0, 0.0], [0.0, 5.0])


class InputError(Exception):
    """Unreadable or malformed input file (exit status 1)."""


class UsageError(Exception):
    """Bad combination of arguments (exit status 2)."""


@dataclass
class Source:
    curve: Polyline
    values: list | None = None
    sequence: SymbolSequence | None = None
    description: dict | None = None


def _float_list(text: str) -> list[float]:
    try:
        out = [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"not a list of numbers: {text!r}") from exc
    if not out:
        raise UsageError("empty number list")
    if not all(math.isfinite(v) for v in out):
        raise UsageError(f"non-finite value in {text!r}")
    return out


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"not a list of integers: {text!r}") from exc


def read_csv(path: str, raw_points=False):
    """Values (one per line, or ``index,value`` rows) or raw ``x,y`` vertices."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    rows = []
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        try:
            nums = [float(f) for f in fields]
        except ValueError:
            raise InputError(f"{path}: row {lineno}: not numeric: {line!r}") from None
        if len(nums) > 2 or not all(math.isfinite(v) for v in nums):
            raise InputError(f"{path}: row {lineno}: malformed row {line!r}")
        if raw_points and len(nums) != 2:
            raise InputError(f"{path}: row {lineno}: expected 'x,y'")
        rows.append((lineno, nums))
    if not rows:
        raise InputError(f"{path}: no data rows")
    if raw_points:
        return [tuple(nums) for _, nums in rows]
    widths = {len(nums) for _, nums in rows}
    if widths == {1}:
        return [nums[0] for _, nums in rows]
    if widths != {2}:
        raise InputError(f"{path}: mixes 1-column and 2-column rows")
    for expected, (lineno, (idx, _)) in enumerate(rows):
        if idx != expected:
            raise InputError(f"{path}: row {lineno}: index {idx:g}, expected {expected}")
    return [v for _, (_, v) in rows]


def build_sequence(args) -> SymbolSequence:
    name, n = args.seq, args.n
    if n is None or n < 2:
        raise UsageError("--n must be given and at least 2")
    if name == "thue-morse":
        return thue_morse(n)
    if name == "rudin-shapiro":
        return rudin_shapiro(n)
    if name == "paperfolding":
        return paperfolding(n)
    if name == "period-doubling":
        return fixed_point(PERIOD_DOUBLING, "1", n)
    if name == "alternating":
        return periodic("01", n)
    if name == "periodic":
        pattern = args.pattern or ("0" * (args.d or 1) + "1")
        return periodic(pattern, n)
    if name == "constant":
        return periodic("0", n)
    if name == "sturmian":
        if args.alpha is None:
            raise UsageError("--seq sturmian needs --alpha")
        return sturmian(args.alpha, args.rho, n)
    if name == "random":
        return random_binary(args.p, args.seed, n)
    if name == "morphism":
        if not args.morphism:
            raise UsageError("--seq morphism needs --morphism")
        m = Morphism.parse(args.morphism)
        seed = args.seed_letter or (m.prolongable_letters() or [None])[0]
        if seed is None:
            raise UsageError("morphism has no prolongable letter; give --seed-letter")
        seq = fixed_point(m, seed, n)
        return code(seq, parse_coding(args.coding)) if args.coding else seq
    raise UsageError(f"unknown sequence {name!r}")


def load_source(args, allow_multiple=False) -> list[Source]:
    given = [s for s in ("values", "csv", "seq") if getattr(args, s, None)]
    if getattr(args, "reference_curves", False):
        given.append("reference_curves")
    if len(given) != 1:
        raise UsageError("give exactly one of --values, --csv, --seq")
    if getattr(args, "reference_curves", False):
        value_lists = [list(v) for v in REFERENCE_CURVES]
    elif args.values:
        value_lists = [_float_list(v) for v in args.values]
        if len(value_lists) > 1 and not allow_multiple:
            raise UsageError("--values given more than once")
    elif args.csv:
        if args.no_origin:
            pts = read_csv(args.csv, raw_points=True)
            return [Source(polyline_from_points(pts), None, None, {"csv": args.csv})]
        value_lists = [read_csv(args.csv)]
    else:
        seq = build_sequence(args)
        desc = {"seq": args.seq, "n": len(seq)}
        return [Source(polyline_from_sequence(seq.to_values()), None, seq, desc)]
    return [
        Source(polyline_from_values(v), v, None, {"values": v}) for v in value_lists
    ]


def convergence_series(seq, checkpoints: Sequence[int]) -> list[tuple[int, float]]:
    """(N, I_N) where I_N is the inconstancy of the prefix u_0..u_N."""
    values = seq.to_values() if isinstance(seq, SymbolSequence) else list(seq)
    checkpoints = list(checkpoints)
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise ValueError("checkpoints must be strictly increasing")
    if checkpoints and (checkpoints[0] < 1 or checkpoints[-1] >= len(values)):
        raise ValueError(f"checkpoints must lie in [1, {len(values) - 1}]")
    return [(n, prefix_inconstancy(values[: n + 1])) for n in checkpoints]


def _default_checkpoints(length: int) -> list[int]:
    pts = [2**k for k in range(4, 64) if 2**k < length - 1]
    return pts + [length - 1]


def _metrics_dict(m) -> dict:
    return {"length": m.length, "hull_perimeter": m.hull_perimeter, "inconstancy": m.inconstancy}


def cmd_inconstancy(args, warnings):
    (src,) = load_source(args)
    m = inconstancy(src.curve)
    hull = convex_hull(src.curve)
    return {
        **_metrics_dict(m),
        "n_segments": src.curve.n_segments,
        "n_hull_vertices": len(hull.vertices),
        "degenerate_hull": hull.degenerate,
    }


def cmd_compare(args, warnings):
    sources = load_source(args, allow_multiple=True)
    curves = []
    for i, src in enumerate(sources, 1):
        if src.values is None:
            values = src.sequence.to_values().tolist() if src.sequence else None
            if values is None or values[0] != 0.0:
                raise UsageError("compare needs values with the origin convention")
            values = values[1:]
        else:
            values = src.values
        rep = fluctuation_report(values)
        curves.append({"label": f"curve{i}", "values": list(values), **vars(rep)})

    def order(key):
        return [c["label"] for c in sorted(curves, key=lambda c: c[key])]

    return {
        "curves": curves,
        "order_by_mse": order("mse"),
        "order_by_inconstancy": order("inconstancy"),
    }


def _binary_sequence_values(src: Source) -> list:
    if src.sequence is not None:
        return src.sequence.to_values().tolist()
    if src.values is None:
        raise UsageError("analyze needs a value list or a named sequence")
    return [0.0] + list(src.values)


def cmd_analyze(args, warnings):
    (src,) = load_source(args)
    u = _binary_sequence_values(src)
    if u[0] != 0.0:
        raise UsageError("analyze needs u_0 = 0")
    h = args.h
    if h is not None and set(u) <= {0.0, 1.0}:
        u = [h * v for v in u]
    formula = finite_binary_inconstancy(u, h)
    geometric = prefix_inconstancy(u)
    bc = count_blocks(u)
    return {
        "N": len(u) - 1,
        "formula": formula,
        "geometry": geometric,
        "abs_difference": abs(formula - geometric),
        "block_counts": {f"{a:g},{b:g}": c for (a, b), c in sorted(bc.counts.items())},
    }


def _closed_form(args, seq: SymbolSequence, warnings):
    consts = named_constants()
    name = args.seq
    if name == "thue-morse":
        return consts["thue_morse"]
    if name in ("rudin-shapiro", "paperfolding"):
        return consts[name.replace("-", "_")]
    if name == "alternating":
        return consts["alternating"]
    if name == "constant":
        return 1.0
    if name == "random":
        off = 2 * args.p * (1 - args.p)
        return 1.0 + (math.sqrt(2) - 1) * off
    if name == "periodic":
        pattern = args.pattern or ("0" * (args.d or 1) + "1")
        d = len(pattern) - 1
        if d >= 1 and pattern == "0" * d + "1":
            return periodic_inconstancy(d)
        cyc = SymbolSequence(tuple(pattern + pattern[0]))
        return asymptotic_inconstancy(empirical_frequencies(cyc))
    if name == "sturmian":
        slope = min(args.alpha, 1 - args.alpha)
        if slope == 0.5:
            return math.sqrt(2)
        return sturmian_inconstancy(slope)
    warnings.append(f"no closed form known for {name!r}")
    return None


def _perron_route(args):
    if args.seq == "thue-morse":
        return morphism_block_frequencies(THUE_MORSE, "0")
    if args.seq == "period-doubling":
        return morphism_block_frequencies(PERIOD_DOUBLING, "1")
    if args.seq == "rudin-shapiro":
        return morphism_block_frequencies(RUDIN_SHAPIRO, "a", ABCD_CODING)
    if args.seq == "paperfolding":
        return morphism_block_frequencies(PAPERFOLDING, "a", ABCD_CODING)
    if args.seq == "morphism":
        m = Morphism.parse(args.morphism)
        seed = args.seed_letter or m.prolongable_letters()[0]
        coding = parse_coding(args.coding) if args.coding else None
        return morphism_block_frequencies(m, seed, coding)
    return None


def _freq_dict(bf) -> dict:
    return {f"{a}{b}": f for (a, b), f in sorted(bf.freqs.items(), key=lambda kv: str(kv[0]))}


def cmd_asymptotic(args, warnings):
    if not args.seq:
        raise UsageError("asymptotic needs --seq")
    if args.n is None:
        args.n = 1 << 16
    seq = build_sequence(args)
    results = {"closed_form": _closed_form(args, seq, warnings)}
    try:
        perron = _perron_route(args)
        if perron is not None:
            results["perron_frequencies"] = _freq_dict(perron)
            results["perron_inconstancy"] = asymptotic_inconstancy(perron, _symbol_values(seq))
    except (NotPrimitiveError, ValueError) as exc:
        warnings.append(f"Perron route unavailable: {exc}")
    emp = empirical_frequencies(seq)
    results["empirical_frequencies"] = _freq_dict(emp)
    results["frequency_formula"] = asymptotic_inconstancy(emp, _symbol_values(seq))
    checkpoints = args.checkpoints or _default_checkpoints(len(seq))
    series = convergence_series(seq, checkpoints)
    results["series"] = [[n, v] for n, v in series]
    results["prefix_inconstancy"] = series[-1][1]
    if len(series) >= 2 and abs(series[-1][1] - series[-2][1]) > 1e-2:
        warnings.append("prefix inconstancy has not settled; the limit may not exist")
    return results


def _symbol_values(seq: SymbolSequence) -> dict:
    if seq.value_map is not None:
        return dict(seq.value_map)
    return {s: float(s) for s in seq.alphabet}


def cmd_crofton(args, warnings):
    (src,) = load_source(args)
    est = estimate_crofton(src.curve, args.samples, args.seed, workers=args.workers)
    m = inconstancy(src.curve)
    if est.n_lines_hitting == 0:
        raise UsageError("no sampled line met the curve")
    return {
        "mean_hits": est.mean_hits,
        "std_error": est.std_error,
        "closed_form": m.inconstancy,
        "z_score": (est.mean_hits - m.inconstancy) / est.std_error if est.std_error else 0.0,
        "n_lines_hitting": est.n_lines_hitting,
        "n_lines_sampled": est.n_lines_sampled,
        "p_n": {str(k): v for k, v in empirical_pn(est).items()},
        "omega_measure": est.omega_measure,
        "hull_perimeter": m.hull_perimeter,
    }


def cmd_entropy(args, warnings):
    (src,) = load_source(args)
    m = inconstancy(src.curve)
    emp = err = None
    if args.samples:
        est = estimate_crofton(src.curve, args.samples, args.seed, workers=args.workers)
        if est.n_lines_hitting == 0:
            raise UsageError("no sampled line met the curve")
        pn = empirical_pn(est)
        emp = empirical_entropy(pn)
        err = entropy_std_error(pn, est.n_lines_hitting)
    rep = max_entropy(m, emp, err)
    if rep.straight:
        warnings.append("straight curve: beta is infinite and h_max is its limit 0")
    return {
        "inconstancy": m.inconstancy,
        "modified_entropy": rep.modified_entropy,
        "h_max": rep.h_max,
        "beta": None if rep.straight else rep.beta,
        "beta_infinite": rep.straight,
        "empirical_entropy": rep.empirical_entropy,
        "empirical_std_error": rep.empirical_std_error,
    }


def cmd_generate(args, warnings):
    if not args.seq:
        raise UsageError("generate needs --seq")
    seq = build_sequence(args)
    results = {"length": len(seq), "sequence": str(seq)}
    if args.checkpoints:
        results["series"] = [[n, v] for n, v in convergence_series(seq, args.checkpoints)]
    return results


def cmd_predict(args, warnings):
    (src,) = load_source(args)
    if src.values is None:
        raise UsageError("predict needs --values or --csv")
    if not args.candidates:
        raise UsageError("predict needs --candidates")
    cands = _float_list(args.candidates)
    changes = inconstancy_changes(src.values, cands)
    return {
        "prediction": predict_next(src.values, cands),
        "changes": [[c, d] for c, d in changes.items()],
    }


COMMANDS = {
    "inconstancy": cmd_inconstancy,
    "compare": cmd_compare,
    "analyze": cmd_analyze,
    "asymptotic": cmd_asymptotic,
    "crofton-mc": cmd_crofton,
    "entropy": cmd_entropy,
    "generate": cmd_generate,
    "predict": cmd_predict,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--values", action="append", help="comma-separated a_1..a_n")
    src.add_argument("--csv", help="file with one value per line or index,value rows")
    src.add_argument("--no-origin", action="store_true", help="CSV rows are raw x,y vertices")
    src.add_argument("--seq", choices=SEQUENCE_NAMES, help="named sequence")
    src.add_argument("--n", type=int, help="sequence length")
    src.add_argument("--alpha", type=float, help="Sturmian slope")
    src.add_argument("--rho", type=float, default=0.0, help="Sturmian intercept")
    src.add_argument("--p", type=float, default=0.5, help="probability of 1 (random)")
    src.add_argument("--pattern", help="period of a periodic sequence, e.g. 001")
    src.add_argument("--d", type=int, help="periodic (0^d 1)")
    src.add_argument("--morphism", help="e.g. 0:01,1:10")
    src.add_argument("--seed-letter", help="letter the fixed point starts with")
    src.add_argument("--coding", help="letter coding, e.g. a:0,b:0,c:1,d:1")
    out = common.add_argument_group("output")
    out.add_argument("--json", action="store_true", help="JSON output (the default)")
    out.add_argument("--table", action="store_true", help="rounded human-readable view")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--checkpoints", type=_int_list_arg, help="e.g. 256,4096,65536")

    parser = argparse.ArgumentParser(
        prog="inconstancy", description="Inconstancy (Cauchy-Crofton complexity) of curves and sequences."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("inconstancy", parents=[common], help="2 length / hull perimeter")
    p = sub.add_parser("compare", parents=[common], help="MSE, RMSE, total variation, max distance, I")
    p.add_argument("--reference-curves", action="store_true", help="use G(1,0), G(0,3), G(2,0), G(0,5)")
    p = sub.add_parser("analyze", parents=[common], help="finite binary formula vs geometry")
    p.add_argument("--h", type=float, help="height of the nonzero value")
    sub.add_parser("asymptotic", parents=[common], help="limit inconstancy of a named sequence")
    for name in ("crofton-mc", "entropy"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--samples", type=int, default=100_000 if name == "crofton-mc" else 0)
        p.add_argument("--workers", type=int, default=1)
    sub.add_parser("generate", parents=[common], help="emit a named sequence")
    p = sub.add_parser("predict", parents=[common], help="next value minimising the change in I")
    p.add_argument("--candidates", help="comma-separated candidate values")
    return parser


def _int_list_arg(text):
    try:
        return _int_list(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _request(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if v is not None and v is not False}


def format_table(report: dict) -> str:
    lines = [f"# {report['command']}"]

    def fmt(v):
        return f"{v:.6g}" if isinstance(v, float) else str(v)

    for key, val in report["results"].items():
        if isinstance(val, list) and val and isinstance(val[0], (list, dict)):
            lines.append(f"{key}:")
            for item in val:
                if isinstance(item, dict):
                    lines.append("  " + "  ".join(f"{k}={fmt(v)}" for k, v in item.items()))
                else:
                    lines.append("  " + "\t".join(fmt(v) for v in item))
        elif isinstance(val, dict):
            lines.append(f"{key}: " + ", ".join(f"{k}={fmt(v)}" for k, v in val.items()))
        else:
            lines.append(f"{key}: {fmt(val)}")
    for w in report["warnings"]:
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Execute a command line; returns the exit status and the text for stdout."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    start = time.perf_counter()
    warnings: list[str] = []
    try:
        results = COMMANDS[args.command](args, warnings)
    except InputError as exc:
        print(f"inconstancy: error: {exc}", file=sys.stderr)
        return 1, ""
    except (UsageError, ValueError) as exc:
        print(f"inconstancy {args.command}: error: {exc}", file=sys.stderr)
        return 2, ""
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "request": _request(args),
        "results": results,
        "warnings": warnings,
        "metadata": {
            "version": __version__,
            "seed": args.seed,
            "elapsed_seconds": time.perf_counter() - start,
        },
    }
    if args.table:
        return 0, format_table(report)
    return 0, json.dumps(report, indent=2, allow_nan=False)


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(argv)
    if text:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
