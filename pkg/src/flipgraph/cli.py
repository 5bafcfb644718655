"""Command-line front end: ``flipgraph <subcommand> ...``.

Every subcommand prints a table (CSV by default, JSON with ``--format
json``).  Exit codes: 0 success, 1 bad input, 2 usage error, 3 resource cap
reached, 4 a checked property failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import audits
from .constructions import (
    build_two_flat_family,
    build_crossing_gap_family,
    perturb_flats_to_punctures,
)
from .engine import (
    DEFAULT_NODE_CAP,
    ResourceLimitError,
    any_triangulation,
    diameter,
    distance,
    reachable_set,
)
from .geometry import (
    GeometryError,
    PointConfig,
    bits,
    convex_polygon,
    format_config,
    format_triangulation,
    full_comb,
    load_config,
    parse_triangulation,
)
from .heuristics import HeuristicError, TieRule, greedy_path

EXIT_OK, EXIT_INPUT, EXIT_USAGE, EXIT_CAP, EXIT_CHECK = 0, 1, 2, 3, 4

RATIO_COLUMNS = ["m", "n", "N", "D_formula", "H", "ratio", "lower_bound_ratio", "tie_rule"]


@dataclass
class ExperimentReport:
    experiment: str
    parameters: dict
    rows: list[dict] = field(default_factory=list)
    runtime: float = 0.0
    truncated: bool = False

    def csv_text(self, columns: list[str] | None = None) -> str:
        buf = io.StringIO()
        cols = columns or (list(self.rows[0]) if self.rows else [])
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(row)
        return buf.getvalue()

    def json_text(self) -> str:
        return json.dumps(
            {
                "experiment": self.experiment,
                "parameters": self.parameters,
                "rows": self.rows,
                "runtime_seconds": round(self.runtime, 3),
                "truncated": self.truncated,
            },
            indent=2,
        ) + "\n"


# ----------------------------------------------------------------------
# argument helpers


def load(spec: str) -> PointConfig:
    """A config file, or ``polygon:N`` for a convex N-gon."""
    if spec.startswith("polygon:"):
        return convex_polygon(int(spec.split(":", 1)[1]))
    return load_config(spec)


def triangulation_arg(config: PointConfig, spec: str) -> int:
    """``comb:X``, a file holding ``a-b`` pairs, or the pairs inline."""
    if spec.startswith("comb:"):
        return full_comb(config, int(spec.split(":", 1)[1]))
    if os.path.exists(spec):
        spec = Path(spec).read_text()
    return parse_triangulation(config, spec)


def arcs_arg(config: PointConfig, spec: str) -> list[int]:
    out = []
    for part in spec.replace(" ", "").split(","):
        if part:
            a, b = part.split("-")
            out.append(config.arc_id((int(a), int(b))))
    return out


def _fmt_ratio(x: Fraction) -> str:
    return f"{float(x):.6f}"


# ----------------------------------------------------------------------
# subcommands


def cmd_enumerate(args) -> ExperimentReport:
    cfg = load(args.config)
    start = triangulation_arg(cfg, args.start) if args.start else any_triangulation(cfg)
    count = reachable_set(cfg, start, cap=args.cap).count
    return ExperimentReport("enumerate", {"config": args.config},
                            [{"points": cfg.n, "triangulations": count}])


def cmd_distance(args) -> ExperimentReport:
    cfg = load(args.config)
    T1, T2 = triangulation_arg(cfg, args.source), triangulation_arg(cfg, args.target)
    req = arcs_arg(cfg, args.require) if args.require else None
    frozen = sum(1 << i for i in req) if req else None
    d = distance(cfg, T1, T2, frozen, cap=args.cap)
    return ExperimentReport(
        "distance", {"config": args.config, "require": args.require or ""},
        [{"distance": d, "lower_bound": (T1 & ~T2).bit_count()}],
    )


def cmd_diameter(args) -> ExperimentReport:
    cfg = load(args.config)
    return ExperimentReport("diameter", {"config": args.config},
                            [{"points": cfg.n, "diameter": diameter(cfg, cap=args.cap)}])


def _rules(text: str) -> list[TieRule]:
    if text == "all":
        return list(TieRule)
    return [TieRule.parse(text)]


def cmd_heuristic(args) -> ExperimentReport:
    cfg = load(args.config)
    T1, T2 = triangulation_arg(cfg, args.source), triangulation_arg(cfg, args.target)
    rows = []
    for rule in _rules(args.tie):
        path = greedy_path(cfg, T1, T2, rule)
        row = {"tie_rule": rule.value, "H": path.length, "lower_bound": (T1 & ~T2).bit_count()}
        if args.exact:
            row["distance"] = distance(cfg, T1, T2, cap=args.cap)
        rows.append(row)
    return ExperimentReport("heuristic", {"config": args.config}, rows)


def cmd_flag_audit(args) -> ExperimentReport:
    cfg = load(args.config)
    sample = None
    if args.pairs[0] == "sample":
        if len(args.pairs) != 2:
            raise SystemExit("--pairs sample needs a count")
        sample = int(args.pairs[1])
    elif args.pairs != ["all"]:
        raise SystemExit("--pairs takes 'all' or 'sample N'")
    res = audits.flag_audit(cfg, sample, args.seed, args.max_paths, args.cap)
    row = {
        "pairs": res.pairs, "geodesics": res.geodesics, "flag_failures": res.flag_failures,
        "triangle_failures": res.triangle_failures, "truncated_pairs": res.truncated_pairs,
    }
    return ExperimentReport("flag-audit", {"config": args.config, "seed": args.seed},
                            [row], truncated=res.truncated_pairs > 0)


def cmd_convexity_audit(args) -> ExperimentReport:
    cfg = load(args.config)
    if args.source or args.target:
        return _convexity_pair(cfg, args)
    eps = None if args.eps == "all" else arcs_arg(cfg, args.eps)
    rows = [
        {
            "eps": f"{r.eps[0]}-{r.eps[1]}", "triangulations": r.triangulations,
            "pairs": r.pairs, "violations": r.violations, "worst_gap": r.worst_gap,
        }
        for r in audits.convexity_audit(cfg, eps, args.cap)
    ]
    return ExperimentReport("convexity-audit", {"config": args.config, "eps": args.eps}, rows)


def _convexity_pair(cfg: PointConfig, args) -> ExperimentReport:
    if not (args.source and args.target) or args.eps == "all":
        raise SystemExit("a single-pair audit needs --from, --to and one --eps arc")
    T1, T2 = triangulation_arg(cfg, args.source), triangulation_arg(cfg, args.target)
    (e,) = arcs_arg(cfg, args.eps)
    row = {"eps": args.eps, "lower_bound": (T1 & ~T2).bit_count()}
    capped = False
    for key, constraint in (("distance", None), ("constrained_distance", 1 << e)):
        try:
            row[key] = distance(cfg, T1, T2, constraint, cap=args.cap)
        except ResourceLimitError:
            row[key] = "cap"
            capped = True
    return ExperimentReport("convexity-audit", {"config": "pair", "cap": args.cap}, [row],
                            truncated=capped)


def cmd_construct(args) -> ExperimentReport:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    row = {"family": args.family, "n": args.n, "m": args.m}
    if args.family == 8:
        if args.punctures:
            raise SystemExit("--punctures applies to family 6 only")
        inst = build_crossing_gap_family(args.n, args.m)
        cfg, Tm, Tp = inst.config, inst.T_minus, inst.T_plus
        labels = inst.labels
    else:
        inst = build_two_flat_family(args.n, args.m)
        path = inst.upper_bound_path()
        row["half_path"] = inst.half_path.length
        row["upper_path"] = path.length
        (out / "half_path.txt").write_text(
            "".join(f"{a[0]}-{a[1]} -> {b[0]}-{b[1]}\n" for a, b in inst.half_path.arc_steps())
        )
        pert = perturb_flats_to_punctures(inst, 2 - args.punctures)
        cfg, Tm, Tp = pert.config, pert.T_minus, pert.T_plus
        inv = {new: old for old, new in pert.index_map.items()}
        labels = [inst.labels[inv[i]] for i in range(cfg.n)]
        a, b = cfg.arcs[pert.eta]
        (out / "eta.txt").write_text(f"{a}-{b}\n")
    (out / "config.txt").write_text(format_config(cfg))
    (out / "labels.txt").write_text("\n".join(labels) + "\n")
    (out / "t_minus.txt").write_text(format_triangulation(cfg, Tm) + "\n")
    (out / "t_plus.txt").write_text(format_triangulation(cfg, Tp) + "\n")
    row.update({"points": cfg.n, "punctures": cfg.n_punctures, "arcs": (Tm).bit_count(),
                "symmetric_difference": (Tm & ~Tp).bit_count()})
    return ExperimentReport("construct", vars_clean(args), [row])


def vars_clean(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func",)}


def cmd_ratio(args, checks: list) -> ExperimentReport:
    if args.family != 8:
        raise SystemExit("ratio is defined for family 8")
    rows = []
    for m in [int(x) for x in args.m_list.split(",") if x]:
        n = m * (7 * m + 5)
        inst = build_crossing_gap_family(n, m)
        D = 2 * n + 6 * m + 8
        bound = 1 + Fraction(n - 7 * m - 5, D)
        for rule in _rules(args.tie):
            H = greedy_path(inst.config, inst.T_minus, inst.T_plus, rule).length
            rows.append({
                "m": m, "n": n, "N": inst.N, "D_formula": D, "H": H,
                "ratio": _fmt_ratio(Fraction(H, D)),
                "lower_bound_ratio": _fmt_ratio(bound), "tie_rule": rule.value,
            })
            sym = (inst.T_minus & ~inst.T_plus).bit_count()
            checks.append({
                "m": m, "tie_rule": rule.value, "symmetric_difference": sym,
                "H_at_least_symmetric_difference": H >= sym,
                "ratio_at_least_bound": Fraction(H, D) >= bound,
            })
    return ExperimentReport("ratio", {"family": 8, "m_list": args.m_list, "tie": args.tie}, rows)


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flipgraph", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--cap", type=int, default=DEFAULT_NODE_CAP,
                        help="node budget for searches (exit code 3 when reached)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, func):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    p = add("enumerate", "count triangulations; columns: points,triangulations", cmd_enumerate)
    p.add_argument("--config", required=True, help="config file or polygon:N")
    p.add_argument("--from", dest="start", help="start triangulation (default: any)")

    p = add("distance", "exact flip distance; columns: distance,lower_bound", cmd_distance)
    p.add_argument("--config", required=True)
    p.add_argument("--from", dest="source", required=True, help="comb:X, a file, or a-b,c-d")
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--require", help="arcs that may not be flipped, as a-b,c-d")

    p = add("diameter", "flip-graph diameter; columns: points,diameter", cmd_diameter)
    p.add_argument("--config", required=True)

    p = add("heuristic", "greedy crossing estimate; columns: tie_rule,H,lower_bound[,distance]",
            cmd_heuristic)
    p.add_argument("--config", required=True)
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--tie", default=TieRule.LEX_REMOVED.value,
                   help="tie rule name or 'all': " + ", ".join(r.value for r in TieRule))
    p.add_argument("--exact", action="store_true", help="also compute the exact distance")

    p = add("flag-audit", "flag and triangle checks over geodesics; columns: pairs,geodesics,"
            "flag_failures,triangle_failures,truncated_pairs", cmd_flag_audit)
    p.add_argument("--config", required=True)
    p.add_argument("--pairs", nargs="+", default=["all"], help="'all' or 'sample N'")
    p.add_argument("--max-paths", type=int, default=10**6, help="geodesic cap per pair")

    p = add("convexity-audit", "constrained vs unconstrained distances; columns: eps,"
            "triangulations,pairs,violations,worst_gap", cmd_convexity_audit)
    p.add_argument("--config", required=True)
    p.add_argument("--eps", default="all", help="'all' or arcs a-b,c-d")
    p.add_argument("--from", dest="source", help="audit a single pair (needs --to, one --eps)")
    p.add_argument("--to", dest="target")

    p = add("construct", "write a family instance to --out", cmd_construct)
    p.add_argument("--family", type=int, choices=[6, 8], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--punctures", type=int, choices=[0, 1, 2], default=0,
                   help="family 6: number of flat vertices pushed inside")
    p.add_argument("--out", required=True)

    p = add("ratio", "greedy estimate vs distance formula; columns: " + ",".join(RATIO_COLUMNS),
            None)
    p.add_argument("--family", type=int, default=8)
    p.add_argument("--m-list", default="2,3,4,5")
    p.add_argument("--tie", default=TieRule.LEX_REMOVED.value)
    p.add_argument("--out", help="CSV path; consistency checks go to <out>.checks.csv")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    start = time.perf_counter()
    checks: list[dict] = []
    try:
        if args.command == "ratio":
            report = cmd_ratio(args, checks)
        else:
            report = args.func(args)
    except ResourceLimitError as err:
        print(f"resource cap reached: {err}", file=sys.stderr)
        return EXIT_CAP
    except HeuristicError as err:
        print(f"heuristic invariant failed: {err}", file=sys.stderr)
        return EXIT_CHECK
    except (GeometryError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    report.runtime = time.perf_counter() - start
    columns = RATIO_COLUMNS if args.command == "ratio" else None
    text = report.json_text() if args.format == "json" else report.csv_text(columns)
    out = getattr(args, "out", None)
    if args.command == "ratio" and out:
        Path(out).write_text(text)
        checks_report = ExperimentReport("ratio-checks", report.parameters, checks)
        Path(str(out) + ".checks.csv").write_text(checks_report.csv_text())
    else:
        sys.stdout.write(text)
    if report.truncated:
        print("note: results truncated by a cap", file=sys.stderr)
        return EXIT_CAP
    if checks and not all(c["H_at_least_symmetric_difference"] for c in checks):
        return EXIT_CHECK
    flag_fail = report.experiment == "flag-audit" and (
        report.rows[0]["flag_failures"] or report.rows[0]["triangle_failures"]
    )
    return EXIT_CHECK if flag_fail else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
