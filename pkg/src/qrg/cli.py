"""Command-line front end.

    qrg analyze --dim 12 --check-oracle --mub --format json

Exit codes: 0 verified, 1 verified false, 2 usage error, 3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
import time
from importlib import resources
from typing import Any

from qrg import graph as pg
from qrg.isomatch import ColoredGraph, VerificationReport, verify_paper_claim
from qrg.mub import mub_report
from qrg.pauli import FactorSpec, oracle_sweep
from qrg.rings import GaloisField, RingError, RingSpec, prime_power, residue_ring

log = logging.getLogger("qrg")

SCHEMA_VERSION = "v1"

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_BOUND = 3

DEFAULT_RINGS = {
    6: "Z6",
    10: "Z10",
    15: "Z15",
    12: "Z2xZ3xF4",
    18: "Z2xZ3xZ3",
}


# ---------------------------------------------------------------------------
# ring expressions


class RingSyntaxError(RingError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(GF)\s*\(\s*(\d+)\s*\)|([ZF])\s*(\d+)|(x))", re.IGNORECASE)


def parse_ring_expr(text: str) -> RingSpec:
    """``expr := term ("x" term)*``; ``term := "Z" n | "F" q | "GF(" q ")"``.

    ``Z n`` is split into prime-power residue components, ``F p`` collapses to
    ``Z p``, so ``"Z6xF4"`` and ``"Z2 x Z3 x GF(4)"`` give the same spec.
    """
    comps = []
    pos = 0
    expect_term = True
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos == n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise RingSyntaxError("unexpected character", text, pos)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(5):
            if expect_term:
                raise RingSyntaxError("expected a ring term", text, start)
            expect_term = True
        else:
            if not expect_term:
                raise RingSyntaxError("expected 'x'", text, start)
            if m.group(1):
                kind, value = "F", int(m.group(2))
            else:
                kind, value = m.group(3).upper(), int(m.group(4))
            if kind == "Z":
                if value < 2:
                    raise RingSyntaxError(f"modulus {value} must be >= 2", text, start)
                comps.extend(residue_ring(value).components)
            else:
                pk = prime_power(value)
                if pk is None:
                    raise RingSyntaxError(f"field size {value} is not a prime power", text, start)
                comps.append(GaloisField(*pk))
            expect_term = False
        pos = m.end()
    if expect_term:
        raise RingSyntaxError("expected a ring term", text, pos)
    return RingSpec(tuple(comps))


# ---------------------------------------------------------------------------
# reports


def _sorted_dict(d: dict) -> dict:
    return {str(k): v for k, v in sorted(d.items())}


def build_report(
    spec: FactorSpec,
    ring: RingSpec,
    *,
    check_oracle: bool = False,
    colors: bool = False,
    mub: bool = False,
    timing: bool = False,
    bound: int = pg.DEFAULT_DIMENSION_BOUND,
) -> tuple[dict[str, Any], VerificationReport, int]:
    """Run the analysis and return (JSON-ready report, raw verification, exit code)."""
    t0 = time.perf_counter()
    ver = verify_paper_claim(spec, ring, colors=colors, bound=bound)
    findings = list(ver.findings)
    ok = ver.isomorphic
    if colors and not ver.colored_isomorphic:
        ok = False

    report: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "dimension": ver.dimension,
        "factors": list(ver.factors),
        "ring": ver.ring,
        "operator_count": ver.operator_count,
        "clique_count": ver.clique_count,
        "clique_sizes": _sorted_dict(ver.clique_sizes),
        "type_table": ver.type_table,
        "point_count": ver.point_count,
        "verdicts": {
            "isomorphic": ver.isomorphic,
            "colored": ver.colored_isomorphic,
            "colored_components": ver.colored_components_isomorphic,
        },
        "bijection": [list(pair) for pair in ver.bijection],
    }

    errata = []
    if spec.primes == (2, 3):
        g = pg.build_graph(spec, bound=bound)
        _, issues = pg.compare_sextit_sets(g, pg.maximal_cliques(g))
        for d in issues:
            errata.append(
                {
                    "set": d.name,
                    "printed": list(d.printed),
                    "computed": list(d.computed),
                    "missing": list(d.missing),
                    "extra": list(d.extra),
                    "extra_also_in": list(d.extra_also_in),
                }
            )
    report["errata"] = errata

    if check_oracle:
        bad = oracle_sweep(spec)
        n = ver.operator_count
        report["oracle"] = {"pairs": n * (n - 1) // 2, "mismatches": len(bad)}
        if bad:
            ok = False
            findings.append(f"symbolic commutation disagrees with the matrix oracle on {len(bad)} pairs")

    if mub:
        mr = mub_report(ring)
        report["mub"] = {
            "rows": [
                {
                    "ring": r.ring,
                    "role": r.role,
                    "points": r.points,
                    "max_distant": r.max_distant,
                    "grid": r.grid,
                    "is_grid": r.is_grid,
                    "witness": r.witness,
                }
                for r in mr.rows
            ],
            "component_bound": mr.component_bound,
            "notes": mr.notes,
        }

    report["findings"] = findings
    if timing:
        report["timing"] = {k: round(v, 6) for k, v in ver.timing.items()}
        report["timing"]["total"] = round(time.perf_counter() - t0, 6)
    return report, ver, EXIT_OK if ok else EXIT_FALSE


def load_schema() -> dict:
    return json.loads(resources.files("qrg").joinpath("schemas/report-v1.json").read_text(encoding="utf-8"))


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def render_text(report: dict) -> str:
    out = [
        f"dimension {report['dimension']}  factors {','.join(map(str, report['factors']))}  ring {report['ring']}",
        f"operators {report['operator_count']}  maximal commuting sets {report['clique_count']}  sizes {report['clique_sizes']}",
        f"points of P1({report['ring']}) {report['point_count']}",
        "operator types (membership, |x^perp|, count, identity pattern):",
    ]
    for row in report["type_table"]:
        out.append(f"  ({row['membership']}, {row['perp']})  x{row['count']}  {' '.join(row['identity_patterns'])}")
    v = report["verdicts"]
    out.append(f"isomorphic: {'yes' if v['isomorphic'] else 'NO'}")
    if v["colored"] is not None:
        out.append(f"colored (component counts): {'yes' if v['colored'] else 'no'}")
        out.append(f"colored (component sets): {'yes' if v['colored_components'] else 'no'}")
    if report["bijection"]:
        out.append("witness bijection:")
        out.extend(f"  {a}  ->  {b}" for a, b in report["bijection"])
    for e in report.get("errata", []):
        out.append(
            f"erratum {e['set']}: printed {{{','.join(e['printed'])}}}, computed {{{','.join(e['computed'])}}}"
        )
    if "oracle" in report:
        o = report["oracle"]
        out.append(f"oracle: {o['pairs']} pairs, {o['mismatches']} mismatches")
    if "mub" in report:
        out.append("distant cliques:")
        for r in report["mub"]["rows"]:
            out.append(f"  {r['ring']:<12} {r['role']:<28} points {r['points']:>4}  grid {r['grid']:<8} max distant {r['max_distant']}")
    if report["findings"]:
        out.append("findings:")
        out.extend(f"  - {f}" for f in report["findings"])
    if "timing" in report:
        out.append("timing: " + ", ".join(f"{k} {v:.3f}s" for k, v in report["timing"].items()))
    return "\n".join(out) + "\n"


_DOT_STYLES = ("solid", "dashed", "dotted", "bold", "dashed,bold", "dotted,bold")


def _dot_cluster(name: str, prefix: str, g: ColoredGraph) -> list[str]:
    colors = sorted(g.color_counts())
    style = {c: _DOT_STYLES[i] for i, c in enumerate(colors)} if len(colors) <= len(_DOT_STYLES) else None
    lines = [f"  subgraph cluster_{prefix} {{", f'    label="{name}";']
    for i, lab in enumerate(g.labels or [str(i) for i in range(len(g))]):
        lines.append(f'    {prefix}{i} [label="{lab}"];')
    for i, j, c in g.edges():
        attr = f'style="{style[c]}"' if style else f'label="{c}"'
        lines.append(f"    {prefix}{i} -- {prefix}{j} [{attr}];")
    lines.append("  }")
    return lines


def render_dot(report: dict, ver: VerificationReport) -> str:
    lines = ["graph qrg {", "  node [shape=box, fontsize=10];"]
    lines += _dot_cluster(f"maximal commuting sets, d={report['dimension']}", "S", ver.incidence)
    lines += _dot_cluster(f"P1({report['ring']}) neighbors", "P", ver.ring_graph)
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument handling


def _factors(text: str) -> FactorSpec:
    try:
        return FactorSpec(tuple(int(x) for x in text.split(",") if x.strip()))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _ring(text: str) -> RingSpec:
    try:
        return parse_ring_expr(text)
    except RingError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qrg", description="Pauli commutation geometry vs projective ring lines")
    sub = parser.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="census, operator types and isomorphism check for one dimension")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--dim", type=int, help="qudit dimension (factored into nondecreasing primes)")
    src.add_argument("--factors", type=_factors, help="comma-separated primes, e.g. 2,2,3")
    a.add_argument("--ring", type=_ring, help="ring expression, e.g. Z2xZ3xF4")
    a.add_argument("--format", choices=("text", "json", "dot"), default="text")
    a.add_argument("--check-oracle", action="store_true", help="compare symbolic commutation with exact matrices")
    a.add_argument("--colors", action="store_true", help="also test colored (fine-structure) isomorphism")
    a.add_argument("--mub", action="store_true", help="tabulate maximal sets of pairwise distant points")
    a.add_argument("--out", help="write the report here instead of stdout")
    a.add_argument("--seed", type=int, help="accepted for script compatibility; the pipeline is deterministic")
    a.add_argument("--threads", type=_positive, help="worker count (output does not depend on it)")
    a.add_argument("--bound", type=_positive, default=pg.DEFAULT_DIMENSION_BOUND, help="largest dimension analyzed")
    a.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")
    return parser


def run_analyze(args: argparse.Namespace) -> int:
    if args.dim is not None:
        try:
            spec = FactorSpec.from_dimension(args.dim)
        except ValueError as exc:
            print(f"qrg: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        spec = args.factors
    d = spec.dimension
    ring = args.ring
    if ring is None:
        if d not in DEFAULT_RINGS:
            print(f"qrg: error: no default ring for d={d}; pass --ring", file=sys.stderr)
            return EXIT_USAGE
        ring = parse_ring_expr(DEFAULT_RINGS[d])
    threads = args.threads or int(os.environ.get("QRG_THREADS", "0") or 0) or os.cpu_count() or 1
    log.debug("threads=%d (single pass; results are schedule independent)", threads)
    try:
        report, ver, code = build_report(
            spec,
            ring,
            check_oracle=args.check_oracle,
            colors=args.colors,
            mub=args.mub,
            timing=args.timing,
            bound=args.bound,
        )
    except pg.DimensionBoundError as exc:
        print(f"qrg: error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    if args.format == "json":
        text = render_json(report)
    elif args.format == "dot":
        text = render_dot(report, ver)
    else:
        text = render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if args.command == "analyze":
        return run_analyze(args)
    return EXIT_USAGE  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())

