"""Command-line certification driver.

Exit codes: 0 when no claim is refuted, 1 when some claim is refuted, 2 on a
configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from fppcert import certify
from fppcert.hochschild import certify_hochschild
from fppcert.invariants import certify_cohomology
from fppcert.lattice import PLANE_IDS, certify_lattices, export_generators, plane
from fppcert.report import CertReport

SUBCOMMANDS = ("padic", "lattices", "lemma3", "cohomology", "hochschild", "fano", "all")

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_CONFIG = 2


class ConfigError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fppcert",
        description="Machine-check the finite computations behind 2-adic fake projective planes.",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--plane", default="mumford", help="one of: " + ", ".join(PLANE_IDS))
    parser.add_argument("--precision", type=int, default=64, help="2-adic working precision in bits")
    parser.add_argument("--report", type=Path, help="write the JSON report here")
    parser.add_argument("--witness-log", type=Path, help="write one JSON line per lemma3 candidate")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for lemma3")
    parser.add_argument("--modulus", type=int, default=3, help="gluing modulus for lemma3 (1 is a negative control)")
    parser.add_argument("--branchwise", action="store_true", help="require divisibility on each branch separately")
    parser.add_argument("--export-matrices", type=Path, help="write the generator matrices as JSON")
    parser.add_argument("--quiet", action="store_true", help="skip the summary table")
    return parser


def _validate(args: argparse.Namespace) -> None:
    if args.plane not in PLANE_IDS:
        raise ConfigError(f"unknown plane {args.plane!r}; expected one of {', '.join(PLANE_IDS)}")
    if args.precision < 8:
        raise ConfigError("--precision must be at least 8 bits")
    if args.jobs < 1:
        raise ConfigError("--jobs must be positive")
    if args.modulus < 1:
        raise ConfigError("--modulus must be positive")


def options_of(args: argparse.Namespace) -> Dict[str, object]:
    """Flags that affect the report body; paths and --jobs are left out."""
    return {
        "plane": args.plane,
        "precision": args.precision,
        "modulus": args.modulus,
        "branchwise": args.branchwise,
    }


def run(subcommand: str, args: argparse.Namespace) -> Tuple[CertReport, int]:
    _validate(args)
    two_rank = plane(args.plane).two_torsion_rank
    report = CertReport()
    if subcommand in ("padic", "all"):
        report.extend(certify.certify_padic(args.precision))
    if subcommand in ("lattices", "all"):
        report.extend(certify_lattices(args.plane, args.precision))
    if subcommand in ("fano", "all"):
        report.extend(certify.certify_fano())
    if subcommand in ("lemma3", "all"):
        report.extend(
            certify.certify_lemma3(args.modulus, args.jobs, args.branchwise, args.witness_log)
        )
    if subcommand in ("cohomology", "all"):
        report.extend(certify_cohomology(two_rank))
    if subcommand in ("hochschild", "all"):
        report.extend(certify_hochschild(two_rank))
    return report, EXIT_OK if report.ok else EXIT_REFUTED


def summary_table(report: CertReport) -> str:
    width = max((len(c.claim_id) for c in report.claims), default=8)
    lines = [f"{'claim':<{width}}  status    ms", "-" * (width + 18)]
    for c in report.claims:
        lines.append(f"{c.claim_id:<{width}}  {c.status.value:<8}  {c.elapsed_ms:8.1f}")
    counts = report.counts()
    lines.append("-" * (width + 18))
    lines.append("  ".join(f"{k}={v}" for k, v in counts.items()))
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        report, code = run(args.subcommand, args)
    except ConfigError as exc:
        print(f"fppcert: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.export_matrices:
        args.export_matrices.write_text(json.dumps(export_generators(), indent=2) + "\n")
    if args.report:
        args.report.write_text(report.to_json(args.subcommand, options_of(args)))
    if not args.quiet:
        print(summary_table(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
