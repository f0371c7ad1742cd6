#!/usr/bin/env python3
"""
Truncation sweep across the three geometries

Runs the verify command for disk, oscillator and sphere under white noise and prints
measured truncation errors next to the improved and coarse bounds.
"""

import argparse
import logging
import sys
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(BASE_DIR))

from src.cli import cmd_verify
from src.config import ConfigManager
from src.errors import EnergyCovError
from src.scheduler import WorkerPool
from src.storage import setup_logging

GEOMETRIES = {
    "disk": [],
    "oscillator": ["d=2", "gamma=1.5"],
    "sphere": [],
}


def sweep_geometry(name, overrides, reference_cutoff, pool):
    """
    Verify one geometry.

    Returns:
        dict: the verification report
    """
    flat = {"geometry": name, "verify.reference_cutoff": str(reference_cutoff)}
    for item in overrides:
        key, value = ConfigManager.parse_override(item)
        flat[key] = value
    config = ConfigManager().build(flat)
    return cmd_verify(config, pool)


def print_report(name, report):
    print(f"\n{name} (reference N = {report['reference_cutoff']}, γ_eff = {report['gamma_eff']:.6g})")
    print(f"  {'N':>5} {'|λ_N+1|':>12} {'measured':>14} {'improved':>14} {'coarse':>14}  ok")
    for row in report["truncation"]:
        print(
            f"  {row['N']:>5} {abs(row['lambda_next']):>12.6g} {row['measured']:>14.6e} "
            f"{row['improved']:>14.6e} {row['coarse']:>14.6e}  {'✓' if row['ok'] else '✗'}"
        )
    slope = report["rate_fit"].get("slope_vs_lambda")
    if slope is not None:
        print(f"  slope vs |λ_N+1|: {slope:.4f}")
    for failure in report["failures"]:
        print(f"  ✗ {failure}")


def main():
    parser = argparse.ArgumentParser(description="Truncation sweep for all geometries")
    parser.add_argument("--reference-cutoff", type=int, default=200)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    setup_logging(log_level=logging.WARNING)
    pool = WorkerPool(args.threads)

    print("=" * 80)
    print("Truncation sweep")
    print("=" * 80)

    passed = 0
    failed = 0
    for name, overrides in GEOMETRIES.items():
        try:
            report = sweep_geometry(name, overrides, args.reference_cutoff, pool)
        except EnergyCovError as e:
            print(f"\n{name}: ✗ {type(e).__name__}: {e}")
            failed += 1
            continue
        print_report(name, report)
        if report["passed"]:
            passed += 1
        else:
            failed += 1

    print("\n" + "=" * 80)
    print(f"Passed: {passed}, failed: {failed}")
    return 0 if failed == 0 else 4


if __name__ == "__main__":
    sys.exit(main())
