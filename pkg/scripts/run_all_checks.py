#!/usr/bin/env python3
"""Run every verification suite and print the combined report.

Exit status is nonzero if any suite fails.  With default sizes, the
asymptotics suite is expected to report failures for the g-form and
l-form limiting constants: the measured decay laws contradict those
targets (see README.md).  Pass --skip-asymptotics for the fast all-green
subset, or --max-n to scale the heavy suites.
"""

import argparse
import sys
import time

from gammaforms.cli import RunConfig, suites, VerificationReport


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=0, help="0 = per-suite default")
    parser.add_argument("--skip-asymptotics", action="store_true")
    parser.add_argument("--cache-dir", default=None)
    args = parser.parse_args()

    failures = 0
    for name, runner in suites().items():
        if args.skip_asymptotics and name == "asymptotics":
            continue
        config = RunConfig(command="verify", suite=name, max_n=args.max_n)
        if args.cache_dir:
            from pathlib import Path

            config.cache_dir = Path(args.cache_dir)
        started = time.perf_counter()
        checks = runner(config)
        report = VerificationReport(
            suite=name, checks=checks, elapsed_s=time.perf_counter() - started
        )
        print(report.to_text(timings=True))
        print()
        if not report.passed:
            failures += 1
    if failures:
        print(f"{failures} suite(s) reported failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
