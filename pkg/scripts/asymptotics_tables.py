#!/usr/bin/env python3
"""Tabulate the envelope-normalized linear forms against their targets.

For each form the table shows |form| divided by its asymptotic envelope
along a geometric ladder, the least-squares extrapolation of the limit,
and the target constant.  This is the experiment behind the acceptance
checks: f settles at 2 sqrt(pi)/(4e)^{3/8}; g and l instead decay like
kappa/n (kappa ~= 1.66) and ~5.4 n^{-1}, contradicting their claimed
constants 1/8 and 2*2^(1/4)/e^{3/8}.
"""

import argparse
import sys
import warnings

import mpmath

from gammaforms import fit_constant, generate_all, target_constant
from gammaforms.constants import bundle
from gammaforms.forms import budget_digits, eval_range, geometric_ladder


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=400)
    parser.add_argument("--min-n", type=int, default=25)
    parser.add_argument("--points", type=int, default=10)
    args = parser.parse_args()

    ladder = geometric_ladder(args.min_n, args.max_n, args.points)
    print(f"generating tables to n = {args.max_n} ...", file=sys.stderr)
    tables = generate_all(args.max_n + 1)
    digits = budget_digits(args.max_n)
    print(f"computing constants to {digits} digits ...", file=sys.stderr)
    constants = bundle(digits)

    header = "n".rjust(6) + "".join(name.rjust(16) for name in ("f", "g", "l", "vE", "wE"))
    print(header)
    columns = {}
    for name in ("f", "g", "l", "vE", "wE"):
        columns[name] = {
            r.n: r.normalized
            for r in eval_range(tables, name, ladder, constants=constants)
        }
    for n in ladder:
        row = str(n).rjust(6)
        for name in ("f", "g", "l", "vE", "wE"):
            row += mpmath.nstr(columns[name][n], 8).rjust(16)
        print(row)

    print()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name in ("f", "g", "l"):
            fit = fit_constant(tables, name, ladder, constants=constants)
            target = target_constant(name)
            print(
                f"{name}: extrapolated |limit| {fit.c_estimate:+.6f} "
                f"(decay exponent {fit.decay_exponent:+.3f}, "
                f"converged={fit.converged}) vs target {float(target):+.6f}"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
