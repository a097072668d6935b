"""Regenerate the four headline result tables from scratch.

Everything here is recomputed through the library's exact routes; nothing
is hard-coded. Runs in a few seconds at the default sizes.

Usage:
    python3 scripts/reproduce_tables.py [--n-max 8] [--census-n 7] [--odd-n 6]
"""

import argparse
import time
from fractions import Fraction

from parkmodel import (
    expected_random_naples,
    full_census,
    naples_count,
    parking_count,
    prob_random_naples,
    verify_odd_census,
)


def print_expected_count_table(n_max: int) -> None:
    half = Fraction(1, 2)
    print(f"Expected parking-function counts for n = 1..{n_max}")
    print(f"{'n':>3} {'classic':>12} {'expected p=1/2':>18} {'midpoint':>14} {'naples k=1':>12}")
    for n in range(1, n_max + 1):
        classic = parking_count(n)
        naples = naples_count(n, 1)
        expected = expected_random_naples(n, 1, half)
        midpoint = Fraction(classic + naples, 2)
        print(f"{n:>3} {classic:>12} {str(expected):>18} {str(midpoint):>14} {naples:>12}")
    print()


def print_three_car_polynomials() -> None:
    print("Parking probability of every 3-car tuple, random 1-Naples rule")
    for a1 in (1, 2, 3):
        cells = []
        for a2 in (1, 2, 3):
            for a3 in (1, 2, 3):
                poly = prob_random_naples((a1, a2, a3), k=1)
                cells.append(f"({a1},{a2},{a3}): {poly}")
        print("  " + "   ".join(f"{c:<22}" for c in cells))
    print()


def print_census_histogram(n: int) -> None:
    start = time.perf_counter()
    table = full_census(n)
    elapsed = time.perf_counter() - start
    print(
        f"Probability census over all {n}^{n} = {n**n} tuples "
        f"(numerators out of {table.denominator}, swept in {elapsed:.1f}s)"
    )
    items = list(table.items())
    for row_start in range(0, len(items), 8):
        row = items[row_start : row_start + 8]
        print("  " + "  ".join(f"{a:>3}:{count:<8}" for a, count in row))
    print(f"  total tuples {table.total()}, expected count {table.expectation()}")
    print()


def print_odd_numerator_tuples(n: int) -> None:
    report = verify_odd_census(n)
    print(f"The {len(report.findings)} tuples with odd numerators at n = {n}")
    for numerator in sorted(report.findings):
        alpha = report.findings[numerator]
        print(f"  {numerator:>3}/{1 << (n - 1)}: {alpha}")
    print(f"  sweep verdict: {'all checks passed' if report.passed else 'FAILED'}")
    print()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=8, help="rows in the expected-count table")
    parser.add_argument("--census-n", type=int, default=7, help="car count for the full census")
    parser.add_argument("--odd-n", type=int, default=6, help="car count for the odd-numerator sweep")
    args = parser.parse_args()

    print_expected_count_table(args.n_max)
    print_three_car_polynomials()
    print_census_histogram(args.census_n)
    print_odd_numerator_tuples(args.odd_n)


if __name__ == "__main__":
    main()
