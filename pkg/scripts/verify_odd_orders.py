"""Check stability of every connected irreducible circulant of odd order up to a bound.

    python3 scripts/verify_odd_orders.py --max-order 15
"""

import argparse
import sys
import time

from circstab.sweep import THEOREM_ORDER_CAP, verify_main_theorem


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-order", type=int, default=THEOREM_ORDER_CAP)
    args = parser.parse_args(argv)

    start = time.perf_counter()
    report = verify_main_theorem(args.max_order)
    elapsed = time.perf_counter() - start

    print(f"{'order':>5} {'instances':>9}")
    for n, k in sorted(report.per_order.items()):
        print(f"{n:>5} {k:>9}")
    print(f"total {report.instances} instances, {len(report.counterexamples)} counterexamples, {elapsed:.2f}s")
    for c in report.counterexamples:
        print("counterexample:", c)
    return 0 if report.ok else 2


if __name__ == "__main__":
    sys.exit(main())
