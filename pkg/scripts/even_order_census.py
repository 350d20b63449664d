"""List the nontrivially unstable circulants of even order (up to multipliers).

Odd orders have none; even orders do, starting at 8. Each row shows the
connection set and both automorphism group orders.

    python3 scripts/even_order_census.py --max-order 16
"""

import argparse
import sys

from circstab.graph import circulant
from circstab.stability import Status, classify
from circstab.sweep import EVEN_ORDER_CAP, enumerate_connection_sets


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-order", type=int, default=EVEN_ORDER_CAP)
    args = parser.parse_args(argv)

    total = 0
    for n in range(4, args.max_order + 1, 2):
        hits = []
        for cs in enumerate_connection_sets(n, dedup=True):
            v = classify(circulant(cs))
            if v.status is Status.NONTRIVIALLY_UNSTABLE:
                hits.append((cs, v))
        total += len(hits)
        print(f"order {n}: {len(hits)} nontrivially unstable")
        for cs, v in hits:
            print(f"  {cs}  |Aut X|={v.aut_x_order}  |Aut B(X)|={v.aut_bx_order}")
    print(f"total {total}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
