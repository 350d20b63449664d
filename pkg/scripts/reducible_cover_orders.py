"""Compare |Aut(B(X))| with two closed forms for reducible odd circulants X = Y wr K_d-bar.

Column ``base-wreath`` is (2|Aut Y|)^d * d!, the order of (Aut(Y) x Z2) wr S_d
with S_d permuting d copies. Column ``twin-classes`` is 2|Aut Y| * (d!)^(2|Y|),
where each of the 2|Y| twin classes of B(X) is permuted independently.

    python3 scripts/reducible_cover_orders.py --max-order 15
"""

import argparse
import math
import sys

from circstab.autgroup import automorphism_group
from circstab.circulants import reducible_decomposition
from circstab.graph import bipartite_double_cover, circulant, is_connected, is_irreducible
from circstab.sweep import THEOREM_ORDER_CAP, enumerate_connection_sets


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-order", type=int, default=THEOREM_ORDER_CAP)
    parser.add_argument("--dedup", action="store_true")
    args = parser.parse_args(argv)

    print(f"{'set':<36} {'d':>2} {'|Aut B(X)|':>16} {'base-wreath':>14} {'twin-classes':>16}")
    for n in range(3, args.max_order + 1, 2):
        for cs in enumerate_connection_sets(n, dedup=args.dedup):
            x = circulant(cs)
            if not is_connected(x) or is_irreducible(x):
                continue
            dec = reducible_decomposition(cs)
            aut_y = automorphism_group(circulant(dec.quotient)).order()
            actual = automorphism_group(bipartite_double_cover(x)).order()
            base = (2 * aut_y) ** dec.d * math.factorial(dec.d)
            twins = 2 * aut_y * math.factorial(dec.d) ** (2 * dec.quotient.n)
            print(f"{str(cs):<36} {dec.d:>2} {actual:>16} {base:>14} {twins:>16}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
