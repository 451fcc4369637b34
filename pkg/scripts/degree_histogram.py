"""Distribution of deg(Gamma . Delta) over whole automorphism groups.

For each matroid, enumerates every automorphism (brute force), computes the
signed beta of the fixed lattice and the Lefschetz sum, and prints how often
each value occurs. Uses the fast route (no intersection product) unless
--with-degree is given.

    python3 scripts/degree_histogram.py uniform:3:5 nonfano fano
"""

import argparse
from collections import Counter

from tropical_trace.catalog import automorphisms, catalog
from tropical_trace.framing import lefschetz_sum
from tropical_trace.intersection import compute_intersection
from tropical_trace.matroid import automorphism, fixed_flat_lattice
from tropical_trace.poset import beta


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="+")
    ap.add_argument("--with-degree", action="store_true")
    args = ap.parse_args()
    for name in args.names:
        M = catalog(name)
        hist = Counter()
        bad = 0
        auts = automorphisms(M)
        for perm in auts:
            psi = automorphism(M, perm)
            b = (-1) ** M.n * beta(fixed_flat_lattice(M, psi))
            L = lefschetz_sum(M, psi)
            d = compute_intersection(M, psi, check_linearity=False).degree \
                if args.with_degree else b
            bad += not (b == L == d)
            hist[b] += 1
        print("%-12s |Aut| = %4d  mismatches %d  values %s"
              % (name, len(auts), bad, dict(sorted(hist.items()))))


if __name__ == "__main__":
    main()
