#!/usr/bin/env python3
"""Scan every permutation of S_3 and S_4 through the monomial-sphere
classifier, in all four regimes, and tabulate the resulting spheres.

The output shows that no singleton produces anything beyond the ten
spheres: the identity gives the free sphere, half-commuting permutations
the half-liberated one, and everything else collapses to the (twisted)
classical sphere.
"""

import argparse
import itertools
from collections import Counter

from ncspheres.relations import classify_monomial_sphere


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=4, choices=(3, 4))
    args = ap.parse_args()
    for regime in ("real", "real_twisted", "complex", "complex_twisted"):
        counts: Counter = Counter()
        for k in range(2, args.depth + 1):
            for perm in itertools.permutations(range(1, k + 1)):
                sphere = classify_monomial_sphere([perm], regime)
                counts[sphere] += 1
                word = "".join(map(str, perm))
                print(f"{regime:16s} {word:6s} -> {sphere}")
        print(f"{regime}: {dict(counts)}\n")


if __name__ == "__main__":
    main()
