#!/usr/bin/env python3
"""Survey how different measurement contexts reshape a set of states.

For each state in a small seeded batch: the distance between the two
conditioned states for an incompatible observable pair, and the largest
statistical-equivalence residue for compatible probes.  Ends with the
two finite obstruction searches.
"""

import argparse

import numpy as np

from qcontext import (
    context,
    contexts_distance,
    ghz_contradiction,
    mermin_peres_square,
    observable,
    search_noncontextual_assignment,
    statistical_equivalence,
)
from qcontext.linalg import SIGMA_X, SIGMA_Z
from qcontext.sampling import random_density


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=8)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    a = observable(SIGMA_Z, label="sz")
    b = observable(SIGMA_X, label="sx")

    print(f"{'state':>8} {'purity':>10} {'d(W_A, W_B)':>12} {'equiv delta':>12}")
    for i in range(args.count):
        w = random_density(2, rng)
        distance = contexts_distance(w, a, b)
        delta = statistical_equivalence(context(w, a)).delta
        print(f"{i:>8} {w.purity():>10.6f} {distance:>12.6f} {delta:>12.3e}")

    square = mermin_peres_square()
    found = search_noncontextual_assignment(square)
    relaxed = search_noncontextual_assignment(square.without_context(5))
    print()
    print(
        f"observable square: {found.satisfying_count} consistent assignments "
        f"out of {found.cases_checked}; dropping one context leaves "
        f"{relaxed.satisfying_count}"
    )
    ghz = ghz_contradiction()
    print(
        f"three-spin parity: constraints force {ghz.forced_product:+d} but "
        f"multiply to {ghz.constraint_product:+d} "
        f"(contradiction: {ghz.contradiction})"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
