"""Enumerate every qualitative probability at desk scale and realize each.

Prints one line per world count: ordering count, realizability rate, and
the smallest separation margin seen.  The 3-world count is a recorded
golden value; drift here means the enumerator changed behavior.
"""

import argparse
from fractions import Fraction

from qualprob.algebra import Space
from qualprob.oracle import enumerate_qualitative_probabilities
from qualprob.realize import Realization, realize_complete


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-worlds", type=int, default=3, choices=(1, 2, 3))
    args = ap.parse_args()
    for n in range(1, args.max_worlds + 1):
        space = Space("worlds", tuple(f"w{i}" for i in range(1, n + 1)))
        out = enumerate_qualitative_probabilities(space)
        margins = []
        for o in out.orderings:
            got = realize_complete(o)
            if isinstance(got, Realization):
                margins.append(got.margin)
        smallest = min(margins) if margins else Fraction(0)
        print(f"{n} worlds: {out.total_count} orderings, "
              f"realizable {len(margins)}/{out.total_count}, min margin {smallest}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
