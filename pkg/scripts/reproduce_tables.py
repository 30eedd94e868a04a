"""Print the cycle, minimal-height, base-constant and preimage tables."""

import argparse
import time

from elated.cycles import enumerate_cycles
from elated.digitmap import render
from elated.heights import LimitExceeded, epsilon
from elated.preimage import compute_base_constants, shortest_fully_basic_preimages

PREIMAGE_ROWS = [487, 488, 529, 534, 543, 546, 549, 557, 561, 564, 567]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-base", type=int, default=10)
    ap.add_argument("--limit", type=int, default=10**15, help="search limit for minimal heights")
    args = ap.parse_args()
    start = time.perf_counter()

    print("cycles of the elated map")
    for b in range(2, args.max_base + 1):
        cs = enumerate_cycles(b)
        print(f"  b={b:2d}: " + "; ".join(" ".join(c.rendered()) for c in cs.cycles))

    print("smallest elated number of height k (base b digits)")
    for b in range(2, args.max_base + 1):
        row = []
        k = 2
        while True:
            try:
                row.append(render(epsilon(k, b, limit=args.limit).value, b))
            except LimitExceeded:
                break
            k += 1
        print(f"  b={b:2d}: " + " ".join(row))

    print("base constants (a*, C)")
    for b in range(3, args.max_base + 1):
        c = compute_base_constants(b)
        print(f"  b={b:2d}: a*={c.a_star} C={c.C}")

    print("shortest fully basic preimages in base 10")
    for a in PREIMAGE_ROWS:
        print(f"  {a}: {{" + ", ".join(map(str, shortest_fully_basic_preimages(a, 10).as_ints())) + "}")

    print(f"done in {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
