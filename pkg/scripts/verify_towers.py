"""Certify eps_13 .. eps_16 in base 10 and print every check and residue."""

import argparse

from elated.towers import verify_epsilon_tower


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, choices=[13, 14, 15, 16], default=16)
    ap.add_argument("--primes", type=int, default=20)
    ap.add_argument("--exhaustive", action="store_true", help="rerun the height-12 basic search")
    args = ap.parse_args()
    r = verify_epsilon_tower(args.k, args.primes, exhaustive=args.exhaustive)
    print(f"eps_{r.k} = {r.epsilon.render()}")
    print(f"height {r.height}, status {r.status}")
    for c in r.checks:
        print(f"  [{c.status}] {c.name}" + (f"  ({c.detail})" if c.detail else ""))
    for x in r.residues:
        print(f"  {x.name} = {x.value} (mod {x.modulus})")


if __name__ == "__main__":
    main()
