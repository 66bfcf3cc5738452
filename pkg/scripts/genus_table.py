"""Genus of the square-tiled surface against n^2 - n + 1 for random matrices with entries >= 2."""

import argparse
import random
import time

from stretchcert.exact.linalg import det
from stretchcert.surface import analyze, build_surface, expected_genus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("--max-entry", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print("n  samples  expected  observed  agree  seconds")
    for n in range(1, args.max_n + 1):
        seen, agree, t0 = set(), 0, time.perf_counter()
        done = 0
        while done < args.samples:
            Q = [[rng.randint(2, args.max_entry) for _ in range(n)] for _ in range(n)]
            if det(Q) == 0:
                continue
            done += 1
            g = analyze(build_surface(Q)).genus
            seen.add(g)
            agree += g == expected_genus(n)
        print(f"{n}  {args.samples:7d}  {expected_genus(n):8d}  {sorted(seen)!s:>8}  {agree:5d}  {time.perf_counter() - t0:7.2f}")


if __name__ == "__main__":
    main()
