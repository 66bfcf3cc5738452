"""Distribution of integrality exponents k0 against the modular order for rotated integral matrices."""

import argparse
import collections
import random
from fractions import Fraction

from stretchcert.realize import RationalSymmetricMatrix, cayley
from stretchcert.skewpower import build_block, integrality_exponent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=40)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    n = args.n
    ratio = collections.Counter()
    for _ in range(args.samples):
        Q0 = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                Q0[i][j] = Q0[j][i] = rng.randint(-3, 3)
        S = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                S[i][j] = Fraction(rng.choice([-2, -1, 1, 2]), rng.randint(1, 3))
                S[j][i] = -S[i][j]
        Q = cayley(tuple(map(tuple, S))).conjugate(RationalSymmetricMatrix(tuple(map(tuple, Q0))))
        ic = integrality_exponent(build_block(Q))
        ratio[ic.order // ic.k0] += 1
        print(f"N={ic.modulus:>12d} order={ic.order:>10d} k0={ic.k0:>8d} ({ic.method})")
    print("order / k0 histogram:", dict(sorted(ratio.items())))


if __name__ == "__main__":
    main()
