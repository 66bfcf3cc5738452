"""Run the skew-power certificate over a list of small Salem polynomials and tabulate k0, k and timings."""

import argparse
import time

from stretchcert.errors import StretchCertError
from stretchcert.exact.poly import parse_poly
from stretchcert.skewpower import salem_certificate, verify_certificate_json

DEFAULT = [
    "x^4-x^3-x^2-x+1",
    "x^4-2x^3+x^2-2x+1",
    "x^4-3x^3+3x^2-3x+1",
    "x^4-10x^3+10x^2-10x+1",
    "x^6-x^4-x^3-x^2+1",
    "x^8-x^5-x^4-x^3+1",
    "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1",
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("polys", nargs="*", default=DEFAULT)
    ap.add_argument("--floor", type=int, default=1)
    args = ap.parse_args()
    print(f"{'polynomial':40s} {'n':>2} {'e':>2} {'k0':>4} {'k':>4} {'bound':>6} verified  seconds")
    for text in args.polys:
        t0 = time.perf_counter()
        try:
            c = salem_certificate(parse_poly(text), entry_floor=args.floor)
        except StretchCertError as exc:
            print(f"{text:40s} failed at {exc.stage}: {exc}")
            continue
        ok = all(v for _, v in verify_certificate_json(c.to_json()))
        print(f"{text:40s} {c.Q.n:2d} {c.e:2d} {c.integrality.k0:4d} {c.k:4d} {c.k_bound:6d} {ok!s:8}  {time.perf_counter() - t0:7.2f}")


if __name__ == "__main__":
    main()
