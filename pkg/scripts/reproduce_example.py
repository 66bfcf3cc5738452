"""Degree-4 Salem chain end to end: certificate, Thurston stage and the 8x4x6 product example."""

import argparse

from stretchcert.exact.field import NumberField
from stretchcert.exact.poly import parse_poly
from stretchcert.exact.roots import isolate_roots
from stretchcert.skewpower import salem_certificate, verify_certificate_json
from stretchcert.thurston import classify_word, pf_data, pf_data_from_product, veech_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--poly", default="x^4-x^3-x^2-x+1")
    ap.add_argument("--floor", type=int, nargs="+", default=[1, 2])
    args = ap.parse_args()
    p = parse_poly(args.poly)
    lam = isolate_roots(p)[-1]
    print(f"salem root {lam.decimal(10)}")
    for floor in args.floor:
        c = salem_certificate(p, entry_floor=floor)
        ok = all(v for _, v in verify_certificate_json(c.to_json()))
        rep = classify_word("CD", pf_data(c.Qk))
        same = rep.stretch == (NumberField(lam).gen ** (2 * c.k)).to_algebraic()
        print(f"floor {floor}: k0={c.integrality.k0} k={c.k} Qk={[[str(x) for x in r] for r in c.Qk]}"
              f" verified={ok} stretch={rep.stretch.decimal(8)} = lambda^{2 * c.k}: {same}"
              f" veech={veech_check(rep.stretch)[0]}")
    rep = classify_word("CD", pf_data_from_product([[8, 4], [4, 6]]))
    print(f"product [[8,4],[4,6]]: nu {rep.nu.minpoly}, stretch {rep.stretch.decimal(10)} ({rep.stretch.minpoly})")


if __name__ == "__main__":
    main()
