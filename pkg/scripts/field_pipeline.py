"""Totally real field -> unit -> matrix -> surface -> stretch factor, for several fields."""

import argparse
import time

from stretchcert.config import PipelineConfig
from stretchcert.errors import SearchExhausted, StretchCertError
from stretchcert.unitfinder import UnitSystem, TotallyRealField, theoremB_pipeline

FIELDS = [("x-1", None), ("x^2-2", None), ("x^2-3", None), ("x^2-5", None), ("x^2-7", None),
          ("x^2-13", None), ("x^3-3x+1", ["x", "x-1"])]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", help="one defining polynomial instead of the built-in list")
    ap.add_argument("--units", action="append")
    ap.add_argument("--max-bound", type=int, default=24, help="double the search bound up to this on exhaustion")
    args = ap.parse_args()
    jobs = [(args.field, args.units)] if args.field else FIELDS
    for f, units in jobs:
        t0 = time.perf_counter()
        bound = PipelineConfig().search_bound
        try:
            K = TotallyRealField(f)
            U = UnitSystem.build(K, units) if units else None
            while True:
                try:
                    rep = theoremB_pipeline(K, U, PipelineConfig(search_bound=bound))
                    break
                except SearchExhausted:
                    if 2 * bound > args.max_bound:
                        raise
                    bound *= 2
        except StretchCertError as exc:
            print(f"{f:12s} failed at {exc.stage}: {exc}")
            continue
        d = rep.doc
        print(f"{f:12s} Q={d['Q']} genus={d['surface']['genus']} stretch={d['thurston']['stretch']['decimal']}"
              f" trace field {d['veech']['trace_field_poly']} equal={rep.field_equal} bound={bound}"
              f" ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()
