"""Command line: classify, certify, surface, thurston, pipeline-field.

Every command prints one canonical JSON document (sorted keys) to stdout or
--out. Exit status: 0 success, 2 bad input / failed precondition, 3 search
bound exhausted, 1 failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import PipelineConfig
from .errors import PreconditionError, StretchCertError
from .exact.field import NumberField
from .exact.poly import parse_int_poly
from .exact.salem import classify_salem, trace_polynomial
from .formats import algebraic_to_json, dumps, matrix_from_json, poly_to_str
from .skewpower import salem_certificate, verify_certificate_json
from .surface import RoutingPlan, analyze, build_surface
from .thurston import PSEUDO_ANOSOV, TwistWeights, classify_word, pf_data, pf_data_from_product, veech_check
from .unitfinder import TotallyRealField, UnitSystem, theoremB_pipeline


def _weights(text):
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise PreconditionError(f"weights must be comma-separated integers: {text!r}") from None


def _config(args):
    return PipelineConfig(
        entry_floor=args.entry_floor,
        search_bound=args.search_bound,
        max_power=args.max_power,
        precision=args.precision,
    )


def cmd_classify(args, cfg):
    p = parse_int_poly(args.polynomial)
    res = classify_salem(p)
    doc = {"kind": "classification", "polynomial": poly_to_str(p), "verdict": res.verdict, "reason": res.reason}
    if res.salem_root is not None:
        doc["salem_root"] = algebraic_to_json(res.salem_root, cfg.precision)
        doc["trace_polynomial"] = poly_to_str(trace_polynomial(p))
    return doc


def thurston_section(Q, word, digits, power_of=None, power=None):
    """T_C T_D on the surface of Q with M = N = I; optionally check stretch = root^power exactly."""
    rep = classify_word(word, pf_data(Q))
    doc = rep.to_json(digits)
    if rep.verdict == PSEUDO_ANOSOV:
        ok, poly = veech_check(rep.stretch)
        doc["veech"] = {"passed": ok, "trace_field_poly": poly_to_str(poly)}
        if power_of is not None:
            K = NumberField(power_of)
            doc["stretch_is_power"] = {"power": power, "passed": (K.gen ** power).to_algebraic() == rep.stretch}
    return doc


def cmd_certify(args, cfg):
    if args.verify:
        with open(args.verify) as fh:
            doc = json.load(fh)
        checks = verify_certificate_json(doc)
        out = {"kind": "verification", "checks": [{"name": n, "passed": ok} for n, ok in checks],
               "passed": all(ok for _, ok in checks)}
        return out, (0 if out["passed"] else 1)
    if not args.polynomial:
        raise PreconditionError("certify needs a polynomial (or --verify FILE)")
    p = parse_int_poly(args.polynomial)
    Q = matrix_from_json(args.matrix) if args.matrix else None
    cert = salem_certificate(p, cfg.entry_floor, cfg, Q=Q)
    doc = cert.to_json()
    if not args.no_thurston:
        lam = classify_salem(p).salem_root
        doc["thurston"] = thurston_section(cert.Qk, "CD", cfg.precision, lam, 2 * cert.k)
    return doc, 0


def cmd_surface(args, cfg):
    Q = matrix_from_json(args.matrix)
    plan = None
    if args.routing:
        with open(args.routing) as fh:
            try:
                plan = RoutingPlan.from_json(json.load(fh))
            except json.JSONDecodeError as exc:
                raise PreconditionError(f"routing file is not JSON: {exc}") from None
    S = build_surface(Q, plan)
    rep = analyze(S)
    if args.dump:
        with open(args.dump, "w") as fh:
            fh.write(S.dump_text())
    return {"kind": "surface", "surface": S.to_json(), "report": rep.to_json()}


def cmd_thurston(args, cfg):
    Q = matrix_from_json(args.matrix)
    if args.pf_product:
        if args.m_weights or args.n_weights:
            raise PreconditionError("--pf-product takes the product M Q N Q^T directly; weights do not apply")
        pf = pf_data_from_product(Q)
    else:
        m, n = _weights(args.m_weights), _weights(args.n_weights)
        W = TwistWeights(n or tuple([1] * len(Q[0])), m or tuple([1] * len(Q)))
        pf = pf_data(Q, W)
    rep = classify_word(args.word, pf)
    doc = {"kind": "thurston", "pf": pf.to_json(cfg.precision), "report": rep.to_json(cfg.precision)}
    if rep.verdict == PSEUDO_ANOSOV:
        ok, poly = veech_check(rep.stretch)
        doc["veech"] = {"passed": ok, "trace_field_poly": poly_to_str(poly)}
    return doc


def cmd_pipeline(args, cfg):
    K = TotallyRealField(parse_int_poly(args.polynomial))
    U = UnitSystem.build(K, args.units) if args.units else None
    rep = theoremB_pipeline(K, U, cfg)
    return rep.to_json(), (0 if rep.field_equal else 1)


def build_parser():
    ap = argparse.ArgumentParser(prog="stretchcert", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    d = PipelineConfig()
    common.add_argument("--entry-floor", type=int, default=d.entry_floor)
    common.add_argument("--search-bound", type=int, default=d.search_bound)
    common.add_argument("--max-power", type=int, default=d.max_power)
    common.add_argument("--precision", type=int, default=d.precision, help="decimal digits in reports")
    common.add_argument("--out", help="write JSON here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="Salem classification of a polynomial")
    p.add_argument("polynomial")

    p = sub.add_parser("certify", parents=[common], help="skew-power certificate for a Salem polynomial")
    p.add_argument("polynomial", nargs="?")
    p.add_argument("--matrix", help="use this symmetric Q instead of searching")
    p.add_argument("--verify", metavar="FILE", help="re-check a saved certificate")
    p.add_argument("--no-thurston", action="store_true")

    p = sub.add_parser("surface", parents=[common], help="surface from an intersection matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--routing", help="routing plan JSON")
    p.add_argument("--dump", metavar="FILE", help="also write a flat-text adjacency dump")

    p = sub.add_parser("thurston", parents=[common], help="stretch factor of a word in T_C, T_D")
    p.add_argument("--matrix", required=True)
    p.add_argument("--pf-product", action="store_true", help="--matrix is M Q N Q^T itself")
    p.add_argument("--m-weights", help="comma-separated, one per row (D curve)")
    p.add_argument("--n-weights", help="comma-separated, one per column (C curve)")
    p.add_argument("--word", default="CD")

    p = sub.add_parser("pipeline-field", parents=[common], help="totally real field to stretch factor")
    p.add_argument("polynomial")
    p.add_argument("--units", action="append", help="unit as a polynomial in x (repeatable)")
    return ap


COMMANDS = {
    "classify": cmd_classify,
    "certify": cmd_certify,
    "surface": cmd_surface,
    "thurston": cmd_thurston,
    "pipeline-field": cmd_pipeline,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        result = COMMANDS[args.command](args, cfg)
    except StretchCertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_status
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc, status = result if isinstance(result, tuple) else (result, 0)
    text = dumps(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
