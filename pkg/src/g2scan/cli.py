"""Command-line interface: g2scan <search|invariants|lfactors|hash|conductor|run>."""

from __future__ import annotations

import argparse
import json
import sys

from .conductor import resolve_two_part
from .db import export_records, run_pipeline
from .igusa import g2_invariants, igusa, igusa_clebsch
from .lfun import EulerFactor, good_lfactor, isogeny_hash, primes_upto
from .model import discriminant, parse_model
from .search import parse_shape, run_search, write_candidates


def _add_model_arg(p):
    p.add_argument("--model", required=True,
                   help="canonical model encoding [[f0,...,f6],[h0,...,h3]]")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="g2scan",
                                 description="genus-2 small-discriminant toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="enumerate models with |disc| <= bound")
    p.add_argument("--shape", required=True,
                   help="S1:<B> | S2:<a>,<b> | S3:<b> | S4:<b>,<d>")
    p.add_argument("--disc-bound", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("invariants", help="exact Igusa-Clebsch / Igusa / G2 invariants")
    _add_model_arg(p)

    p = sub.add_parser("lfactors", help="good Euler factors up to a bound")
    _add_model_arg(p)
    p.add_argument("--bound", type=int, default=64)

    p = sub.add_parser("hash", help="isogeny-class hash")
    _add_model_arg(p)

    p = sub.add_parser("conductor", help="resolve ord_2(N), w, and L_2 analytically")
    _add_model_arg(p)
    p.add_argument("--C", type=float, default=10.0, dest="cutoff")
    p.add_argument("--precision", type=int, default=53)
    p.add_argument("--odd-local", action="append", default=[],
                   metavar="p:ordN:[1,c1,...]",
                   help="external local data for an odd bad prime (repeatable)")
    p.add_argument("--verdicts", action="store_true",
                   help="print the full verdict table, refuted candidates included")

    p = sub.add_parser("run", help="search, dedup, analyze, and write records")
    p.add_argument("--shape", required=True)
    p.add_argument("--disc-bound", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--analyze", default="invariants",
                   help="comma list from invariants,lfactors,hash,conductor")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    return ap


def cmd_search(args) -> int:
    shape = parse_shape(args.shape, args.disc_bound)
    results = run_search(shape, workers=args.workers,
                         checkpoint_path=args.checkpoint, out_path=args.out)
    if args.out is None:
        for m, disc in results:
            print(json.dumps({"model": [list(m.f), list(m.h)], "disc": disc},
                             separators=(",", ":")))
    else:
        print(f"{len(results)} candidates -> {args.out}", file=sys.stderr)
    return 0


def cmd_invariants(args) -> int:
    m = parse_model(args.model)
    ic = igusa_clebsch(m)
    j = igusa(ic)
    g2 = g2_invariants(j)
    print("igusa_clebsch:", [str(v) for v in ic.tuple()])
    print("igusa:", [str(v) for v in j.tuple()])
    print("g2:", [str(v) for v in g2.tuple()])
    return 0


def cmd_lfactors(args) -> int:
    m = parse_model(args.model)
    disc = discriminant(m)
    for p in primes_upto(args.bound):
        if disc % p == 0:
            continue
        fac = good_lfactor(m, p)
        print(f"{p}:{list(fac.coeffs)}")
    return 0


def cmd_hash(args) -> int:
    m = parse_model(args.model)
    h = isogeny_hash(m)
    print(h.value)
    if h.partial:
        print(f"partial: skipped bad primes {list(h.skipped_primes)}", file=sys.stderr)
    return 0


def _parse_odd_local(specs) -> dict:
    out = {}
    for spec in specs:
        try:
            p_str, ord_str, coeff_str = spec.split(":", 2)
            p, ordn = int(p_str), int(ord_str)
            coeffs = tuple(json.loads(coeff_str))
        except (ValueError, json.JSONDecodeError) as exc:
            raise SystemExit(f"bad --odd-local {spec!r}: {exc}")
        out[p] = (EulerFactor(p, coeffs, good=False, cond_exp=ordn), ordn)
    return out


def cmd_conductor(args) -> int:
    m = parse_model(args.model)
    odd = _parse_odd_local(args.odd_local) or None
    res = resolve_two_part(m, odd_bad_data=odd, c=args.cutoff, prec=args.precision)
    shown = res.verdicts if args.verdicts else res.survivors
    for v in shown:
        status = "consistent" if v.consistent else "refuted"
        print(f"N={v.conductor} w={v.candidate.w:+d} L2={list(v.candidate.l2)} "
              f"T={v.enclosure.mid_float():+.3e}+/-{v.enclosure.rad_float():.3e} "
              f"{status}")
    print(f"status: {res.status}")
    if res.resolved:
        v = res.resolved
        print(f"resolved: N={v.conductor} w={v.candidate.w:+d} "
              f"L2={list(v.candidate.l2)} radius={v.enclosure.rad_float():.3e}")
        return 0
    return 1


def cmd_run(args) -> int:
    shape = parse_shape(args.shape, args.disc_bound)
    analyses = tuple(s.strip() for s in args.analyze.split(",") if s.strip())
    known = {"invariants", "lfactors", "hash", "conductor"}
    bad = set(analyses) - known
    if bad:
        raise SystemExit(f"unknown analyses: {sorted(bad)}")
    records = run_pipeline(shape, workers=args.workers, analyses=analyses,
                           checkpoint_path=args.checkpoint)
    export_records(records, args.out, args.format)
    print(f"{len(records)} classes -> {args.out}", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return {
        "search": cmd_search,
        "invariants": cmd_invariants,
        "lfactors": cmd_lfactors,
        "hash": cmd_hash,
        "conductor": cmd_conductor,
        "run": cmd_run,
    }[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
