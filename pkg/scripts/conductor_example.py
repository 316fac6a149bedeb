#!/usr/bin/env python3
"""Resolve the conductor 2-part of the worked example curve and print the
full verdict table (every candidate with its enclosure and status)."""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from g2scan.conductor import resolve_two_part  # noqa: E402
from g2scan.model import parse_model  # noqa: E402

DEFAULT_MODEL = "[[3,-14,-33,10,6,0,-1],[1,1,0,1]]"  # disc 2^9 * 3 * 311


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--model", default=DEFAULT_MODEL)
    ap.add_argument("--C", type=float, default=10.0, dest="cutoff")
    ap.add_argument("--precision", type=int, default=53)
    args = ap.parse_args()

    m = parse_model(args.model)
    t0 = time.time()
    res = resolve_two_part(m, c=args.cutoff, prec=args.precision)
    dt = time.time() - t0

    print(f"N_odd = {res.n_odd}, ord_2(disc) = {res.ord2_delta}, "
          f"{len(res.verdicts)} candidates, {dt:.1f}s")
    for v in sorted(res.verdicts, key=lambda v: (v.conductor, -v.candidate.w,
                                                 v.candidate.l2)):
        status = "CONSISTENT" if v.consistent else "refuted"
        print(f"  N={v.conductor:<8d} w={v.candidate.w:+d} "
              f"L2={str(list(v.candidate.l2)):<18s} "
              f"T = {v.enclosure.mid_float():+.6e} +/- {v.enclosure.rad_float():.3e}  "
              f"{status}")
    print(f"status: {res.status}")
    if res.resolved:
        v = res.resolved
        print(f"resolved: N = {v.conductor} = 2^{v.candidate.m} * {res.n_odd}, "
              f"w = {v.candidate.w:+d}, L2 = {list(v.candidate.l2)}, "
              f"radius {v.enclosure.rad_float():.3e}")


if __name__ == "__main__":
    main()
