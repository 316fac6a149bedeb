#!/usr/bin/env python3
"""Run a full box survey: search, dedup, and per-bucket class counts.

Reproduces the box-search table rows, e.g. the S1(12) row:

    python3 scripts/run_box_survey.py --shape S1:12 --disc-bound 1000000 \
        --workers 2 --out survey_s1_12.json
"""

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from g2scan.db import dedup  # noqa: E402
from g2scan.search import parse_shape, run_search  # noqa: E402

BUCKETS = (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6)


def survey(shape_text: str, disc_bound: int, workers: int,
           checkpoint: str | None = None, progress: bool = False) -> dict:
    shape = parse_shape(shape_text, disc_bound)
    t0 = time.time()
    cb = None
    if progress:
        def cb(done, total):
            if done % 250 == 0 or done == total:
                print(f"  units {done}/{total} ({time.time()-t0:.0f}s)",
                      file=sys.stderr, flush=True)
    candidates = run_search(shape, workers=workers, checkpoint_path=checkpoint,
                            progress=cb)
    t_search = time.time() - t0
    t0 = time.time()
    classes = dedup(candidates, workers=workers)
    t_dedup = time.time() - t0
    counts = {str(b): sum(1 for c in classes if c.abs_disc <= b) for b in BUCKETS}
    return {
        "shape": shape_text,
        "disc_bound": disc_bound,
        "models": len(candidates),
        "classes": len(classes),
        "flagged_unverified": sum(1 for c in classes if c.unverified_merge_candidate),
        "bucket_counts": counts,
        "search_seconds": round(t_search, 1),
        "dedup_seconds": round(t_dedup, 1),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--shape", required=True)
    ap.add_argument("--disc-bound", type=int, default=10 ** 6)
    ap.add_argument("--workers", type=int, default=2)
    ap.add_argument("--checkpoint", default=None)
    ap.add_argument("--out", default=None)
    ap.add_argument("--progress", action="store_true")
    args = ap.parse_args()
    result = survey(args.shape, args.disc_bound, args.workers,
                    args.checkpoint, args.progress)
    text = json.dumps(result, indent=2)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")


if __name__ == "__main__":
    main()
