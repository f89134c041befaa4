"""Run acceptance criteria 1-10 and print one line per criterion.

    python3 scripts/run_acceptance.py [--seed 0] [--only 3 --only 5] [--json out.json]
"""
import argparse
import json
import sys

from gradres.config import RunConfig
from gradres.criteria import run_all


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--kmax", type=int, default=4)
    ap.add_argument("--only", type=int, action="append")
    ap.add_argument("--json", default=None, help="write the full report here")
    args = ap.parse_args()
    cfg = RunConfig(kmax=args.kmax, seed=args.seed)
    results = run_all(cfg, args.only)
    for r in results:
        print(r.line())
    total = sum(r.seconds for r in results)
    print(f"{sum(r.ok for r in results)}/{len(results)} criteria pass, {total:.2f}s total")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"config": cfg.as_dict(), "criteria": [r.as_dict() for r in results]}, fh,
                      indent=2, default=str)
    sys.exit(0 if all(r.ok for r in results) else 1)


if __name__ == "__main__":
    main()
