"""Run the default verification campaign and summarise it per entry.

    python scripts/run_campaign.py [--config FILE] [--out results/campaign.csv]
"""
import argparse
import sys
import time
from collections import defaultdict
from pathlib import Path

from rmtlab.harness import Config, default_campaign, format_csv, load_config, run_verification, summary_line


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config")
    ap.add_argument("--out", default="results/campaign.csv")
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()

    config = load_config(args.config) if args.config else Config()
    if args.workers:
        config.workers = args.workers
    start = time.perf_counter()
    records = run_verification(default_campaign(config), workers=config.workers, cutoffs=config.cutoffs)
    elapsed = time.perf_counter() - start

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(format_csv(records))

    by_entry = defaultdict(list)
    for r in records:
        by_entry[r.case.entry].append(r)
    print(f"{'entry':<12} {'cases':>5} {'pass':>5} {'max rel diff':>13}")
    for name, recs in by_entry.items():
        diffs = [r.rel_diff for r in recs if r.rel_diff is not None]
        worst = f"{max(diffs):.2e}" if diffs else "-"
        passed = sum(r.outcome.value == "PASS" for r in recs)
        print(f"{name:<12} {len(recs):>5} {passed:>5} {worst:>13}")
    print(summary_line(records), f"({elapsed:.1f}s, csv in {out})")
    return 1 if any(r.outcome.value in ("FAIL", "QUAD_NONCONVERGED", "DIVERGENT_UNCONFIRMED") for r in records) else 0


if __name__ == "__main__":
    sys.exit(main())
