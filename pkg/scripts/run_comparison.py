#!/usr/bin/env python3
"""Run the paired protocol comparison and print a compact table.

Same computation as ``pitchsim compare``, kept as a script for quick
interactive use; pass --out to also write the CSV reports.
"""

import argparse
import sys

from pitchsim.engine import run_match, stability_period
from pitchsim.report import emit_comparison_reports, summarize
from pitchsim.scenario import Scenario, parse_scenario


def fmt(value, spec="{:.2f}"):
    return "-" if value is None else spec.format(value)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scenario", help="scenario file (defaults when omitted)")
    parser.add_argument("--seeds", type=int, default=10, help="number of paired seeds")
    parser.add_argument("--out", help="also write CSV reports here")
    args = parser.parse_args(argv)

    base = parse_scenario(args.scenario) if args.scenario else Scenario()
    fame_runs, wstm_runs = [], []
    for seed in range(args.seeds):
        fame_runs.append((seed, run_match(base.with_seed(seed).with_protocol("thefame"))))
        wstm_runs.append((seed, run_match(base.with_seed(seed).with_protocol("wstm"))))

    header = (f"{'seed':>4} {'proto':>7} {'first_death':>11} {'sent_hops':>9} "
              f"{'received':>8} {'delivery%':>9} {'delay_ms':>8} {'residual_J':>10}")
    print(header)
    for seed, run in fame_runs + wstm_runs:
        m = run.metrics
        s = summarize(run.scenario.protocol, [run])
        print(f"{seed:>4} {run.scenario.protocol:>7} "
              f"{fmt(stability_period(m), '{:d}'):>11} {s.sent_hops:>9} "
              f"{s.received:>8} {fmt(s.delivery):>9} "
              f"{fmt(None if s.mean_delay_s is None else 1e3 * s.mean_delay_s):>8} "
              f"{s.final_residual_j:>10.4f}")

    fame = summarize("thefame", [r for _, r in fame_runs])
    wstm = summarize("wstm", [r for _, r in wstm_runs])
    print()
    print(f"pooled delivery: thefame {fmt(fame.delivery)}%  wstm {fmt(wstm.delivery)}%")
    print(f"pooled per-hop throughput: thefame {fmt(fame.throughput)}%  "
          f"wstm {fmt(wstm.throughput)}%")
    if args.out:
        paths = emit_comparison_reports(fame_runs, wstm_runs, args.out)
        print(f"wrote {len(paths)} files under {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
