"""Metric computation and CSV emission.

Three files per run: ``timeseries.csv`` (one row per round, cumulative
counters), ``events.csv`` (the fatigue log), and ``summary.csv``
(per-protocol totals plus a delta row for paired comparisons).

Counters come at two levels and both are reported: ``throughput_pct``
follows the received-over-transmitted definition with every per-hop
send counted as a transmission, while ``delivery_pct`` is end-to-end
(packets reaching a sink over packets that left their origin). For a
single-hop protocol the two coincide.

CSV conventions: RFC 4180 quoting, LF line endings, ``.`` decimal
separator, floats via ``repr`` so parsing a file back reproduces the
values exactly. Undefined ratios are written as blank cells, never as
0 or 100.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from typing import Optional, Sequence

from .engine import MatchResult, MetricsLog, stability_period
from .physiology import MGDL_PER_MMOL_L, FatigueCause, FatigueEvent

TIMESERIES_COLUMNS = ["round", "alive", "sent_cum", "dropped_cum",
                      "received_cum", "residual_total_J", "mean_delay_s"]
SUMMARY_COLUMNS = ["protocol", "runs", "stability_period", "throughput_pct",
                   "delivery_pct", "mean_delay_s", "sent_hops", "sent_packets",
                   "received", "dropped", "routing_failed", "final_residual_J"]
EVENT_COLUMNS = ["player_id", "time_s", "cause", "value", "value_mgdl"]
PAIR_COLUMNS = ["seed", "protocol", "stability_period", "throughput_pct",
                "delivery_pct", "mean_delay_s", "sent_hops", "sent_packets",
                "received", "dropped", "routing_failed", "final_residual_J"]


class UndefinedThroughputError(ValueError):
    """Throughput asked for with zero transmissions."""


def throughput_pct(received: int, transmitted: int) -> float:
    """Delivered packets as a percentage of transmitted packets."""
    if not 0 <= received <= transmitted:
        raise ValueError(f"need transmitted >= received >= 0, "
                         f"got received={received}, transmitted={transmitted}")
    if transmitted == 0:
        raise UndefinedThroughputError("no transmissions")
    return 100.0 * received / transmitted


@dataclass(frozen=True)
class ReportRow:
    round: int
    alive: int
    sent_cum: int
    dropped_cum: int
    received_cum: int
    residual_total_j: float
    mean_delay_s: Optional[float]


def build_rows(log: MetricsLog) -> list[ReportRow]:
    """Cumulative per-round report rows from a metrics log."""
    rows = []
    sent = dropped = received = 0
    delay_sum, delay_count = 0.0, 0
    for rec in log.rounds:
        sent += rec.hop_sends
        dropped += rec.hop_drops
        received += rec.received
        delay_sum += rec.delay_sum
        delay_count += rec.delay_count
        rows.append(ReportRow(
            round=rec.round, alive=rec.alive, sent_cum=sent,
            dropped_cum=dropped, received_cum=received,
            residual_total_j=rec.residual_j,
            mean_delay_s=delay_sum / delay_count if delay_count else None,
        ))
    return rows


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def write_timeseries(rows: Sequence[ReportRow], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = _writer(fh)
        out.writerow(TIMESERIES_COLUMNS)
        for r in rows:
            out.writerow([r.round, r.alive, r.sent_cum, r.dropped_cum,
                          r.received_cum, _cell(r.residual_total_j),
                          _cell(r.mean_delay_s)])


def read_timeseries(path: str) -> list[ReportRow]:
    """Parse an emitted timeseries back; exact round-trip of every value."""
    rows = []
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != TIMESERIES_COLUMNS:
            raise ValueError(f"unexpected header {header!r}")
        for rec in reader:
            rows.append(ReportRow(
                round=int(rec[0]), alive=int(rec[1]), sent_cum=int(rec[2]),
                dropped_cum=int(rec[3]), received_cum=int(rec[4]),
                residual_total_j=float(rec[5]),
                mean_delay_s=float(rec[6]) if rec[6] else None,
            ))
    return rows


def write_events(events: Sequence[FatigueEvent], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = _writer(fh)
        out.writerow(EVENT_COLUMNS)
        for ev in events:
            mgdl = ev.value * MGDL_PER_MMOL_L if ev.cause is FatigueCause.LACTATE else None
            out.writerow([ev.player_id, _cell(float(ev.time)), ev.cause.value,
                          _cell(ev.value), _cell(mgdl)])


@dataclass(frozen=True)
class ProtocolSummary:
    protocol: str
    runs: int
    stability_period: Optional[float]   # mean first-death round over runs with a death
    throughput: Optional[float]         # per-hop-transmission basis
    delivery: Optional[float]           # end-to-end basis
    mean_delay_s: Optional[float]
    sent_hops: int
    sent_packets: int
    received: int
    dropped: int
    routing_failed: int
    final_residual_j: float             # mean over runs


def summarize(protocol: str, results: Sequence[MatchResult]) -> ProtocolSummary:
    sent_hops = sum(r.metrics.total("hop_sends") for r in results)
    sent_packets = sum(r.metrics.total("origin_sends") for r in results)
    received = sum(r.metrics.total("received") for r in results)
    dropped = sum(r.metrics.total("hop_drops") for r in results)
    failed = sum(r.metrics.total("routing_failures") for r in results)
    delay_sum = sum(r.metrics.total_delay_sum for r in results)
    delay_count = sum(r.metrics.total_delay_count for r in results)
    stabilities = [stability_period(r.metrics) for r in results]
    deaths = [s for s in stabilities if s is not None]

    def ratio(num, den):
        try:
            return throughput_pct(num, den)
        except UndefinedThroughputError:
            return None

    return ProtocolSummary(
        protocol=protocol,
        runs=len(results),
        stability_period=sum(deaths) / len(deaths) if deaths else None,
        throughput=ratio(received, sent_hops),
        delivery=ratio(received, sent_packets),
        mean_delay_s=delay_sum / delay_count if delay_count else None,
        sent_hops=sent_hops,
        sent_packets=sent_packets,
        received=received,
        dropped=dropped,
        routing_failed=failed,
        final_residual_j=sum(r.metrics.rounds[-1].residual_j for r in results) / len(results),
    )


def _summary_row(s: ProtocolSummary) -> list[str]:
    return [s.protocol, str(s.runs), _cell(s.stability_period),
            _cell(s.throughput), _cell(s.delivery), _cell(s.mean_delay_s),
            str(s.sent_hops), str(s.sent_packets), str(s.received),
            str(s.dropped), str(s.routing_failed), _cell(s.final_residual_j)]


def _delta_row(a: ProtocolSummary, b: ProtocolSummary) -> list[str]:
    def diff(x, y):
        return None if x is None or y is None else x - y
    return ["delta", str(a.runs), _cell(diff(a.stability_period, b.stability_period)),
            _cell(diff(a.throughput, b.throughput)),
            _cell(diff(a.delivery, b.delivery)),
            _cell(diff(a.mean_delay_s, b.mean_delay_s)),
            str(a.sent_hops - b.sent_hops), str(a.sent_packets - b.sent_packets),
            str(a.received - b.received), str(a.dropped - b.dropped),
            str(a.routing_failed - b.routing_failed),
            _cell(a.final_residual_j - b.final_residual_j)]


def write_summary(summaries: Sequence[ProtocolSummary], path: str) -> None:
    """One row per protocol; paired summaries get a fame-minus-wstm delta row."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = _writer(fh)
        out.writerow(SUMMARY_COLUMNS)
        for s in summaries:
            out.writerow(_summary_row(s))
        if len(summaries) == 2:
            out.writerow(_delta_row(summaries[0], summaries[1]))


def write_pairs(rows: Sequence[tuple[int, ProtocolSummary]], path: str) -> None:
    """Per-seed breakdown of a multi-seed comparison."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = _writer(fh)
        out.writerow(PAIR_COLUMNS)
        for seed, s in rows:
            out.writerow([str(seed)] + _summary_row(s)[:1] + _summary_row(s)[2:])


def write_trajectory(trajectory, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = _writer(fh)
        out.writerow(["player_id", "t", "x", "y", "mode"])
        for t, pid, x, y, mode in trajectory:
            out.writerow([pid, t, _cell(x), _cell(y), mode])


def write_lactate_trace(trace, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = _writer(fh)
        out.writerow(["player_id", "t", "lactate_mmol_l"])
        for t, pid, level in trace:
            out.writerow([pid, t, _cell(level)])


def emit_run_reports(result: MatchResult, out_dir: str) -> list[str]:
    """Write timeseries, events, and a one-row summary for a single run."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    ts = os.path.join(out_dir, "timeseries.csv")
    write_timeseries(build_rows(result.metrics), ts)
    paths.append(ts)
    ev = os.path.join(out_dir, "events.csv")
    write_events(result.events, ev)
    paths.append(ev)
    sm = os.path.join(out_dir, "summary.csv")
    write_summary([summarize(result.scenario.protocol, [result])], sm)
    paths.append(sm)
    if result.trajectory:
        tr = os.path.join(out_dir, "trajectory.csv")
        write_trajectory(result.trajectory, tr)
        paths.append(tr)
    if result.lactate_trace:
        lt = os.path.join(out_dir, "lactate.csv")
        write_lactate_trace(result.lactate_trace, lt)
        paths.append(lt)
    return paths


def emit_comparison_reports(fame_runs: Sequence[tuple[int, MatchResult]],
                            wstm_runs: Sequence[tuple[int, MatchResult]],
                            out_dir: str) -> list[str]:
    """Write per-run reports plus pooled summary and per-seed pairs."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for seed, result in list(fame_runs) + list(wstm_runs):
        sub = os.path.join(out_dir, f"{result.scenario.protocol}-seed{seed:03d}")
        paths.extend(emit_run_reports(result, sub))
    fame = summarize("thefame", [r for _, r in fame_runs])
    wstm = summarize("wstm", [r for _, r in wstm_runs])
    sm = os.path.join(out_dir, "summary.csv")
    write_summary([fame, wstm], sm)
    paths.append(sm)
    pair_rows = ([(seed, summarize("thefame", [r])) for seed, r in fame_runs]
                 + [(seed, summarize("wstm", [r])) for seed, r in wstm_runs])
    pr = os.path.join(out_dir, "pairs.csv")
    write_pairs(pair_rows, pr)
    paths.append(pr)
    return paths
