"""Run metrics: windowed accuracy, false-positive rate, detection latency.

Ground truth for fault activity comes from the injector schedule (the
fault_active log column), never from thresholds on the signal, so event
boundaries are unambiguous.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .logio import LogRow

WINDOW_SECONDS = 1800.0  # 30 sim-minutes, the reporting granularity

CODE_NORMAL = 3


def temporal_ok(code: int) -> bool:
    return (code >> 1) & 1 == 1


@dataclass(frozen=True)
class WindowRow:
    index: int
    t_start: float
    t_end: float
    samples: int
    normal_samples: int
    false_positives: int
    accuracy: float | None


@dataclass(frozen=True)
class EventMetric:
    kind: str
    onset_tick: int
    onset_t: float
    end_t: float
    detect_tick: int | None
    latency_ticks: int | None
    latency_s: float | None
    missed: bool


@dataclass(frozen=True)
class RunMetrics:
    total_ticks: int
    normal_ticks: int
    normal_code3: int
    accuracy: float | None
    false_positive_rate: float | None
    windows: list[WindowRow]
    events: list[EventMetric]
    missed_events: int

    def to_doc(self) -> dict:
        return {
            "total_ticks": self.total_ticks,
            "normal_ticks": self.normal_ticks,
            "normal_code3": self.normal_code3,
            "accuracy": self.accuracy,
            "false_positive_rate": self.false_positive_rate,
            "windows": [asdict(w) for w in self.windows],
            "events": [asdict(e) for e in self.events],
            "missed_events": self.missed_events,
        }


def event_spans(rows: list[LogRow]) -> list[tuple[int, int]]:
    """Maximal runs of fault_active ticks as (start_index, end_index)."""
    spans = []
    start = None
    for i, row in enumerate(rows):
        if row.fault_active and start is None:
            start = i
        elif not row.fault_active and start is not None:
            spans.append((start, i))
            start = None
    if start is not None:
        spans.append((start, len(rows)))
    return spans


def compute_metrics(rows: list[LogRow], window_s: float = WINDOW_SECONDS,
                    event_kinds: list[str] | None = None) -> RunMetrics:
    total = len(rows)
    normal = 0
    normal_code3 = 0
    for row in rows:
        if not row.fault_active:
            normal += 1
            if row.code == CODE_NORMAL:
                normal_code3 += 1
    accuracy = normal_code3 / normal if normal else None
    fp_rate = None if accuracy is None else 1.0 - accuracy

    windows: list[WindowRow] = []
    if rows:
        n_windows = int(rows[-1].time_s // window_s) + 1
        counts = [[0, 0, 0] for _ in range(n_windows)]  # samples, normal, fp
        for row in rows:
            bucket = counts[int(row.time_s // window_s)]
            bucket[0] += 1
            if not row.fault_active:
                bucket[1] += 1
                if row.code != CODE_NORMAL:
                    bucket[2] += 1
        for w, (samples, w_normal, w_fp) in enumerate(counts):
            w_acc = (w_normal - w_fp) / w_normal if w_normal else None
            windows.append(WindowRow(index=w, t_start=w * window_s,
                                     t_end=(w + 1) * window_s,
                                     samples=samples, normal_samples=w_normal,
                                     false_positives=w_fp, accuracy=w_acc))

    spans = event_spans(rows)
    events: list[EventMetric] = []
    missed = 0
    for n, (start, end) in enumerate(spans):
        search_end = spans[n + 1][0] if n + 1 < len(spans) else len(rows)
        detect = None
        for i in range(start, search_end):
            if not temporal_ok(rows[i].code):
                detect = i
                break
        kind = event_kinds[n] if event_kinds and n < len(event_kinds) else "fault"
        if detect is None:
            missed += 1
            events.append(EventMetric(
                kind=kind, onset_tick=rows[start].tick, onset_t=rows[start].time_s,
                end_t=rows[end - 1].time_s, detect_tick=None,
                latency_ticks=None, latency_s=None, missed=True,
            ))
        else:
            latency = rows[detect].tick - rows[start].tick
            events.append(EventMetric(
                kind=kind, onset_tick=rows[start].tick, onset_t=rows[start].time_s,
                end_t=rows[end - 1].time_s, detect_tick=rows[detect].tick,
                latency_ticks=latency,
                latency_s=latency * _dt(rows),
                missed=False,
            ))
    return RunMetrics(
        total_ticks=total,
        normal_ticks=normal,
        normal_code3=normal_code3,
        accuracy=accuracy,
        false_positive_rate=fp_rate,
        windows=windows,
        events=events,
        missed_events=missed,
    )


def _dt(rows: list[LogRow]) -> float:
    if len(rows) >= 2:
        return rows[1].time_s - rows[0].time_s
    return 1.0 / 15.0
