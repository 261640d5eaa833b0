from puftank.harness.logio import LogRow
from puftank.harness.metrics import (
    compute_metrics,
    event_spans,
    temporal_ok,
)


def _row(tick, code=3, fault=0, dt=1.0 / 15.0):
    return LogRow(
        tick=tick, time_s=tick * dt, true_level=100.0, reported_level=100.0,
        fill=0, drain=0, low_sp=50.0, high_sp=250.0, mode=1, code=code,
        temporal_diff=0.0, fault_active=fault,
    )


def test_temporal_ok_reads_bit_1():
    assert temporal_ok(3) and temporal_ok(2) and temporal_ok(7)
    assert not temporal_ok(1) and not temporal_ok(0) and not temporal_ok(5)


def test_event_spans_groups_consecutive_ticks():
    rows = [_row(t, fault=1 if t in (3, 4, 5, 9) else 0) for t in range(12)]
    assert event_spans(rows) == [(3, 6), (9, 10)]


def test_event_span_open_at_end_of_log():
    rows = [_row(t, fault=1 if t >= 8 else 0) for t in range(10)]
    assert event_spans(rows) == [(8, 10)]


def test_accuracy_counts_only_ground_truth_normal_ticks():
    rows = (
        [_row(t, code=3) for t in range(8)]
        + [_row(8 + t, code=1, fault=1) for t in range(4)]
        + [_row(12 + t, code=1) for t in range(2)]  # latched after the event
        + [_row(14 + t, code=3) for t in range(6)]
    )
    m = compute_metrics(rows)
    assert m.total_ticks == 20
    assert m.normal_ticks == 16
    assert m.normal_code3 == 14
    assert m.accuracy == 14 / 16
    assert m.false_positive_rate == 2 / 16


def test_detection_latency_measured_from_onset():
    rows = (
        [_row(t) for t in range(10)]
        + [_row(10, code=3, fault=1), _row(11, code=3, fault=1),
           _row(12, code=1, fault=1), _row(13, code=1, fault=1)]
        + [_row(14 + t, code=1) for t in range(3)]
    )
    m = compute_metrics(rows, event_kinds=["spike"])
    assert len(m.events) == 1
    event = m.events[0]
    assert event.kind == "spike"
    assert not event.missed
    assert event.latency_ticks == 2
    assert event.latency_s == 2 / 15.0


def test_detection_after_event_end_still_counts_until_next_onset():
    rows = (
        [_row(t) for t in range(5)]
        + [_row(5, code=3, fault=1), _row(6, code=3, fault=1)]
        + [_row(7, code=3), _row(8, code=1)]  # late alarm after clear
    )
    m = compute_metrics(rows)
    assert m.events[0].latency_ticks == 3
    assert m.missed_events == 0


def test_missed_event_counted():
    rows = [_row(t, fault=1 if 4 <= t < 8 else 0, code=3) for t in range(20)]
    m = compute_metrics(rows)
    assert m.missed_events == 1
    assert m.events[0].missed
    assert m.events[0].latency_ticks is None


def test_windows_bucket_by_time():
    dt = 1.0
    rows = [
        LogRow(tick=t, time_s=t * dt, true_level=0, reported_level=0, fill=0,
               drain=0, low_sp=0, high_sp=1, mode=1,
               code=3 if t != 1805 else 1, temporal_diff=0.0, fault_active=0)
        for t in range(3600)
    ]
    m = compute_metrics(rows, window_s=1800.0)
    assert len(m.windows) == 2
    assert m.windows[0].samples == 1800
    assert m.windows[0].accuracy == 1.0
    assert m.windows[1].false_positives == 1
    assert m.windows[1].accuracy == (1800 - 1) / 1800


def test_empty_run_yields_no_windows():
    m = compute_metrics([])
    assert m.windows == [] and m.events == []
    assert m.accuracy is None
