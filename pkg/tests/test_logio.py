import pytest

from puftank.harness.logio import LOG_HEADER, LogRow, read_log, write_log


def _row(tick=7):
    return LogRow(
        tick=tick,
        time_s=tick / 15.0,
        true_level=149.123456,
        reported_level=149.37,
        fill=1,
        drain=0,
        low_sp=50.0,
        high_sp=250.0,
        mode=1,
        code=3,
        temporal_diff=2.5,
        fault_active=0,
    )


def test_format_is_pinned():
    assert _row().format() == [
        "7", "0.466667", "149.123456", "149.37", "1", "0",
        "50.00", "250.00", "1", "3", "2.500000", "0",
    ]


def test_header_is_pinned():
    assert LOG_HEADER == [
        "tick", "time_s", "true_level", "reported_level", "fill", "drain",
        "low_sp", "high_sp", "mode", "code", "temporal_diff", "fault_active",
    ]


def test_write_read_round_trip(tmp_path):
    rows = [_row(t) for t in range(5)]
    path = tmp_path / "run.csv"
    write_log(rows, path)
    back = read_log(path)
    assert len(back) == 5
    for original, parsed in zip(rows, back):
        assert parsed.tick == original.tick
        assert parsed.reported_level == original.reported_level
        assert parsed.code == original.code
        assert parsed.time_s == pytest.approx(original.time_s, abs=5e-7)


def test_identical_rows_serialize_identically(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_log([_row(t) for t in range(10)], a)
    write_log([_row(t) for t in range(10)], b)
    assert a.read_bytes() == b.read_bytes()


def test_read_rejects_foreign_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError):
        read_log(path)
