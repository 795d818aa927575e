import pytest

from biamalg.core.monitoring import CheckMonitor


def test_events_and_timing():
    monitor = CheckMonitor()
    monitor.record_event("size-identity")
    monitor.record_event("size-identity")
    monitor.record_check_time("size-identity", 0.5)
    monitor.record_check_time("size-identity", 1.5)
    assert monitor.get_event_stats() == {"size-identity": 2}
    stats = monitor.get_check_stats()["size-identity"]
    assert stats["calls"] == 2
    assert stats["total_time"] == pytest.approx(2.0)
    assert stats["avg_time"] == pytest.approx(1.0)


def test_notes_ignore_empty_strings():
    monitor = CheckMonitor()
    monitor.record_note("finite")
    monitor.record_note("")
    monitor.record_note("finite")
    assert monitor.get_note_stats() == {"finite": 2}


def test_wrap_check_counts_failures_too():
    monitor = CheckMonitor()

    def boom(_):
        raise ValueError("no")

    with pytest.raises(ValueError):
        monitor.wrap_check("boom", boom)(1)
    assert monitor.wrap_check("double", lambda x: 2 * x)(4) == 8
    assert monitor.get_event_stats() == {"boom": 1, "double": 1}
    assert set(monitor.get_check_stats()) == {"boom", "double"}


def test_reset():
    monitor = CheckMonitor()
    monitor.record_event("a")
    monitor.record_note("b")
    monitor.record_check_time("a", 1.0)
    monitor.reset()
    assert monitor.get_event_stats() == {}
    assert monitor.get_check_stats() == {}
    assert monitor.get_note_stats() == {}
