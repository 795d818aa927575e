"""
CheckMonitor: counters and timing for theorem checks, plus the tally of
finite-ring degeneracy notes surfaced by verdicts.
"""
import threading
import time
from typing import Any, Callable, Dict


class CheckMonitor:
    """
    Tracks how often each check runs, how long it takes, and which degeneracy
    notes were emitted. Shared by the theorem registry and the harness.
    """
    def __init__(self):
        self.event_counts: Dict[str, int] = {}
        self.check_perf: Dict[str, Dict[str, Any]] = {}  # {name: {'calls': int, 'total_time': float, 'avg_time': float}}
        self.notes: Dict[str, int] = {}
        self._lock = threading.Lock()

    def record_event(self, event_name: str) -> None:
        with self._lock:
            self.event_counts[event_name] = self.event_counts.get(event_name, 0) + 1

    def record_check_time(self, check_name: str, elapsed: float) -> None:
        with self._lock:
            stats = self.check_perf.get(check_name, {'calls': 0, 'total_time': 0.0})
            stats['calls'] += 1
            stats['total_time'] += elapsed
            stats['avg_time'] = stats['total_time'] / stats['calls']
            self.check_perf[check_name] = stats

    def record_note(self, note: str) -> None:
        if not note:
            return
        with self._lock:
            self.notes[note] = self.notes.get(note, 0) + 1

    def get_event_stats(self) -> Dict[str, int]:
        with self._lock:
            return dict(self.event_counts)

    def get_check_stats(self) -> Dict[str, Dict[str, Any]]:
        with self._lock:
            return {name: dict(stats) for name, stats in self.check_perf.items()}

    def get_note_stats(self) -> Dict[str, int]:
        with self._lock:
            return dict(self.notes)

    def reset(self) -> None:
        with self._lock:
            self.event_counts.clear()
            self.check_perf.clear()
            self.notes.clear()

    def wrap_check(self, check_name: str, func: Callable) -> Callable:
        """Wrapper measuring the execution time of a check."""
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                self.record_check_time(check_name, time.perf_counter() - start)
                self.record_event(check_name)
        return wrapper
