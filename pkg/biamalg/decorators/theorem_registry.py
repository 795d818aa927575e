"""
Decorators for registering theorem checks
"""
import threading
from dataclasses import dataclass, field
from functools import wraps
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from ..core.monitoring import CheckMonitor
from ..errors import BiamalgError, InvariantViolation

RING_SCOPE = "ring"
INSTANCE_SCOPE = "instance"


@dataclass(frozen=True)
class Case:
    """One hypotheses ⇒ conclusions evaluation, e.g. for one ideal or one prime"""
    label: str
    hypotheses: Dict[str, bool]
    conclusions: Dict[str, bool]
    witness: Any = None

    def applicable(self, dropped: Iterable[str] = ()) -> bool:
        dropped = set(dropped)
        return all(value for name, value in self.hypotheses.items() if name not in dropped)

    def implication(self, dropped: Iterable[str] = ()) -> bool:
        dropped = set(dropped)
        if not self.applicable(dropped):
            return True
        return all(value for name, value in self.conclusions.items() if name not in dropped)


@dataclass(frozen=True)
class TheoremResult:
    theorem: str
    cases: Tuple[Case, ...]
    notes: Tuple[str, ...] = field(default=())

    @property
    def applicable(self) -> bool:
        return any(case.applicable() for case in self.cases)

    @property
    def holds(self) -> bool:
        return self.first_violation() is None

    def first_violation(self, dropped: Iterable[str] = ()) -> Optional[Case]:
        dropped = frozenset(dropped)
        for case in self.cases:
            if not case.implication(dropped):
                return case
        return None

    def clause(self, name: str) -> Optional[bool]:
        """Truth value of a clause over all cases, None when no case mentions it"""
        values = [case.hypotheses.get(name, case.conclusions.get(name)) for case in self.cases]
        values = [v for v in values if v is not None]
        return all(values) if values else None


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    scope: str
    func: Callable
    hypotheses: Tuple[str, ...]
    conclusions: Tuple[str, ...]
    description: str = ""

    @property
    def clauses(self) -> FrozenSet[str]:
        return frozenset(self.hypotheses) | frozenset(self.conclusions)


class TheoremRegistry:
    """Registry of theorem checks, populated with decorators"""

    def __init__(self, monitor: Optional[CheckMonitor] = None):
        self.monitor = monitor or CheckMonitor()
        self._theorems: Dict[str, TheoremSpec] = {}
        self._lock = threading.Lock()

    def theorem(self, theorem_id: str, scope: str = INSTANCE_SCOPE, hypotheses: Iterable[str] = (),
                conclusions: Iterable[str] = (), description: str = "") -> Callable:
        """
        Decorator to register a check

        @registry.theorem("gauss-sufficient", hypotheses=("surjective", "1", "2", "3"),
                          conclusions=("gaussian-local",))
        def gauss_sufficient(inst):
            ...
        """
        if scope not in (RING_SCOPE, INSTANCE_SCOPE):
            raise BiamalgError(f"unknown theorem scope {scope!r}")

        def decorator(func: Callable) -> Callable:
            spec = TheoremSpec(theorem_id, scope, func, tuple(hypotheses), tuple(conclusions),
                               description or (func.__doc__ or "").strip().split("\n")[0])
            with self._lock:
                existing = self._theorems.get(theorem_id)
                if existing is not None and existing.func is not func:
                    raise BiamalgError(f"theorem {theorem_id!r} is already registered")
                self._theorems[theorem_id] = spec

            @wraps(func)
            def wrapper(*args, **kwargs):
                return func(*args, **kwargs)
            return wrapper
        return decorator

    def get(self, theorem_id: str) -> TheoremSpec:
        try:
            return self._theorems[theorem_id]
        except KeyError:
            raise BiamalgError(f"unknown theorem {theorem_id!r}") from None

    def ids(self, scope: Optional[str] = None) -> List[str]:
        with self._lock:
            return [tid for tid, spec in self._theorems.items() if scope is None or spec.scope == scope]

    def __contains__(self, theorem_id: str) -> bool:
        return theorem_id in self._theorems

    def run(self, theorem_id: str, subject: Any) -> TheoremResult:
        spec = self.get(theorem_id)
        result = self.monitor.wrap_check(theorem_id, spec.func)(subject)
        for case in result.cases:
            unknown = (set(case.hypotheses) | set(case.conclusions)) - spec.clauses
            if unknown:
                raise InvariantViolation(f"{theorem_id}: undeclared clauses {sorted(unknown)}")
        for note in result.notes:
            self.monitor.record_note(note)
        return result


registry = TheoremRegistry()
