"""
Run registered theorem checks over a catalog and collect a report.

A theorem passes when no subject satisfies its (possibly ablated)
hypotheses while violating a remaining conclusion. Every failure carries a
DSL replay script that rebuilds the subject and repeats the check.
"""
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..config import get_settings
from ..core.bowtie import BiAmalgInstance
from ..core.ideal import Ideal
from ..core.ring import Ring
from ..decorators.theorem_registry import RING_SCOPE, TheoremRegistry, TheoremResult, registry
from ..errors import BiamalgError
from . import checks  # noqa: F401  registers the checks
from .catalog import Catalog
from .replay import replay_script

logger = logging.getLogger(__name__)


def jsonable(value: Any) -> Any:
    """Witnesses as plain JSON values"""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, Ideal):
        return value.label()
    if isinstance(value, Ring):
        return repr(value)
    if isinstance(value, Mapping):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value, key=repr) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    return str(value)


def subject_name(subject) -> str:
    if isinstance(subject, BiAmalgInstance):
        return subject.name
    return repr(subject)


def subject_order(subject) -> int:
    return subject.order


@dataclass(frozen=True)
class Failure:
    subject: str
    order: int
    case: str
    witness: Any
    replay: str
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {"subject": self.subject, "order": self.order, "case": self.case,
                "witness": jsonable(self.witness), "replay": self.replay}
        if self.error is not None:
            data["error"] = self.error
        return data


@dataclass
class TheoremReport:
    theorem: str
    scope: str
    dropped: Tuple[str, ...] = ()
    instances: int = 0
    applicable: int = 0
    failures: List[Failure] = field(default_factory=list)
    notes: Dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> int:
        return self.instances - len(self.failures)

    @property
    def holds(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem,
            "scope": self.scope,
            "ablated": list(self.dropped),
            "instances": self.instances,
            "applicable": self.applicable,
            "passed": self.passed,
            "failures": [f.to_dict() for f in self.failures],
            "degeneracy_notes": dict(sorted(self.notes.items())),
        }


@dataclass
class SuiteReport:
    meta: Dict[str, Any]
    results: List[TheoremReport]
    timing: Dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.results)

    @property
    def counterexamples(self) -> List[Tuple[str, Failure]]:
        return [(r.theorem, f) for r in self.results for f in r.failures]

    def result(self, theorem_id: str) -> TheoremReport:
        for r in self.results:
            if r.theorem == theorem_id:
                return r
        raise BiamalgError(f"theorem {theorem_id!r} was not run")

    def note_tally(self) -> Dict[str, int]:
        tally: Dict[str, int] = {}
        for r in self.results:
            for note, count in r.notes.items():
                tally[note] = tally.get(note, 0) + count
        return dict(sorted(tally.items()))

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = {"meta": self.meta, "results": [r.to_dict() for r in self.results]}
        if include_timing:
            data["timing"] = {name: round(seconds, 6) for name, seconds in self.timing.items()}
        return data

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, ensure_ascii=False)

    def summary(self) -> str:
        lines = []
        for r in self.results:
            status = "ok" if r.holds else f"{len(r.failures)} counterexample(s)"
            ablated = f" without {', '.join(r.dropped)}" if r.dropped else ""
            lines.append(f"{r.theorem}{ablated}: {r.instances} subjects, {r.applicable} applicable, {status}")
        return "\n".join(lines)


def validate_ablation(theorem_id: str, dropped: Iterable[str], reg: TheoremRegistry = registry) -> Tuple[str, ...]:
    spec = reg.get(theorem_id)
    dropped = tuple(sorted(set(dropped)))
    unknown = [c for c in dropped if c not in spec.clauses]
    if unknown:
        raise BiamalgError(
            f"{theorem_id} has no clause {', '.join(unknown)}; clauses are {', '.join(sorted(spec.clauses))}"
        )
    return dropped


def parse_ablation(items: Iterable[str]) -> Dict[str, Tuple[str, ...]]:
    """``["gauss-sufficient:3", ...]`` to ``{"gauss-sufficient": ("3",)}``"""
    out: Dict[str, List[str]] = {}
    for item in items:
        theorem_id, sep, clause = item.partition(":")
        if not sep or not theorem_id or not clause:
            raise BiamalgError(f"ablation {item!r} is not of the form theorem:clause")
        out.setdefault(theorem_id, []).append(clause)
    return {k: tuple(v) for k, v in out.items()}


def evaluate(theorem_id: str, subject, dropped: Sequence[str] = (),
             reg: TheoremRegistry = registry) -> Tuple[Optional[TheoremResult], Optional[Failure]]:
    """Run one check on one subject; the failure, if any, comes with its replay script"""
    try:
        result = reg.run(theorem_id, subject)
    except Exception as exc:
        logger.error(f"{theorem_id} raised on {subject_name(subject)}: {exc}")
        return None, Failure(subject_name(subject), subject_order(subject), "error", None,
                             _safe_replay(subject, theorem_id, dropped), error=f"{type(exc).__name__}: {exc}")
    case = result.first_violation(dropped)
    if case is None:
        return result, None
    return result, Failure(subject_name(subject), subject_order(subject), case.label, case.witness,
                           _safe_replay(subject, theorem_id, dropped))


def _safe_replay(subject, theorem_id: str, dropped: Sequence[str]) -> str:
    try:
        return replay_script(subject, theorem_id, dropped)
    except BiamalgError as exc:
        logger.error(f"No replay script for {subject_name(subject)}: {exc}")
        return ""


def subjects_for(catalog: Catalog, scope: str) -> List:
    if scope == RING_SCOPE:
        return list(catalog.rings)
    return list(catalog.instances)


def run_suite(catalog: Catalog, selection: Optional[Iterable[str]] = None,
              ablation: Optional[Mapping[str, Iterable[str]]] = None, workers: Optional[int] = None,
              reg: TheoremRegistry = registry) -> SuiteReport:
    """
    Run each selected theorem on every subject of its scope.

    ``ablation`` maps theorem ids to clause names treated as absent. Results
    are merged in catalog order whatever the number of workers.
    """
    from .. import __version__

    ids = list(selection) if selection is not None else reg.ids()
    ablation = {tid: validate_ablation(tid, clauses, reg) for tid, clauses in (ablation or {}).items()}
    for tid in list(ids) + list(ablation):
        reg.get(tid)
    workers = workers or get_settings().workers

    results: List[TheoremReport] = []
    timing: Dict[str, float] = {}
    suite_start = time.perf_counter()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for theorem_id in ids:
            spec = reg.get(theorem_id)
            dropped = ablation.get(theorem_id, ())
            subjects = subjects_for(catalog, spec.scope)
            report = TheoremReport(theorem_id, spec.scope, dropped, instances=len(subjects))
            start = time.perf_counter()
            outcomes = pool.map(lambda s: evaluate(theorem_id, s, dropped, reg), subjects)
            for result, failure in outcomes:
                if result is not None:
                    if any(case.applicable(dropped) for case in result.cases):
                        report.applicable += 1
                    for note in set(result.notes):
                        report.notes[note] = report.notes.get(note, 0) + 1
                if failure is not None:
                    report.failures.append(failure)
            timing[theorem_id] = time.perf_counter() - start
            level = logging.INFO if report.holds else logging.WARNING
            logger.log(level, f"{theorem_id}: {report.instances} subjects, {len(report.failures)} failures "
                              f"in {timing[theorem_id]:.2f}s")
            results.append(report)
    timing["total"] = time.perf_counter() - suite_start

    meta = {"caps": catalog.caps.as_dict(), "seed": catalog.seed, "version": __version__,
            "rings": len(catalog.rings), "instances": len(catalog.entries)}
    return SuiteReport(meta, results, timing)
