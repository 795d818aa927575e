"""
Counterexample search for ablated theorems.

Subjects are visited in ascending order of |R| (catalog order breaks ties),
so the first violation found is a smallest one in the catalog.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional

from ..decorators.theorem_registry import TheoremRegistry, registry
from .catalog import Caps, Catalog, generate_catalog
from .suite import Failure, evaluate, jsonable, subject_order, subjects_for, validate_ablation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchResult:
    theorem: str
    dropped: tuple
    checked: int
    failure: Optional[Failure] = None

    @property
    def found(self) -> bool:
        return self.failure is not None

    @property
    def exhausted(self) -> bool:
        return self.failure is None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem,
            "ablated": list(self.dropped),
            "checked": self.checked,
            "found": self.found,
            "counterexample": self.failure.to_dict() if self.failure else None,
        }

    def describe(self) -> str:
        ablated = f" without {', '.join(self.dropped)}" if self.dropped else ""
        if self.failure is None:
            return f"{self.theorem}{ablated}: no counterexample among {self.checked} subjects"
        witness = jsonable(self.failure.witness)
        return (f"{self.theorem}{ablated}: counterexample {self.failure.subject} of order {self.failure.order} "
                f"({self.failure.case}, witness {witness}) after {self.checked} subjects")


def counterexample_search(theorem_id: str, dropped: Iterable[str] = (), catalog: Optional[Catalog] = None,
                          caps: Optional[Caps] = None, seed: int = 0,
                          reg: TheoremRegistry = registry) -> SearchResult:
    """Smallest catalog subject violating ``theorem_id`` once ``dropped`` clauses are ignored"""
    dropped = validate_ablation(theorem_id, dropped, reg)
    if catalog is None:
        catalog = generate_catalog(caps, seed)
    spec = reg.get(theorem_id)
    subjects = subjects_for(catalog, spec.scope)
    ordered = sorted(range(len(subjects)), key=lambda i: (subject_order(subjects[i]), i))
    for checked, i in enumerate(ordered, start=1):
        _, failure = evaluate(theorem_id, subjects[i], dropped, reg)
        if failure is not None:
            result = SearchResult(theorem_id, dropped, checked, failure)
            logger.info(result.describe())
            return result
    result = SearchResult(theorem_id, dropped, len(ordered))
    logger.info(result.describe())
    return result
