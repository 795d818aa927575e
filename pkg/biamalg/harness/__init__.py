"""
Catalog generation, theorem suite and counterexample search
"""
from . import checks  # noqa: F401
from .catalog import Caps, Catalog, CatalogEntry, generate_catalog
from .replay import instance_script, replay_script, ring_script
from .search import SearchResult, counterexample_search
from .suite import SuiteReport, TheoremReport, parse_ablation, run_suite

__all__ = [
    "Caps",
    "Catalog",
    "CatalogEntry",
    "generate_catalog",
    "instance_script",
    "ring_script",
    "replay_script",
    "SearchResult",
    "counterexample_search",
    "SuiteReport",
    "TheoremReport",
    "parse_ablation",
    "run_suite",
]
