"""
biamalg: bi-amalgamated algebras over finite commutative rings
"""
__version__ = "0.1.0"

from .core.ring import Ring, construct_ring, galois_field, poly_quot, product, zmod
from .core.ideal import Ideal, ideal_span
from .core.hom import RingHom, hom_build
from .core.bowtie import BiAmalgInstance, biamalg_new, duplication
from .core.classify import is_gaussian, is_prufer
from .core.spectra import assemble_spec
from .decorators.theorem_registry import registry
from .harness import generate_catalog, run_suite, counterexample_search
from .dsl import parse_dsl, run_source

__all__ = [
    'Ring', 'construct_ring', 'galois_field', 'poly_quot', 'product', 'zmod',
    'Ideal', 'ideal_span', 'RingHom', 'hom_build',
    'BiAmalgInstance', 'biamalg_new', 'duplication',
    'is_gaussian', 'is_prufer', 'assemble_spec', 'registry',
    'generate_catalog', 'run_suite', 'counterexample_search',
    'parse_dsl', 'run_source',
]
