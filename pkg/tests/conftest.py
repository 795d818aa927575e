import pytest

from biamalg.config import reset_settings
from biamalg.core.ring import PolyQuot, ZMod, construct_ring, zmod
from biamalg.harness.catalog import (
    Caps,
    Catalog,
    CatalogEntry,
    converse_duplication,
    duplication_z6,
    gaussian_example,
    generate_catalog,
    projection_instance,
)

F2_X2 = PolyQuot(ZMod(2), (0, 0, 1), "x")
F2_XY = PolyQuot(F2_X2, (0, 0, 1), "y")

EXAMPLE_SCRIPT = """\
ring A = Z/8;
ring B = Z/4;
hom f: A -> B = canonical;
ideal b = span(B, [2]);
biamalg R = (A, f, f, b, b);
check R gaussian;
"""

DUPLICATION_SCRIPT = """\
ring A = Z/16;
hom i: A -> A = id;
ideal a = span(A, [4]);
biamalg R = (A, i, i, a, a);
"""


@pytest.fixture(autouse=True)
def fresh_settings():
    reset_settings()
    yield
    reset_settings()


@pytest.fixture(scope="session")
def z12():
    return zmod(12)


@pytest.fixture(scope="session")
def z8():
    return zmod(8)


@pytest.fixture(scope="session")
def dual_numbers():
    """F2[x]/(x^2), codes 0, 1, x = 2, x+1 = 3"""
    return construct_ring(F2_X2)


@pytest.fixture(scope="session")
def f2_xy():
    """F2[x,y]/(x^2,y^2) with x = 2, y = 4, xy = 8"""
    return construct_ring(F2_XY)


@pytest.fixture(scope="session")
def example_p2():
    return gaussian_example(2)


@pytest.fixture(scope="session")
def dup_z16():
    return converse_duplication()


@pytest.fixture(scope="session")
def dup_z6():
    return duplication_z6()


@pytest.fixture(scope="session")
def projection():
    return projection_instance()


@pytest.fixture(scope="session")
def small_catalog():
    return generate_catalog(Caps(max_ring=4, max_instance=128, max_instances=10), seed=0)


@pytest.fixture(scope="session")
def named_catalog(example_p2, dup_z16):
    """The Gaussian example and the converse duplication, nothing else"""
    entries = (CatalogEntry("dup-z16-4", dup_z16, True), CatalogEntry("ex-gaussian-p2", example_p2, True))
    return Catalog(Caps(), 0, (example_p2.A, example_p2.B, dup_z16.A), (), entries)
