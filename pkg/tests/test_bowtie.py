import pytest

from biamalg.config import configure
from biamalg.core.bowtie import (
    amalgamation_special,
    biamalg_new,
    canonical_maps,
    duplication,
    ideal_bowtie,
    module_generators,
    noetherian_sanity,
    sharp_contractions,
    verify_fiber_product,
)
from biamalg.core.hom import hom_build, identity_hom
from biamalg.core.ideal import ideal_span, zero_ideal
from biamalg.core.ring import zmod
from biamalg.errors import BiamalgError, CompatibilityError, OrderCapExceeded, RingMismatchError
from biamalg.harness.catalog import converse_amalgamation, remark_instance


def test_gaussian_example_shape(example_p2):
    inst = example_p2
    assert inst.order == inst.predicted_order == 8
    assert inst.i0 == ideal_span(inst.A, [2])
    assert inst.k == ideal_span(inst.A, [4])
    assert inst.pair_code(0, 2) >= 0
    with pytest.raises(RingMismatchError):
        inst.pair_code(1, 0)


@pytest.mark.parametrize("build, order", [
    (lambda: duplication(zmod(16), ideal_span(zmod(16), [4])).instance, 64),
    (lambda: duplication(zmod(6), ideal_span(zmod(6), [2])).instance, 18),
    (converse_amalgamation, 128),
    (remark_instance, 16),
])
def test_size_identity(build, order):
    inst = build()
    assert inst.order == inst.predicted_order == order


def test_projection_is_a_copy_of_the_quotient(projection):
    assert projection.order == 4
    assert projection.i0 == ideal_span(projection.A, [4])
    assert projection.b_times_c.is_zero


def test_incompatible_data():
    z4 = zmod(4)
    ident = identity_hom(z4)
    with pytest.raises(CompatibilityError) as info:
        biamalg_new(z4, z4, z4, ident, ident, ideal_span(z4, [2]), zero_ideal(z4))
    assert info.value.witness == 2
    assert "a = 2" in str(info.value)


def test_ring_mismatch_is_rejected():
    z4, z8 = zmod(4), zmod(8)
    f = hom_build(z8, z4, "canonical")
    with pytest.raises(RingMismatchError):
        biamalg_new(z4, z4, z4, f, f, zero_ideal(z4), zero_ideal(z4))


def test_order_cap_applies_to_the_construction():
    configure(max_order=32)
    a = zmod(16)
    with pytest.raises(OrderCapExceeded):
        duplication(a, ideal_span(a, [4]))


def test_fiber_product_and_canonical_maps(example_p2, dup_z6, projection):
    for inst in (example_p2, dup_z6, projection):
        assert verify_fiber_product(inst).ok
        assert canonical_maps(inst).ok


def test_bowtie_of_i0_is_b_times_c(example_p2, dup_z6):
    for inst in (example_p2, dup_z6):
        assert ideal_bowtie(inst, inst.i0) == inst.b_times_c
        assert ideal_bowtie(inst, zero_ideal(inst.A)) == inst.b_times_c


def test_bowtie_rejects_foreign_ideals(example_p2):
    with pytest.raises(RingMismatchError):
        ideal_bowtie(example_p2, ideal_span(example_p2.B, [2]))


def test_sharp_contractions(dup_z6):
    three = ideal_span(dup_z6.B, [3])
    sharp = sharp_contractions(dup_z6, three)
    assert sharp == sharp_contractions(dup_z6, three, "B")
    assert len(sharp) == dup_z6.order // 3
    with pytest.raises(RingMismatchError):
        sharp_contractions(dup_z6, three, "D")


def test_amalgamation_conventions():
    a, b = zmod(8), zmod(4)
    f = hom_build(a, b, "canonical")
    two = ideal_span(b, [2])
    left = amalgamation_special(a, f, two, "f,id")
    right = amalgamation_special(a, f, two, "id,f")
    for amalg in (left, right):
        assert amalg.isomorphism.is_isomorphism
        assert amalg.classical.order == amalg.instance.order == 16
    with pytest.raises(BiamalgError):
        amalgamation_special(a, f, two, "g,h")


def test_module_generators(example_p2, dup_z6):
    for inst in (example_p2, dup_z6):
        report = module_generators(inst)
        assert report.generates_ring
        assert report.generates_product


def test_noetherian_sanity(dup_z6):
    report = noetherian_sanity(dup_z6)
    assert report.holds
    assert report.ideal_count >= 1
