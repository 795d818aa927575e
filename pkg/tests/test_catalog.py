import pytest

from biamalg.core.ring import GaloisField, ZMod
from biamalg.errors import BiamalgError
from biamalg.harness.catalog import MANDATORY, Caps, base_rings, generate_catalog

from .conftest import F2_X2


def test_caps_validation():
    assert Caps().as_dict() == {"max_ring": 16, "max_instance": 128, "max_instances": 120}
    with pytest.raises(BiamalgError):
        Caps(max_ring=0)
    with pytest.raises(BiamalgError):
        Caps(max_instances=-3)


def test_base_rings():
    rings = base_rings(16)
    descriptors = [ring.descriptor for ring in rings]
    for n in range(2, 17):
        assert ZMod(n) in descriptors
    for field in (GaloisField(2, 2), GaloisField(2, 3), GaloisField(3, 2), GaloisField(2, 4)):
        assert field in descriptors
    assert F2_X2 in descriptors
    assert all(ring.order <= 16 for ring in rings)
    assert len(set(descriptors)) == len(descriptors)
    assert [ring.descriptor for ring in base_rings(3)] == [ZMod(2), ZMod(3)]


def test_named_instances_come_first(small_catalog):
    keys = [entry.key for entry in small_catalog.entries]
    assert keys[:len(MANDATORY)] == [key for key, _ in MANDATORY]
    assert all(entry.mandatory for entry in small_catalog.entries[:len(MANDATORY)])
    assert small_catalog.entry("ex-gaussian-p2").instance.order == 8
    assert small_catalog.entry("amalg-z32-z16-4").instance.order == 128
    with pytest.raises(BiamalgError):
        small_catalog.entry("inst-9999")


def test_sampled_instances_respect_the_caps(small_catalog):
    sampled = [entry for entry in small_catalog.entries if not entry.mandatory]
    assert 0 < len(sampled) <= 10
    assert small_catalog.candidates >= len(sampled)
    for entry in sampled:
        inst = entry.instance
        assert inst.order == inst.predicted_order <= 128
        assert max(inst.A.order, inst.B.order, inst.C.order) <= 4
        assert entry.key.startswith("inst-")


def test_catalog_is_deterministic(small_catalog):
    again = generate_catalog(Caps(max_ring=4, max_instance=128, max_instances=10), seed=0)
    assert [(e.key, e.instance.name) for e in again.entries] == \
        [(e.key, e.instance.name) for e in small_catalog.entries]


def test_unsampled_catalog_keeps_every_candidate():
    catalog = generate_catalog(Caps(max_ring=3, max_instance=64, max_instances=1000), include_mandatory=False)
    assert len(catalog) == catalog.candidates
    assert not any(entry.mandatory for entry in catalog.entries)
    assert catalog.skipped == ()


def test_instance_cap_must_fit_the_named_instances():
    with pytest.raises(BiamalgError):
        generate_catalog(Caps(max_ring=2, max_instance=64, max_instances=1))
