import json

import pytest

from biamalg.core.monitoring import CheckMonitor
from biamalg.decorators.theorem_registry import RING_SCOPE, Case, TheoremRegistry, TheoremResult
from biamalg.dsl.interpreter import EXIT_CHECK_FAILED, run_source
from biamalg.errors import BiamalgError
from biamalg.harness.checks import localization_universal
from biamalg.harness.suite import jsonable, parse_ablation, run_suite, validate_ablation


def test_instance_checks_hold_on_the_catalog(small_catalog):
    selection = ["size-identity", "fiber-product", "canonical-maps", "spec-assembly", "local-criterion"]
    report = run_suite(small_catalog, selection=selection)
    assert report.ok
    assert [r.theorem for r in report.results] == selection
    for r in report.results:
        assert r.instances == len(small_catalog)
        assert r.passed == r.instances
    assert report.counterexamples == []
    assert report.meta["instances"] == len(small_catalog)
    assert "total" in report.timing


def test_ring_checks_hold_on_the_catalog(small_catalog):
    report = run_suite(small_catalog, selection=["ring-axioms", "spec-oracle", "degeneracy"], workers=2)
    assert report.ok
    assert report.result("spec-oracle").instances == len(small_catalog.rings)
    with pytest.raises(BiamalgError):
        report.result("gauss-sufficient")


def test_localization_universal_property_on_the_catalog(small_catalog):
    report = run_suite(small_catalog, selection=["localization-universal"])
    assert report.ok
    result = report.result("localization-universal")
    assert result.instances == len(small_catalog.rings)
    assert result.applicable == len(small_catalog.rings)


def test_localization_universal_property_factors_z12_maps(z12):
    result = localization_universal(z12)
    assert result.holds
    applicable = {case.label for case in result.cases if case.applicable()}
    assert any("R \\ (2)" in label and label.endswith("-> Ring(Z/4)") for label in applicable)
    assert any("R \\ (3)" in label and label.endswith("-> Ring(Z/3)") for label in applicable)
    assert not any("R \\ (3)" in label and label.endswith("-> Ring(Z/4)") for label in applicable)
    for case in result.cases:
        assert case.conclusions == {"kills-kernel": True, "factors": True}


def test_report_without_timing_is_reproducible(small_catalog):
    first = run_suite(small_catalog, selection=["size-identity"]).to_json(include_timing=False)
    second = run_suite(small_catalog, selection=["size-identity"], workers=3).to_json(include_timing=False)
    assert first == second
    data = json.loads(first)
    assert "timing" not in data
    assert data["meta"]["caps"] == {"max_ring": 4, "max_instance": 128, "max_instances": 10}
    assert data["results"][0]["failures"] == []


def test_ablation_finds_the_duplication_counterexample(named_catalog):
    report = run_suite(named_catalog, selection=["gauss-sufficient"], ablation={"gauss-sufficient": ["3"]})
    assert not report.ok
    result = report.result("gauss-sufficient")
    assert result.dropped == ("3",)
    assert [f.subject for f in result.failures] == ["Z/16 >< (4)"]
    failure = result.failures[0]
    assert failure.order == 64
    assert "check R thm(gauss-sufficient, drop=[3]);" in failure.replay

    replayed = run_source(failure.replay)
    assert replayed.exit_code == EXIT_CHECK_FAILED
    assert replayed.lines[0] == "thm(gauss-sufficient) without 3: false"

    assert "gauss-sufficient without 3: 2 subjects" in report.summary()


def test_full_hypotheses_hold_on_the_named_instances(named_catalog):
    report = run_suite(named_catalog, selection=["gauss-sufficient", "gauss-necessary"])
    assert report.ok


def test_parse_ablation():
    assert parse_ablation(["gauss-sufficient:3", "gauss-sufficient:2", "prufer-descent:A/i0-prufer"]) == {
        "gauss-sufficient": ("3", "2"),
        "prufer-descent": ("A/i0-prufer",),
    }
    assert parse_ablation([]) == {}
    for bad in ("gauss-sufficient", ":3", "gauss-sufficient:"):
        with pytest.raises(BiamalgError):
            parse_ablation([bad])


def test_validate_ablation():
    assert validate_ablation("gauss-sufficient", ["3", "3"]) == ("3",)
    with pytest.raises(BiamalgError):
        validate_ablation("gauss-sufficient", ["7"])
    with pytest.raises(BiamalgError):
        validate_ablation("no-such-theorem", [])


def test_raising_checks_are_reported_as_errors(named_catalog):
    reg = TheoremRegistry(CheckMonitor())

    @reg.theorem("fragile", scope=RING_SCOPE, conclusions=("ok",))
    def fragile(ring):
        if ring.order == 16:
            raise RuntimeError("boom")
        return TheoremResult("fragile", (Case(repr(ring), {}, {"ok": True}),))

    report = run_suite(named_catalog, reg=reg)
    result = report.result("fragile")
    assert len(result.failures) == 1
    failure = result.failures[0]
    assert failure.case == "error"
    assert failure.error == "RuntimeError: boom"
    assert failure.order == 16
    assert "check S thm(fragile);" in failure.replay


def test_jsonable():
    import numpy as np

    assert jsonable(np.int64(3)) == 3
    assert jsonable(np.bool_(True)) is True
    assert jsonable({1: (np.int8(2), None)}) == {"1": [2, None]}
    assert jsonable(frozenset({"b", "a"})) == ["a", "b"]


@pytest.mark.slow
def test_default_catalog_satisfies_every_theorem():
    from biamalg.harness.catalog import generate_catalog

    report = run_suite(generate_catalog(), workers=4)
    assert report.ok, report.summary()
    assert report.meta["instances"] >= 7
