import pytest

from biamalg.errors import BiamalgError
from biamalg.harness.catalog import Caps
from biamalg.harness.search import counterexample_search


def test_dropping_a_clause_finds_the_duplication(named_catalog):
    result = counterexample_search("gauss-sufficient", ["3"], catalog=named_catalog)
    assert result.found
    assert result.checked == 2
    assert result.failure.subject == "Z/16 >< (4)"
    assert result.dropped == ("3",)
    assert result.describe().startswith("gauss-sufficient without 3: counterexample Z/16 >< (4) of order 64")
    data = result.to_dict()
    assert data["found"] is True
    assert data["ablated"] == ["3"]
    assert data["counterexample"]["subject"] == "Z/16 >< (4)"


def test_full_hypotheses_exhaust_the_catalog(named_catalog):
    result = counterexample_search("gauss-sufficient", catalog=named_catalog)
    assert result.exhausted
    assert result.checked == 2
    assert result.describe() == "gauss-sufficient: no counterexample among 2 subjects"
    assert result.to_dict()["counterexample"] is None


def test_unknown_clause_is_rejected(named_catalog):
    with pytest.raises(BiamalgError):
        counterexample_search("gauss-sufficient", ["9"], catalog=named_catalog)


def test_search_over_a_generated_catalog():
    result = counterexample_search("gauss-sufficient", ["3"], caps=Caps(max_ring=2, max_instances=1))
    assert result.found
    assert result.failure.order == 64
