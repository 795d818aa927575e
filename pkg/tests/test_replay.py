from biamalg.core.ring import Quotient, construct_ring
from biamalg.dsl.interpreter import EXIT_CHECK_FAILED, EXIT_OK, run_source
from biamalg.harness.replay import check_statement, instance_script, ring_script

from .conftest import F2_XY


def test_check_statement():
    assert check_statement("R", "gauss-sufficient") == "check R thm(gauss-sufficient);"
    assert check_statement("R", "gauss-sufficient", ["3", "2"]) == "check R thm(gauss-sufficient, drop=[2, 3]);"
    assert check_statement("R", "prufer-descent", ["A/i0-prufer"]) == \
        'check R thm(prufer-descent, drop=["A/i0-prufer"]);'


def test_duplication_replay(dup_z16):
    identity = ", ".join(str(x) for x in range(16))
    assert instance_script(dup_z16, "gauss-sufficient", ["3"]) == (
        "ring A = Z/16;\n"
        f"hom f: A -> A = images[{identity}];\n"
        f"hom g: A -> A = images[{identity}];\n"
        "ideal b = span(A, [4]);\n"
        "ideal c = span(A, [4]);\n"
        "biamalg R = (A, f, g, b, c);\n"
        "check R thm(gauss-sufficient, drop=[3]);\n"
    )


def test_replay_reproduces_the_failure(dup_z16):
    result = run_source(instance_script(dup_z16, "gauss-sufficient", ["3"]))
    assert result.exit_code == EXIT_CHECK_FAILED
    assert result.lines[0] == "thm(gauss-sufficient) without 3: false"
    assert run_source(instance_script(dup_z16, "gauss-sufficient")).exit_code == EXIT_OK


def test_quotient_ring_replay():
    ring = construct_ring(Quotient(F2_XY, (0, 8)))
    script = ring_script(ring, "spec-oracle")
    assert script == (
        "ring S1 = Z/2;\n"
        "ring S2 = S1[x]/(x^2);\n"
        "ring S3 = S2[y]/(y^2);\n"
        "ideal I4 = span(S3, [8]);\n"
        "ring S = S3/I4;\n"
        "check S thm(spec-oracle);\n"
    )
    result = run_source(script)
    assert result.exit_code == EXIT_OK
    assert result.lines == ["thm(spec-oracle): true"]
