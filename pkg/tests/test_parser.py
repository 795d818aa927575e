import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biamalg.dsl.ast import (
    CheckStmt,
    FieldExpr,
    HomDecl,
    PolyQuotExpr,
    ProductExpr,
    QuotientExpr,
    RingDecl,
    RingRef,
    ZModExpr,
    clause_literal,
    format_script,
)
from biamalg.dsl.parser import parse_dsl
from biamalg.errors import DSLError, ParseError, Span

from .conftest import DUPLICATION_SCRIPT, EXAMPLE_SCRIPT

CORPUS = [
    EXAMPLE_SCRIPT,
    DUPLICATION_SCRIPT,
    "",
    "# only a comment\n",
    "ring A = Z/12;",
    "ring F = GF(8);",
    "ring D = Z/2[x]/(x^2);",
    "ring E = Z/2[x]/(x^2)[y]/(y^2);",
    "ring G = Z/4[x]/(x^2 + x + 1);",
    "ring H = Z/3[t]/(2 + 2*t + t^2);",
    "ring P = Z/2 * Z/3 * GF(4);",
    "ring P = Z/2 * (Z/3 * Z/5);",
    "ring A = Z/12; ideal I = span(A, [4]); ring Q = A/I;",
    "ring A = Z/12; ideal I = span(A, [4]); ring Q = A * A/I;",
    "ring A = Z/12; ideal I = span(A, [4]); ring Q = A * (A/I);",
    "ring A = Z/12; ideal I = span(A, []); ideal J = span(A, [2, 3]); ring Q = A/I/J;",
    "ring A = Z/4; ring B = Z/2; hom f: A -> B = canonical;",
    "ring A = GF(4); hom s: A -> A = images[3];",
    "ring A = Z/4; hom e: A -> A = images[0, 1, 2, 3];",
    "ring A = Z/8; check A gaussian; check A prufer; check A local; check A spec;",
    "ring A = Z/8; ideal p = span(A, [2]); check A localize(p);",
    DUPLICATION_SCRIPT + "check R fiber; check R star; check R doublestar; check R blackstar;",
    DUPLICATION_SCRIPT + "check R thm(gauss-sufficient, drop=[3, 2]);",
    DUPLICATION_SCRIPT + 'check R thm(prufer-descent, drop=["A/i0-prufer", b-prufer]);',
    DUPLICATION_SCRIPT + "check R thm(size-identity, drop=[]);",
    DUPLICATION_SCRIPT + 'export spec R dot "out/dup \\"z16\\".dot"; names R;',
]


def single(source):
    statements = parse_dsl(source).statements
    assert len(statements) == 1
    return statements[0]


def test_ring_expression_precedence():
    assert single("ring S = A * B / I;").expr == QuotientExpr(ProductExpr(RingRef("A"), RingRef("B")), "I")
    assert single("ring S = A * B[x]/(x^2);").expr == \
        ProductExpr(RingRef("A"), PolyQuotExpr(RingRef("B"), "x", ((1, 2),)))
    assert single("ring S = (A * B)[x]/(x);").expr == \
        PolyQuotExpr(ProductExpr(RingRef("A"), RingRef("B")), "x", ((1, 1),))
    assert single("ring S = Z/2 * GF(4) * Z/3;").expr == \
        ProductExpr(ProductExpr(ZModExpr(2), FieldExpr(4)), ZModExpr(3))


def test_polynomial_terms():
    expr = single("ring S = Z/4[t]/(3 + 2*t + t^3 + 1*t^2);").expr
    assert expr.terms == ((3, 0), (2, 1), (1, 3), (1, 2))


def test_statements():
    hom = single("hom f: A -> B = images[0, 1];")
    assert hom == HomDecl("f", "A", "B", "images", (0, 1))
    check = single("check R thm(gauss-sufficient, drop=[3, \"A/i0\"]);")
    assert check == CheckStmt("R", "thm", "gauss-sufficient", ("3", "A/i0"))
    assert check.title == "thm(gauss-sufficient) without 3, A/i0"
    assert single("check R localize(p);").title == "localize(p)"


def test_spans():
    script = parse_dsl("ring A = Z/4;\n  ring B = Z/2;")
    first, second = script.statements
    assert first.span == Span(1, 1, 1, 14)
    assert second.span == Span(2, 3, 2, 16)
    assert second.expr.span == Span(2, 12, 2, 15)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_dsl("ring A = Z/4 Z/6;")
    error = info.value
    assert error.span.line == 1 and error.span.column == 14
    assert "';'" in error.expected
    assert str(error).startswith("1:14: parse error: unexpected 'Z'")


@pytest.mark.parametrize("source", [
    "ring A = ;",
    "ring = Z/4;",
    "hom f: A => B = id;",
    "hom f: A -> B = identity;",
    "check R thm(gauss-sufficient, drop=3);",
    "check R colour;",
    "ideal I = span(A, [1, ]);",
    "biamalg R = (A, f, g, b);",
    "export spec R dot out.dot;",
    "ring A = Z/4",
    "ring A = Z/4[x]/(y^2);",
    "ring A = Z/99999999999999999999;",
    "names;",
])
def test_malformed_scripts(source):
    with pytest.raises(DSLError):
        parse_dsl(source)


def test_deep_nesting_is_reported():
    with pytest.raises(ParseError):
        parse_dsl("ring A = " + "(" * 5000 + "Z/2" + ")" * 5000 + ";")


@pytest.mark.parametrize("source", CORPUS)
def test_round_trip(source):
    script = parse_dsl(source)
    text = format_script(script)
    assert parse_dsl(text) == script
    assert format_script(parse_dsl(text)) == text


def test_clause_literal():
    assert clause_literal("3") == "3"
    assert clause_literal("gaussian-local") == "gaussian-local"
    assert clause_literal("A/i0-prufer") == '"A/i0-prufer"'
    assert clause_literal('say "hi"') == '"say \\"hi\\""'


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet=st.sampled_from(list("ringhomcheckZGF/*[]()=;:,+^-> \n\"#xy0123456789AB")), max_size=80))
def test_parser_never_crashes(source):
    try:
        parse_dsl(source)
    except DSLError:
        pass


@pytest.mark.slow
def test_byte_mutations_never_crash():
    rng = random.Random(0)
    seeds = [s.encode("utf-8") for s in CORPUS if s]
    for _ in range(100_000):
        data = bytearray(rng.choice(seeds))
        for _ in range(rng.randint(1, 4)):
            op = rng.randrange(3)
            pos = rng.randrange(len(data) + 1)
            if op == 0 and data:
                del data[min(pos, len(data) - 1)]
            elif op == 1:
                data.insert(pos, rng.randrange(256))
            elif data:
                data[min(pos, len(data) - 1)] = rng.randrange(256)
        try:
            parse_dsl(bytes(data).decode("utf-8", errors="replace"))
        except DSLError:
            pass
