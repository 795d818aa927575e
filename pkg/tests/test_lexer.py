import pytest

from biamalg.dsl.lexer import ARROW, EOF, INT, NAME, STRING, tokenize
from biamalg.errors import LexError, Span


def kinds(source):
    return [t.kind for t in tokenize(source)]


def test_token_kinds():
    assert kinds("hom f: A -> B = images[0, 1];") == [
        NAME, NAME, ":", NAME, ARROW, NAME, "=", NAME, "[", INT, ",", INT, "]", ";", EOF,
    ]
    assert kinds("ring S = Z/2[x]/(x^2 + 1) * GF(4);") == [
        NAME, NAME, "=", NAME, "/", INT, "[", NAME, "]", "/", "(", NAME, "^", INT, "+", INT, ")",
        "*", NAME, "(", INT, ")", ";", EOF,
    ]


def test_names_keep_inner_hyphens():
    tokens = tokenize("thm(gauss-sufficient, drop=[A-prufer])")
    assert [t.value for t in tokens if t.kind == NAME] == ["thm", "gauss-sufficient", "drop", "A-prufer"]
    assert [t.value for t in tokenize("A->B")] == ["A", "->", "B", ""]
    with pytest.raises(LexError):
        tokenize("x- y")


def test_strings_and_escapes():
    tokens = tokenize(r'"out/spec.dot" "a\"b" "back\\slash"')
    assert [t.kind for t in tokens[:3]] == [STRING] * 3
    assert [t.value for t in tokens[:3]] == ["out/spec.dot", 'a"b', "back\\slash"]


def test_unterminated_string():
    with pytest.raises(LexError, match="unterminated string"):
        tokenize('export spec R dot "spec.dot;')
    with pytest.raises(LexError, match="unterminated string"):
        tokenize('"line\nbreak"')


def test_comments_and_spans():
    tokens = tokenize("# header\n  ring A # trailing\n")
    assert [t.value for t in tokens] == ["ring", "A", ""]
    assert tokens[0].span == Span(2, 3, 2, 7)
    assert tokens[1].span == Span(2, 8, 2, 9)
    assert tokens[-1].span == Span(3, 1, 3, 1)
    assert tokens[-1].describe() == "end of input"
    assert tokens[0].describe() == "'ring'"


def test_unexpected_character_position():
    with pytest.raises(LexError) as info:
        tokenize("ring A = Z/4;\nring B = Z%4;")
    assert info.value.span == Span(2, 11, 2, 12)
    assert str(info.value) == "2:11: lexical error: unexpected character '%'"
