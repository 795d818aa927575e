"""
Recursive descent parser for biamalg scripts.

    script   := stmt*
    stmt     := ring | hom | ideal | biamalg | check | export | names
    ring     := "ring" NAME "=" rexpr ";"
    rexpr    := prod ( "/" NAME )*                      quotient by a declared ideal
    prod     := postfix ( "*" postfix )*
    postfix  := atom ( "[" NAME "]" "/" "(" poly ")" )*
    atom     := "Z" "/" INT | "GF" "(" INT ")" | NAME | "(" rexpr ")"
    poly     := term ( "+" term )*
    term     := INT [ "*" NAME [ "^" INT ] ] | NAME [ "^" INT ]
    hom      := "hom" NAME ":" NAME "->" NAME "=" ( "canonical" | "id" | "images" "[" ints "]" ) ";"
    ideal    := "ideal" NAME "=" "span" "(" NAME "," "[" ints "]" ")" ";"
    biamalg  := "biamalg" NAME "=" "(" NAME "," NAME "," NAME "," NAME "," NAME ")" ";"
    check    := "check" NAME prop ";"
    prop     := PROPERTY | "localize" "(" NAME ")" | "thm" "(" NAME [ "," "drop" "=" "[" clauses "]" ] ")"
    export   := "export" "spec" NAME "dot" STRING ";"
    names    := "names" NAME ";"

``*`` binds tighter than ``/``. Errors carry the span of the offending
token and the set of tokens that would have been accepted there.
"""
from typing import List, Optional, Set, Tuple

from ..errors import ParseError, Span
from .ast import (
    BiamalgDecl,
    CheckStmt,
    ExportStmt,
    FieldExpr,
    HomDecl,
    IdealDecl,
    NamesStmt,
    PolyQuotExpr,
    ProductExpr,
    QuotientExpr,
    RingDecl,
    RingExpr,
    RingRef,
    Script,
    Statement,
    ZModExpr,
)
from .lexer import ARROW, EOF, INT, NAME, STRING, Token, tokenize

PROPERTIES = ("gaussian", "prufer", "local", "spec", "fiber", "star", "doublestar", "blackstar")
STATEMENT_KEYWORDS = ("ring", "hom", "ideal", "biamalg", "check", "export", "names")
MAX_INT_DIGITS = 18


def _join(first: Span, last: Span) -> Span:
    return Span(first.line, first.column, last.end_line, last.end_column)


class Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0
        self.expected: Set[str] = set()

    # --- token helpers ---

    @property
    def token(self) -> Token:
        return self.tokens[self.pos]

    @property
    def previous(self) -> Token:
        return self.tokens[self.pos - 1]

    def peek(self, kind: str, value: Optional[str] = None, offset: int = 0) -> bool:
        token = self.tokens[min(self.pos + offset, len(self.tokens) - 1)]
        if offset == 0:
            self.expected.add(f"'{value}'" if value is not None else (kind if kind in (INT, NAME, STRING) else f"'{kind}'"))
        return token.kind == kind and (value is None or token.value == value)

    def accept(self, kind: str, value: Optional[str] = None) -> Optional[Token]:
        if self.peek(kind, value):
            token = self.token
            self.pos += 1
            self.expected = set()
            return token
        return None

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        token = self.accept(kind, value)
        if token is None:
            self.fail()
        return token

    def fail(self, message: Optional[str] = None):
        token = self.token
        raise ParseError(message or f"unexpected {token.describe()}", token.span, tuple(sorted(self.expected)))

    def integer(self) -> int:
        return self._value(self.expect(INT))

    @staticmethod
    def _value(token: Token) -> int:
        if len(token.value) > MAX_INT_DIGITS:
            raise ParseError(f"integer literal {token.value[:12]}... is too large", token.span)
        return int(token.value)

    # --- script ---

    # <script> -> <stmt>*
    def parse_script(self) -> Script:
        statements: List[Statement] = []
        while not self.peek(EOF):
            statements.append(self.statement())
        return Script(tuple(statements))

    def statement(self) -> Statement:
        start = self.token.span
        for keyword in STATEMENT_KEYWORDS:
            if self.accept(NAME, keyword):
                stmt = getattr(self, f"_{keyword}")(start)
                return stmt
        self.fail()

    def _end(self, start: Span) -> Span:
        end = self.expect(";").span
        return _join(start, end)

    # <ring> -> "ring" NAME "=" <rexpr> ";"
    def _ring(self, start: Span) -> RingDecl:
        name = self.expect(NAME).value
        self.expect("=")
        expr = self.rexpr()
        return RingDecl(name, expr, self._end(start))

    # <rexpr> -> <prod> ( "/" NAME )*
    def rexpr(self) -> RingExpr:
        start = self.token.span
        expr = self.prod()
        while self.accept("/"):
            ideal = self.expect(NAME).value
            expr = QuotientExpr(expr, ideal, _join(start, self.previous.span))
        return expr

    # <prod> -> <postfix> ( "*" <postfix> )*
    def prod(self) -> RingExpr:
        start = self.token.span
        expr = self.postfix()
        while self.accept("*"):
            right = self.postfix()
            expr = ProductExpr(expr, right, _join(start, self.previous.span))
        return expr

    # <postfix> -> <atom> ( "[" NAME "]" "/" "(" <poly> ")" )*
    def postfix(self) -> RingExpr:
        start = self.token.span
        expr = self.atom()
        while self.accept("["):
            var = self.expect(NAME).value
            self.expect("]")
            self.expect("/")
            self.expect("(")
            terms = self.poly(var)
            self.expect(")")
            expr = PolyQuotExpr(expr, var, terms, _join(start, self.previous.span))
        return expr

    # <atom> -> "Z" "/" INT | "GF" "(" INT ")" | NAME | "(" <rexpr> ")"
    def atom(self) -> RingExpr:
        start = self.token.span
        if self.peek(NAME, "Z") and self.peek("/", offset=1) and self.peek(INT, offset=2):
            self.pos += 2
            n = self.integer()
            return ZModExpr(n, _join(start, self.previous.span))
        if self.peek(NAME, "GF") and self.peek("(", offset=1):
            self.pos += 2
            self.expected = set()
            q = self.integer()
            self.expect(")")
            return FieldExpr(q, _join(start, self.previous.span))
        if self.accept("("):
            expr = self.rexpr()
            self.expect(")")
            return expr
        token = self.accept(NAME)
        if token is None:
            self.fail()
        return RingRef(token.value, token.span)

    # <poly> -> <term> ( "+" <term> )*
    def poly(self, var: str) -> Tuple[Tuple[int, int], ...]:
        terms = [self.term(var)]
        while self.accept("+"):
            terms.append(self.term(var))
        return tuple(terms)

    # <term> -> INT [ "*" VAR [ "^" INT ] ] | VAR [ "^" INT ]
    def term(self, var: str) -> Tuple[int, int]:
        coeff = self.accept(INT)
        if coeff is not None and not self.accept("*"):
            return self._value(coeff), 0
        self.expect(NAME, var)
        degree = self.integer() if self.accept("^") else 1
        return (self._value(coeff) if coeff is not None else 1), degree

    # <hom> -> "hom" NAME ":" NAME "->" NAME "=" ( "canonical" | "id" | "images" "[" ints "]" ) ";"
    def _hom(self, start: Span) -> HomDecl:
        name = self.expect(NAME).value
        self.expect(":")
        source = self.expect(NAME).value
        self.expect(ARROW)
        target = self.expect(NAME).value
        self.expect("=")
        if self.accept(NAME, "canonical"):
            kind, images = "canonical", ()
        elif self.accept(NAME, "id"):
            kind, images = "id", ()
        elif self.accept(NAME, "images"):
            kind, images = "images", self.int_list()
        else:
            self.fail()
        return HomDecl(name, source, target, kind, images, self._end(start))

    # ints -> "[" [ INT ( "," INT )* ] "]"
    def int_list(self) -> Tuple[int, ...]:
        self.expect("[")
        values = []
        if not self.accept("]"):
            values.append(self.integer())
            while self.accept(","):
                values.append(self.integer())
            self.expect("]")
        return tuple(values)

    # <ideal> -> "ideal" NAME "=" "span" "(" NAME "," ints ")" ";"
    def _ideal(self, start: Span) -> IdealDecl:
        name = self.expect(NAME).value
        self.expect("=")
        self.expect(NAME, "span")
        self.expect("(")
        ring = self.expect(NAME).value
        self.expect(",")
        elements = self.int_list()
        self.expect(")")
        return IdealDecl(name, ring, elements, self._end(start))

    # <biamalg> -> "biamalg" NAME "=" "(" NAME{A} "," NAME{f} "," NAME{g} "," NAME{b} "," NAME{c} ")" ";"
    def _biamalg(self, start: Span) -> BiamalgDecl:
        name = self.expect(NAME).value
        self.expect("=")
        self.expect("(")
        parts = [self.expect(NAME).value]
        for _ in range(4):
            self.expect(",")
            parts.append(self.expect(NAME).value)
        self.expect(")")
        return BiamalgDecl(name, *parts, span=self._end(start))

    # <check> -> "check" NAME <prop> ";"
    def _check(self, start: Span) -> CheckStmt:
        subject = self.expect(NAME).value
        for prop in PROPERTIES:
            if self.accept(NAME, prop):
                return CheckStmt(subject, prop, span=self._end(start))
        if self.accept(NAME, "localize"):
            self.expect("(")
            ideal = self.expect(NAME).value
            self.expect(")")
            return CheckStmt(subject, "localize", ideal, span=self._end(start))
        if self.accept(NAME, "thm"):
            self.expect("(")
            theorem = self.expect(NAME).value
            drop: Tuple[str, ...] = ()
            if self.accept(","):
                self.expect(NAME, "drop")
                self.expect("=")
                drop = self.clause_list()
            self.expect(")")
            return CheckStmt(subject, "thm", theorem, drop, span=self._end(start))
        self.fail()

    # clauses -> "[" [ clause ( "," clause )* ] "]" with clause := INT | NAME | STRING
    def clause_list(self) -> Tuple[str, ...]:
        self.expect("[")
        clauses: List[str] = []
        if not self.accept("]"):
            clauses.append(self.clause())
            while self.accept(","):
                clauses.append(self.clause())
            self.expect("]")
        return tuple(clauses)

    def clause(self) -> str:
        token = self.accept(INT) or self.accept(NAME) or self.accept(STRING)
        if token is None:
            self.fail()
        return token.value

    # <export> -> "export" "spec" NAME "dot" STRING ";"
    def _export(self, start: Span) -> ExportStmt:
        self.expect(NAME, "spec")
        subject = self.expect(NAME).value
        self.expect(NAME, "dot")
        path = self.expect(STRING).value
        return ExportStmt(subject, path, self._end(start))

    # <names> -> "names" NAME ";"
    def _names(self, start: Span) -> NamesStmt:
        subject = self.expect(NAME).value
        return NamesStmt(subject, self._end(start))


def parse_dsl(source: str) -> Script:
    """Parse a script; raises LexError or ParseError with a source span"""
    parser = Parser(source)
    try:
        return parser.parse_script()
    except RecursionError:
        raise ParseError("expression nested too deeply", parser.token.span) from None
