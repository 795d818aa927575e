"""
Syntax tree of biamalg scripts and the pretty printer.

Spans do not take part in node equality, so ``parse(format_script(s))``
compares equal to ``s``.
"""
import re
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from ..errors import Span

NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)*$")
INT_RE = re.compile(r"^[0-9]+$")


def _span():
    return field(default=None, compare=False, repr=False)


def clause_literal(clause: str) -> str:
    """A clause name as written inside ``drop=[...]``: bare when it lexes as one token, else quoted"""
    if INT_RE.match(clause) or NAME_RE.match(clause):
        return clause
    escaped = clause.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


# --- ring expressions ---

@dataclass(frozen=True)
class ZModExpr:
    n: int
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class FieldExpr:
    q: int
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class RingRef:
    name: str
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class ProductExpr:
    left: "RingExpr"
    right: "RingExpr"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class PolyQuotExpr:
    """base[var]/(modulus); each term is (coefficient code, degree)"""
    base: "RingExpr"
    var: str
    terms: Tuple[Tuple[int, int], ...]
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class QuotientExpr:
    ring: "RingExpr"
    ideal: str
    span: Optional[Span] = _span()


RingExpr = Union[ZModExpr, FieldExpr, RingRef, ProductExpr, PolyQuotExpr, QuotientExpr]


# --- statements ---

@dataclass(frozen=True)
class RingDecl:
    name: str
    expr: RingExpr
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class HomDecl:
    name: str
    source: str
    target: str
    kind: str  # canonical | id | images
    images: Tuple[int, ...] = ()
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class IdealDecl:
    name: str
    ring: str
    elements: Tuple[int, ...]
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class BiamalgDecl:
    name: str
    A: str
    f: str
    g: str
    b: str
    c: str
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class CheckStmt:
    """``check NAME prop``; ``arg`` is the ideal of localize or the theorem id of thm"""
    subject: str
    prop: str
    arg: Optional[str] = None
    drop: Tuple[str, ...] = ()
    span: Optional[Span] = _span()

    @property
    def title(self) -> str:
        if self.prop == "thm":
            ablated = f" without {', '.join(self.drop)}" if self.drop else ""
            return f"thm({self.arg}){ablated}"
        if self.prop == "localize":
            return f"localize({self.arg})"
        return self.prop


@dataclass(frozen=True)
class ExportStmt:
    subject: str
    path: str
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class NamesStmt:
    subject: str
    span: Optional[Span] = _span()


Statement = Union[RingDecl, HomDecl, IdealDecl, BiamalgDecl, CheckStmt, ExportStmt, NamesStmt]
DECLARATIONS = (RingDecl, HomDecl, IdealDecl, BiamalgDecl)


@dataclass(frozen=True)
class Script:
    statements: Tuple[Statement, ...]

    def __len__(self) -> int:
        return len(self.statements)

    def __iter__(self):
        return iter(self.statements)


# --- pretty printing ---

QUOTIENT_LEVEL, PRODUCT_LEVEL, POSTFIX_LEVEL, ATOM_LEVEL = range(4)


def _level(expr: RingExpr) -> int:
    if isinstance(expr, QuotientExpr):
        return QUOTIENT_LEVEL
    if isinstance(expr, ProductExpr):
        return PRODUCT_LEVEL
    if isinstance(expr, PolyQuotExpr):
        return POSTFIX_LEVEL
    return ATOM_LEVEL


def format_poly_terms(terms: Tuple[Tuple[int, int], ...], var: str) -> str:
    parts = []
    for coeff, degree in terms:
        if degree == 0:
            parts.append(str(coeff))
            continue
        power = var if degree == 1 else f"{var}^{degree}"
        parts.append(power if coeff == 1 else f"{coeff}*{power}")
    return " + ".join(parts)


def format_ring_expr(expr: RingExpr, min_level: int = QUOTIENT_LEVEL) -> str:
    if isinstance(expr, ZModExpr):
        text = f"Z/{expr.n}"
    elif isinstance(expr, FieldExpr):
        text = f"GF({expr.q})"
    elif isinstance(expr, RingRef):
        text = expr.name
    elif isinstance(expr, ProductExpr):
        text = f"{format_ring_expr(expr.left, PRODUCT_LEVEL)} * {format_ring_expr(expr.right, POSTFIX_LEVEL)}"
    elif isinstance(expr, PolyQuotExpr):
        text = f"{format_ring_expr(expr.base, POSTFIX_LEVEL)}[{expr.var}]/({format_poly_terms(expr.terms, expr.var)})"
    elif isinstance(expr, QuotientExpr):
        text = f"{format_ring_expr(expr.ring, QUOTIENT_LEVEL)}/{expr.ideal}"
    else:
        raise TypeError(f"not a ring expression: {expr!r}")
    return f"({text})" if _level(expr) < min_level else text


def format_statement(stmt: Statement) -> str:
    if isinstance(stmt, RingDecl):
        return f"ring {stmt.name} = {format_ring_expr(stmt.expr)};"
    if isinstance(stmt, HomDecl):
        rhs = f"images[{', '.join(str(v) for v in stmt.images)}]" if stmt.kind == "images" else stmt.kind
        return f"hom {stmt.name}: {stmt.source} -> {stmt.target} = {rhs};"
    if isinstance(stmt, IdealDecl):
        return f"ideal {stmt.name} = span({stmt.ring}, [{', '.join(str(v) for v in stmt.elements)}]);"
    if isinstance(stmt, BiamalgDecl):
        return f"biamalg {stmt.name} = ({stmt.A}, {stmt.f}, {stmt.g}, {stmt.b}, {stmt.c});"
    if isinstance(stmt, CheckStmt):
        if stmt.prop == "localize":
            return f"check {stmt.subject} localize({stmt.arg});"
        if stmt.prop == "thm":
            drop = f", drop=[{', '.join(clause_literal(c) for c in stmt.drop)}]" if stmt.drop else ""
            return f"check {stmt.subject} thm({stmt.arg}{drop});"
        return f"check {stmt.subject} {stmt.prop};"
    if isinstance(stmt, ExportStmt):
        escaped = stmt.path.replace("\\", "\\\\").replace('"', '\\"')
        return f'export spec {stmt.subject} dot "{escaped}";'
    if isinstance(stmt, NamesStmt):
        return f"names {stmt.subject};"
    raise TypeError(f"not a statement: {stmt!r}")


def format_script(script: Script) -> str:
    return "".join(format_statement(stmt) + "\n" for stmt in script.statements)
