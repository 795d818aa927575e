"""
Execute parsed scripts against the library.

Names are resolved in one pass before anything runs, then statements run
in order. Input or validation problems stop the script with exit code 2;
a check that evaluates to false sets exit code 1 and execution continues.
"""
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from ..config import get_settings
from ..core.bowtie import BiAmalgInstance, biamalg_new, verify_fiber_product
from ..core.classify import PropertyVerdict, is_gaussian, is_prufer
from ..core.hom import RingHom, hom_build, localize_at_prime, quotient_by
from ..core.ideal import Ideal, ideal_lattice, ideal_span, is_prime_ideal
from ..core.invariants import enumerate_spec, ring_invariants, spec_by_ideal_scan
from ..core.ring import Ring, ZMod, construct_ring, galois_field, poly_quot, product
from ..core.spectra import assemble_spec, local_criterion, verify_localization_iso, verify_spec_theorem
from ..core.theorems import condition_checks
from ..decorators.theorem_registry import RING_SCOPE, registry
from ..errors import (
    BiamalgError,
    DSLError,
    NameResolutionError,
    OrderCapExceeded,
    ScriptRuntimeError,
    Span,
)
from ..harness import checks  # noqa: F401  registers the ring and structure checks
from .ast import (
    DECLARATIONS,
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
    format_statement,
)
from .dot import export_spec_dot

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR = 0, 1, 2

RING, HOM, IDEAL, BIAMALG = "ring", "hom", "ideal", "bi-amalgamation"
INSTANCE_PROPS = ("fiber", "star", "doublestar", "blackstar")


@dataclass
class ExecutionOptions:
    base_dir: str = "."  # export paths are relative to this directory
    source_name: str = "<script>"


@dataclass(frozen=True)
class CheckOutcome:
    statement: CheckStmt
    passed: bool
    witness: Any = None
    detail: str = ""
    notes: Tuple[str, ...] = ()
    replay: str = ""

    @property
    def line(self) -> str:
        verdict = "true" if self.passed else "false"
        return f"{self.statement.title}: {verdict}"


@dataclass
class ExecutionResult:
    exit_code: int = EXIT_OK
    lines: List[str] = field(default_factory=list)
    outcomes: List[CheckOutcome] = field(default_factory=list)
    diagnostics: List[str] = field(default_factory=list)

    def report(self, source_name: str = "<script>") -> Dict[str, Any]:
        """The result in the harness report layout, one entry per check"""
        from .. import __version__
        from ..harness.suite import jsonable

        results = []
        for outcome in self.outcomes:
            failures = [] if outcome.passed else [{"replay": outcome.replay, "witness": jsonable(outcome.witness)}]
            results.append({
                "theorem": outcome.statement.title,
                "subject": outcome.statement.subject,
                "instances": 1,
                "passed": int(outcome.passed),
                "failures": failures,
                "degeneracy_notes": {note: 1 for note in sorted(set(outcome.notes))},
            })
        meta = {"caps": None, "seed": None, "version": __version__, "script": source_name,
                "exit_code": self.exit_code, "diagnostics": list(self.diagnostics)}
        return {"meta": meta, "results": results}


# --- name resolution ---

def _need(kinds: Dict[str, str], name: str, wanted: Tuple[str, ...], span: Optional[Span]) -> str:
    kind = kinds.get(name)
    if kind is None:
        raise NameResolutionError(f"{name!r} is not declared", span)
    if kind not in wanted:
        raise NameResolutionError(f"{name!r} is a {kind}, expected {' or '.join(wanted)}", span)
    return kind


def _resolve_expr(kinds: Dict[str, str], expr: RingExpr) -> None:
    if isinstance(expr, RingRef):
        _need(kinds, expr.name, (RING,), expr.span)
    elif isinstance(expr, ProductExpr):
        _resolve_expr(kinds, expr.left)
        _resolve_expr(kinds, expr.right)
    elif isinstance(expr, PolyQuotExpr):
        _resolve_expr(kinds, expr.base)
    elif isinstance(expr, QuotientExpr):
        _resolve_expr(kinds, expr.ring)
        _need(kinds, expr.ideal, (IDEAL,), expr.span)


def resolve_names(script: Script) -> None:
    """Every name declared once, before use, and of the kind its position requires"""
    kinds: Dict[str, str] = {}

    def declare(name: str, kind: str, span: Optional[Span]) -> None:
        if name in kinds:
            raise NameResolutionError(f"{name!r} is already declared as a {kinds[name]}", span)
        kinds[name] = kind

    for stmt in script:
        if isinstance(stmt, RingDecl):
            _resolve_expr(kinds, stmt.expr)
            declare(stmt.name, RING, stmt.span)
        elif isinstance(stmt, HomDecl):
            _need(kinds, stmt.source, (RING,), stmt.span)
            _need(kinds, stmt.target, (RING,), stmt.span)
            declare(stmt.name, HOM, stmt.span)
        elif isinstance(stmt, IdealDecl):
            _need(kinds, stmt.ring, (RING,), stmt.span)
            declare(stmt.name, IDEAL, stmt.span)
        elif isinstance(stmt, BiamalgDecl):
            _need(kinds, stmt.A, (RING,), stmt.span)
            for hom in (stmt.f, stmt.g):
                _need(kinds, hom, (HOM,), stmt.span)
            for ideal in (stmt.b, stmt.c):
                _need(kinds, ideal, (IDEAL,), stmt.span)
            declare(stmt.name, BIAMALG, stmt.span)
        elif isinstance(stmt, CheckStmt):
            wanted = (BIAMALG,) if stmt.prop in INSTANCE_PROPS else (RING, BIAMALG)
            _need(kinds, stmt.subject, wanted, stmt.span)
            if stmt.prop == "localize":
                _need(kinds, stmt.arg, (IDEAL,), stmt.span)
        elif isinstance(stmt, (ExportStmt, NamesStmt)):
            _need(kinds, stmt.subject, (RING, BIAMALG), stmt.span)


# --- execution ---

class Interpreter:
    def __init__(self, options: Optional[ExecutionOptions] = None):
        self.options = options or ExecutionOptions()
        self.env: Dict[str, Any] = {}
        self.declarations: List[Statement] = []
        self.result = ExecutionResult()

    def run(self, script: Script) -> ExecutionResult:
        try:
            resolve_names(script)
            for stmt in script:
                self.execute(stmt)
        except DSLError as exc:
            self._diagnose(str(exc))
        return self.result

    def _diagnose(self, message: str) -> None:
        logger.error(message)
        self.result.diagnostics.append(message)
        self.result.exit_code = EXIT_INPUT_ERROR

    def execute(self, stmt: Statement) -> None:
        try:
            self._execute(stmt)
        except DSLError:
            raise
        except BiamalgError as exc:
            raise ScriptRuntimeError(str(exc), stmt.span) from exc
        if isinstance(stmt, DECLARATIONS):
            self.declarations.append(stmt)

    def _execute(self, stmt: Statement) -> None:
        if isinstance(stmt, RingDecl):
            self.env[stmt.name] = self.ring(stmt.expr)
        elif isinstance(stmt, HomDecl):
            self.env[stmt.name] = self.hom(stmt)
        elif isinstance(stmt, IdealDecl):
            self.env[stmt.name] = ideal_span(self.env[stmt.ring], stmt.elements)
        elif isinstance(stmt, BiamalgDecl):
            f, g = self.env[stmt.f], self.env[stmt.g]
            self.env[stmt.name] = biamalg_new(self.env[stmt.A], f.codomain, g.codomain, f, g,
                                              self.env[stmt.b], self.env[stmt.c], name=stmt.name)
        elif isinstance(stmt, CheckStmt):
            outcome = self.check(stmt)
            self.result.outcomes.append(outcome)
            self.result.lines.append(outcome.line)
            if not outcome.passed:
                if outcome.detail:
                    self.result.lines.append(f"  {outcome.detail}")
                if self.result.exit_code == EXIT_OK:
                    self.result.exit_code = EXIT_CHECK_FAILED
        elif isinstance(stmt, ExportStmt):
            path = os.path.join(self.options.base_dir, stmt.path)
            export_spec_dot(self.env[stmt.subject], path)
            self.result.lines.append(f"spec {stmt.subject}: written to {stmt.path}")
        elif isinstance(stmt, NamesStmt):
            ring = self._ring_of(self.env[stmt.subject])
            self.result.lines.append(f"names {stmt.subject}:")
            self.result.lines.extend(f"  {code}: {ring.label(code)}" for code in range(ring.order))

    # --- declarations ---

    def ring(self, expr: RingExpr) -> Ring:
        if isinstance(expr, ZModExpr):
            return construct_ring(ZMod(expr.n))
        if isinstance(expr, FieldExpr):
            cap = get_settings().max_order
            if expr.q > cap:
                raise OrderCapExceeded(expr.q, cap)
            return galois_field(expr.q)
        if isinstance(expr, RingRef):
            return self.env[expr.name]
        if isinstance(expr, ProductExpr):
            return product(self.ring(expr.left), self.ring(expr.right))
        if isinstance(expr, PolyQuotExpr):
            base = self.ring(expr.base)
            degree = max(d for _, d in expr.terms)
            cap = base.settings.max_order
            if base.order > 1 and (degree > cap.bit_length() or base.order ** degree > cap):
                raise OrderCapExceeded(base.order ** min(degree, cap.bit_length() + 1), cap)
            modulus = [base.zero] * (degree + 1)
            for coeff, d in expr.terms:
                if not 0 <= coeff < base.order:
                    raise ScriptRuntimeError(f"coefficient {coeff} is not an element of {base!r}", expr.span)
                modulus[d] = base.add(modulus[d], coeff)
            return poly_quot(base, modulus, expr.var)
        if isinstance(expr, QuotientExpr):
            ring = self.ring(expr.ring)
            ideal: Ideal = self.env[expr.ideal]
            if ideal.ring != ring:
                raise ScriptRuntimeError(f"{expr.ideal} is an ideal of {ideal.ring!r}, not of {ring!r}", expr.span)
            return quotient_by(ideal)[0]
        raise ScriptRuntimeError(f"unsupported ring expression {expr!r}")

    def hom(self, stmt: HomDecl) -> RingHom:
        source, target = self.env[stmt.source], self.env[stmt.target]
        if stmt.kind == "canonical":
            return hom_build(source, target, "canonical", name=stmt.name)
        if stmt.kind == "id":
            return hom_build(source, target, "identity", name=stmt.name)
        spec = "image-table" if len(stmt.images) == source.order else "generator-images"
        return hom_build(source, target, spec, list(stmt.images), name=stmt.name)

    @staticmethod
    def _ring_of(subject: Union[Ring, BiAmalgInstance]) -> Ring:
        return subject.ring if isinstance(subject, BiAmalgInstance) else subject

    def _replay(self, stmt: CheckStmt) -> str:
        return "".join(format_statement(s) + "\n" for s in self.declarations + [stmt])

    # --- checks ---

    def check(self, stmt: CheckStmt) -> CheckOutcome:
        subject = self.env[stmt.subject]
        handler = getattr(self, f"_check_{stmt.prop}")
        passed, witness, detail, notes = handler(stmt, subject)
        outcome = CheckOutcome(stmt, bool(passed), witness, detail, tuple(n for n in notes if n),
                               "" if passed else self._replay(stmt))
        logger.info(f"{stmt.subject}: {outcome.line}")
        return outcome

    def _verdict(self, verdict: PropertyVerdict):
        detail = verdict.note
        if not verdict.holds and verdict.witness is not None:
            detail = f"witness {self._witness_text(verdict.witness)}" + (f"; {verdict.note}" if verdict.note else "")
        return verdict.holds, verdict.witness, detail, (verdict.note,)

    @staticmethod
    def _witness_text(witness: Any) -> str:
        if isinstance(witness, Ideal):
            return witness.label()
        if isinstance(witness, np.integer):
            return str(int(witness))
        return str(witness)

    def _check_gaussian(self, stmt, subject):
        return self._verdict(is_gaussian(self._ring_of(subject)))

    def _check_prufer(self, stmt, subject):
        return self._verdict(is_prufer(self._ring_of(subject)))

    def _check_local(self, stmt, subject):
        if isinstance(subject, BiAmalgInstance):
            report = local_criterion(subject)
            detail = (f"A/i0 local: {report.a_mod_i0_local}, b in Jac(B): {report.b_in_jacobson}, "
                      f"c in Jac(C): {report.c_in_jacobson}")
            return report.direct, None, detail, ()
        return ring_invariants(subject).is_local, None, "", ()

    def _check_spec(self, stmt, subject):
        if isinstance(subject, BiAmalgInstance):
            report = assemble_spec(subject)
            theorem = verify_spec_theorem(subject)
            labels = ", ".join(f"{e.ideal.label()} [{e.provenance}]" for e in report.entries)
            self.result.lines.append(f"  Spec {stmt.subject} = {{{labels}}}")
            return report.ok and theorem.ok, None, "assembled spectrum disagrees with enumeration", ()
        spectrum = enumerate_spec(subject)
        rank = int(ideal_lattice(subject).rank.max())
        scan = spec_by_ideal_scan(subject, max_generators=max(2, rank))
        self.result.lines.append(f"  Spec {stmt.subject} = {{{', '.join(p.label() for p in spectrum)}}}")
        return set(spectrum) == set(scan), None, "idempotent spectrum disagrees with the ideal scan", ()

    def _check_fiber(self, stmt, subject):
        report = verify_fiber_product(subject)
        return report.ok, None, "R differs from the fiber product", ()

    def _check_condition(self, subject, name: str):
        return self._verdict(getattr(condition_checks(subject), name))

    def _check_star(self, stmt, subject):
        return self._check_condition(subject, "star")

    def _check_doublestar(self, stmt, subject):
        return self._check_condition(subject, "doublestar")

    def _check_blackstar(self, stmt, subject):
        return self._check_condition(subject, "blackstar")

    def _check_localize(self, stmt, subject):
        prime: Ideal = self.env[stmt.arg]
        if isinstance(subject, BiAmalgInstance):
            report = verify_localization_iso(subject, prime)
            detail = (f"identity {report.identity_holds}, lands {report.lands_in_right}, "
                      f"kernel {report.kernel_matches}, bijective {report.bijective}")
            self.result.lines.append(f"  localized order {report.localized_order}")
            return report.ok, prime, detail, (report.note,)
        if prime.ring != subject or not is_prime_ideal(prime):
            raise ScriptRuntimeError(f"{stmt.arg} is not a prime ideal of {subject!r}", stmt.span)
        local = localize_at_prime(subject, prime)
        self.result.lines.append(f"  localized order {local.ring.order}")
        return True, None, "", ()

    def _check_thm(self, stmt, subject):
        spec = registry.get(stmt.arg)
        is_instance = isinstance(subject, BiAmalgInstance)
        if (spec.scope == RING_SCOPE) == is_instance:
            wanted = "a ring" if spec.scope == RING_SCOPE else "a bi-amalgamation"
            raise ScriptRuntimeError(f"theorem {stmt.arg} applies to {wanted}", stmt.span)
        unknown = [c for c in stmt.drop if c not in spec.clauses]
        if unknown:
            raise ScriptRuntimeError(f"{stmt.arg} has no clause {', '.join(unknown)}", stmt.span)
        result = registry.run(stmt.arg, subject)
        case = result.first_violation(stmt.drop)
        if case is None:
            return True, None, "", result.notes
        return False, case.witness, f"violated at {case.label}", result.notes


def execute_script(script: Script, options: Optional[ExecutionOptions] = None) -> ExecutionResult:
    return Interpreter(options).run(script)


def run_source(source: str, options: Optional[ExecutionOptions] = None) -> ExecutionResult:
    """Parse and execute; lexical and parse errors become exit code 2 with a diagnostic"""
    from .parser import parse_dsl

    try:
        script = parse_dsl(source)
    except DSLError as exc:
        result = ExecutionResult(exit_code=EXIT_INPUT_ERROR)
        result.diagnostics.append(str(exc))
        logger.error(str(exc))
        return result
    return execute_script(script, options)
