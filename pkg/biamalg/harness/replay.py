"""
Replay scripts: DSL text that rebuilds a catalog subject and re-runs one check.

Rings are declared from their descriptors, homomorphisms as full image
tables and ideals through minimal generators, so a script reproduces the
exact element encoding the harness saw.
"""
from typing import Dict, Iterable, List, Optional

from ..core.bowtie import BiAmalgInstance
from ..core.hom import RingHom
from ..core.ideal import Ideal, ideal_span, minimal_generators
from ..core.ring import (
    Descriptor,
    GaloisField,
    PolyQuot,
    Product,
    Quotient,
    Ring,
    ZMod,
    construct_ring,
    describe,
    format_poly,
)
from ..dsl.ast import clause_literal
from ..errors import BiamalgError


def check_statement(subject: str, theorem_id: str, dropped: Iterable[str] = ()) -> str:
    dropped = sorted(dropped)
    if not dropped:
        return f"check {subject} thm({theorem_id});"
    clauses = ", ".join(clause_literal(c) for c in dropped)
    return f"check {subject} thm({theorem_id}, drop=[{clauses}]);"


class ScriptWriter:
    """Accumulates declarations, naming each ring, hom and ideal once"""

    def __init__(self):
        self.lines: List[str] = []
        self._rings: Dict[Descriptor, str] = {}
        self._taken = set()
        self._counter = 0

    def _fresh(self, prefix: str) -> str:
        while True:
            self._counter += 1
            name = f"{prefix}{self._counter}"
            if name not in self._taken:
                return name

    def _claim(self, name: Optional[str], prefix: str) -> str:
        if name is None or name in self._taken:
            name = self._fresh(prefix)
        self._taken.add(name)
        return name

    def ring(self, descriptor: Descriptor, name: Optional[str] = None) -> str:
        if descriptor in self._rings:
            return self._rings[descriptor]
        expr = self._expr(descriptor)
        name = self._claim(name, "S")
        self.lines.append(f"ring {name} = {expr};")
        self._rings[descriptor] = name
        return name

    def _operand(self, descriptor: Descriptor, right: bool) -> str:
        if isinstance(descriptor, (ZMod, GaloisField)):
            return self._expr(descriptor)
        if isinstance(descriptor, Product):
            text = self._expr(descriptor)
            return f"({text})" if right else text
        return self.ring(descriptor)

    def _expr(self, descriptor: Descriptor) -> str:
        if isinstance(descriptor, ZMod):
            return f"Z/{descriptor.n}"
        if isinstance(descriptor, GaloisField):
            return f"GF({descriptor.p ** descriptor.k})"
        if isinstance(descriptor, Product):
            return f"{self._operand(descriptor.left, False)} * {self._operand(descriptor.right, True)}"
        if isinstance(descriptor, PolyQuot):
            base = self.ring(descriptor.base)
            return f"{base}[{descriptor.var}]/({format_poly(descriptor.modulus, descriptor.var)})"
        if isinstance(descriptor, Quotient):
            parent = construct_ring(descriptor.parent)
            parent_name = self.ring(descriptor.parent)
            ideal_name = self.ideal(ideal_span(parent, descriptor.ideal), parent_name)
            return f"{parent_name}/{ideal_name}"
        raise BiamalgError(f"{describe(descriptor)} has no script form")

    def ideal(self, ideal: Ideal, ring_name: Optional[str] = None, name: Optional[str] = None) -> str:
        ring_name = ring_name or self.ring(ideal.ring.descriptor)
        gens = ", ".join(str(g) for g in minimal_generators(ideal) if g != ideal.ring.zero)
        name = self._claim(name, "I")
        self.lines.append(f"ideal {name} = span({ring_name}, [{gens}]);")
        return name

    def hom(self, hom: RingHom, name: Optional[str] = None) -> str:
        source = self.ring(hom.domain.descriptor)
        target = self.ring(hom.codomain.descriptor)
        name = self._claim(name, "h")
        images = ", ".join(str(int(v)) for v in hom.table)
        self.lines.append(f"hom {name}: {source} -> {target} = images[{images}];")
        return name

    def instance(self, inst: BiAmalgInstance, name: str = "R") -> str:
        a = self.ring(inst.A.descriptor, "A")
        b_ring = self.ring(inst.B.descriptor, "B")
        c_ring = self.ring(inst.C.descriptor, "C")
        f = self.hom(inst.f, "f")
        g = self.hom(inst.g, "g")
        b = self.ideal(inst.b, b_ring, "b")
        c = self.ideal(inst.c, c_ring, "c")
        name = self._claim(name, "R")
        self.lines.append(f"biamalg {name} = ({a}, {f}, {g}, {b}, {c});")
        return name

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def instance_script(inst: BiAmalgInstance, theorem_id: str, dropped: Iterable[str] = ()) -> str:
    writer = ScriptWriter()
    subject = writer.instance(inst)
    writer.lines.append(check_statement(subject, theorem_id, dropped))
    return writer.text()


def ring_script(ring: Ring, theorem_id: str, dropped: Iterable[str] = ()) -> str:
    writer = ScriptWriter()
    subject = writer.ring(ring.descriptor, "S")
    writer.lines.append(check_statement(subject, theorem_id, dropped))
    return writer.text()


def replay_script(subject, theorem_id: str, dropped: Iterable[str] = ()) -> str:
    if isinstance(subject, BiAmalgInstance):
        return instance_script(subject, theorem_id, dropped)
    return ring_script(subject, theorem_id, dropped)
