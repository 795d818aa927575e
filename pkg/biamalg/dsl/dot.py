"""
Graphviz export of prime spectra.

To render an exported file:

    dot -Tpng spec.dot > spec.png

Every prime of a finite ring is maximal, so the specialization order is
discrete and the graph has no edges.
"""
import logging
from typing import List, Union

from ..core.bowtie import BiAmalgInstance
from ..core.invariants import enumerate_spec
from ..core.ring import Ring, describe
from ..core.spectra import BOWTIE, SHARP_B, assemble_spec
from ..errors import BiamalgError

logger = logging.getLogger(__name__)

COLORS = {BOWTIE: "#DAB21D", SHARP_B: "#708BA6", "sharp-C": "#8FB573", "prime": "#DCE9ED"}


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def spec_dot(subject: Union[Ring, BiAmalgInstance]) -> str:
    """DOT digraph with one node per prime; bi-amalgamation primes carry their provenance tag"""
    if isinstance(subject, BiAmalgInstance):
        title = subject.name
        nodes = [(entry.ideal.label(), entry.provenance, entry.label()) for entry in assemble_spec(subject).entries]
    else:
        title = describe(subject.descriptor)
        nodes = [(prime.label(), "prime", "") for prime in enumerate_spec(subject)]

    lines: List[str] = ["digraph spec {", f"\tlabel={_quote(f'Spec {title}')};",
                        "\tnode [shape=oval style=filled];",
                        "\t// finite ring: every prime is maximal, specialization is discrete, no edges"]
    append = lines.append
    for i, (label, tag, source) in enumerate(nodes):
        attrs = [f"label={_quote(label)}", f"fillcolor={_quote(COLORS[tag])}"]
        if tag != "prime":
            attrs.append(f"tag={_quote(tag)}")
            attrs.append(f"tooltip={_quote(source)}")
        append(f"\tp{i} [{', '.join(attrs)}];")
    append("}")
    return "\n".join(lines) + "\n"


def export_spec_dot(subject: Union[Ring, BiAmalgInstance], path: str) -> str:
    text = spec_dot(subject)
    try:
        with open(path, "w", encoding="utf-8") as out_file:
            out_file.write(text)
    except OSError as exc:
        raise BiamalgError(f"cannot write {path}: {exc.strerror or exc}") from exc
    logger.info(f"Wrote spectrum graph to {path}")
    return text
