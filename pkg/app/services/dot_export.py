# app/services/dot_export.py
"""
Graphviz DOT rendering of a congruence lattice's Hasse diagram.

    python -m app.cli lattice corpus:i2 --format dot > i2.gv
    dot -Tpng -O i2.gv
"""
from pathlib import Path
from typing import List

from app.services.pairs_lattice import CongruenceLattice, IKPair
from app.services.semigroup_core import FiniteInverseSemigroup


def trace_label(S: FiniteInverseSemigroup, pair: IKPair) -> str:
    """tau blocks written with idempotent element indices."""
    return "|".join(
        ",".join(str(S.idempotents[p]) for p in block) for block in pair.tau.blocks
    )


def node_label(S: FiniteInverseSemigroup, pair: IKPair) -> str:
    return f"τ:{trace_label(S, pair)} | T:{','.join(str(a) for a in pair.sub)}"


def render_hasse(lattice: CongruenceLattice, name: str = "") -> str:
    S = lattice.S
    lines: List[str] = []
    write_line = lines.append
    write_line(f'digraph "{name or S.name or "lattice"}" {{')
    write_line("\trankdir = BT;")
    write_line("\tnode [shape = box, fontsize = 10];")
    for i, node in enumerate(lattice.nodes):
        extra = ""
        if i == lattice.minimum or i == lattice.maximum:
            extra = ", style = bold"
        write_line(f'\t"{i}" [label="{node_label(S, node.pair)}"{extra}];')
    for i, j in lattice.hasse:
        write_line(f'\t"{i}" -> "{j}";')
    write_line("}")
    return "\n".join(lines) + "\n"


def write_hasse(lattice: CongruenceLattice, path: Path) -> Path:
    path = Path(path)
    path.write_text(render_hasse(lattice), encoding="utf-8")
    return path
