# app/services/text_formats.py
"""
Text syntax shared by the CLI and the HTTP routes.

  partition   0|1,3|2        omitted elements are singletons
  sub         4,5            idempotents are added; must already be closed
  pair        <partition>/<sub>
  bicyclic    prefix=[3];tail=per([2])   prefix=[1,2];tail=inf
  tkd         k=3,d=2   or   E
"""
import json
import re
from pathlib import Path
from typing import List

from pydantic import ValidationError

from app.schemas.semigroup import ElementOut, SemigroupSpec
from app.services.bicyclic import BicyclicTrace, TkdSub
from app.services.corpus import corpus_semigroup
from app.services.pairs_lattice import IKPair
from app.services.relations import EqRelation
from app.services.semigroup_core import (
    ElementSubset,
    FiniteInverseSemigroup,
    FullInverseSub,
    PartialPerm,
    closure,
    is_full_inverse,
)
from app.shared.errors import InputError

CORPUS_PREFIX = "corpus:"

_BICYCLIC_TRACE = re.compile(
    r"^prefix=\[(?P<prefix>[\d,\s]*)\];tail=(?:(?P<inf>inf)|per\(\[(?P<pattern>[\d,\s]+)\]\))$"
)
_TKD = re.compile(r"^k=(?P<k>\d+),d=(?P<d>\d+)$")


# =========================================================
# Semigroups
# =========================================================
def build_semigroup(spec: SemigroupSpec) -> FiniteInverseSemigroup:
    generators = [PartialPerm.from_mapping(spec.degree, g) for g in spec.generators]
    return closure(generators, name=spec.name)


def parse_spec(text: str) -> SemigroupSpec:
    try:
        return SemigroupSpec.model_validate_json(text)
    except ValidationError as exc:
        raise InputError("malformed semigroup spec", payload={"errors": json.loads(exc.json())}) from None


def load_semigroup(source: str) -> FiniteInverseSemigroup:
    """`corpus:<id>` or a path to a JSON spec."""
    if source.startswith(CORPUS_PREFIX):
        return corpus_semigroup(source[len(CORPUS_PREFIX):])
    path = Path(source)
    if not path.is_file():
        raise InputError(f"no such spec file: {source}")
    return build_semigroup(parse_spec(path.read_text(encoding="utf-8")))


def element_table(S: FiniteInverseSemigroup) -> List[ElementOut]:
    return [
        ElementOut(index=a, label=S.element_label(a), idempotent=S.is_idempotent(a))
        for a in range(S.size)
    ]


# =========================================================
# Partitions, subsemigroups and pairs
# =========================================================
def _indices(text: str) -> List[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise InputError(f"expected comma separated indices, got {text!r}") from None


def parse_partition(text: str, size: int) -> EqRelation:
    blocks = [_indices(block) for block in text.split("|")] if text.strip() else []
    return EqRelation.from_blocks(size, [b for b in blocks if b])


def parse_trace(S: FiniteInverseSemigroup, text: str) -> EqRelation:
    """Partition of idempotent element indices, returned on idempotent positions."""
    blocks = [_indices(block) for block in text.split("|")] if text.strip() else []
    positions = []
    for block in blocks:
        for e in block:
            if not 0 <= e < S.size or not S.is_idempotent(e):
                raise InputError(f"{e} is not an idempotent element index")
        positions.append([int(S.idem_pos[e]) for e in block])
    return EqRelation.from_blocks(len(S.idempotents), [b for b in positions if b])


def parse_sub(S: FiniteInverseSemigroup, text: str) -> FullInverseSub:
    members = [] if text.strip() in ("", "E") else _indices(text)
    if any(not 0 <= a < S.size for a in members):
        raise InputError(f"element index out of range 0..{S.size - 1}")
    sub = FullInverseSub.from_members(list(S.idempotents) + members)
    if not is_full_inverse(S, sub):
        raise InputError(f"{text!r} plus the idempotents is not an inverse subsemigroup")
    return sub


def parse_pair(S: FiniteInverseSemigroup, text: str) -> IKPair:
    tau_text, sep, sub_text = text.partition("/")
    if not sep:
        raise InputError(f"pair must read <partition>/<sub>, got {text!r}")
    return IKPair(parse_trace(S, tau_text), parse_sub(S, sub_text))


def format_partition(rho: EqRelation) -> str:
    return "|".join(",".join(str(a) for a in block) for block in rho.blocks)


def format_trace(S: FiniteInverseSemigroup, tau: EqRelation) -> str:
    return "|".join(",".join(str(S.idempotents[p]) for p in block) for block in tau.blocks)


def trace_blocks(S: FiniteInverseSemigroup, tau: EqRelation) -> List[List[int]]:
    return [[S.idempotents[p] for p in block] for block in tau.blocks]


def format_sub(T: ElementSubset) -> str:
    return ",".join(str(a) for a in T)


# =========================================================
# Bicyclic monoid
# =========================================================
def parse_bicyclic_trace(text: str) -> BicyclicTrace:
    match = _BICYCLIC_TRACE.match(text.replace(" ", ""))
    if not match:
        raise InputError(f"bicyclic trace must read prefix=[..];tail=inf|per([..]), got {text!r}")
    prefix = _indices(match["prefix"])
    if match["inf"]:
        return BicyclicTrace.infinite_from(prefix)
    return BicyclicTrace.periodic(prefix, _indices(match["pattern"]))


def parse_tkd(text: str) -> TkdSub:
    text = text.replace(" ", "")
    if text == "E":
        return TkdSub.idempotents()
    match = _TKD.match(text)
    if not match:
        raise InputError(f"bicyclic subsemigroup must read k=K,d=D or E, got {text!r}")
    return TkdSub.of(int(match["k"]), int(match["d"]))


def format_tkd(sub: TkdSub) -> str:
    return "E" if sub.is_idempotents else f"k={sub.k},d={sub.d}"
