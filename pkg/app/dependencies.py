# app/dependencies.py
from functools import lru_cache
from typing import Annotated

from fastapi import Depends

from app.schemas.semigroup import SemigroupSpec
from app.services.pairs_lattice import CongruenceLattice, build_lattice
from app.services.semigroup_core import FiniteInverseSemigroup
from app.services.text_formats import build_semigroup


# Keyed by the canonical spec JSON so repeated requests reuse the enumeration
@lru_cache(maxsize=32)
def _semigroup_singleton(spec_json: str) -> FiniteInverseSemigroup:
    return build_semigroup(SemigroupSpec.model_validate_json(spec_json))


@lru_cache(maxsize=32)
def _lattice_singleton(spec_json: str) -> CongruenceLattice:
    return build_lattice(_semigroup_singleton(spec_json))


def get_semigroup(spec: SemigroupSpec) -> FiniteInverseSemigroup:
    return _semigroup_singleton(spec.model_dump_json())


def get_lattice(spec: SemigroupSpec) -> CongruenceLattice:
    return _lattice_singleton(spec.model_dump_json())


SemigroupDep = Annotated[FiniteInverseSemigroup, Depends(get_semigroup)]
LatticeDep = Annotated[CongruenceLattice, Depends(get_lattice)]
