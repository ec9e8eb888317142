# app/schemas/genset.py
from pydantic import BaseModel, Field
from typing import List


class GeneratorWitness(BaseModel):
    """omega = chi_|Y| v nu_<X x X> for finite X (idempotents) and Y."""
    idempotents: List[int] = Field(default_factory=list)
    elements: List[int] = Field(default_factory=list)
    minimal: bool = True


class OmegaFGReport(BaseModel):
    semigroup_id: str
    maximal_idempotents: List[int] = Field(default_factory=list)
    every_idempotent_below_maximal: bool
    witness: GeneratorWitness
    subsemigroup_condition: bool
    subsemigroup_members: List[int] = Field(default_factory=list)


class AlmostFGWitness(BaseModel):
    sub: List[int]
    generators: List[int] = Field(default_factory=list)
    chi_generated: bool


class NoetherianReport(BaseModel):
    semigroup_id: str
    subsemigroup_height: int
    trace_height: int
    lattice_height: int
    height_bound_holds: bool
    all_subsemigroups_finitely_generated: bool
    left_noetherian: bool
