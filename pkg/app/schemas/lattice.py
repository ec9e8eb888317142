# app/schemas/lattice.py
from pydantic import BaseModel, Field
from typing import Dict, List, Literal, Optional, Tuple

from app.schemas.semigroup import ElementOut

Blocks = List[List[int]]


class PairOut(BaseModel):
    """tau as blocks of idempotent element indices; sub as element indices."""
    tau: Blocks
    sub: List[int]
    text: str


class NodeOut(BaseModel):
    index: int
    pair: PairOut
    rho: Blocks


class LatticeOut(BaseModel):
    semigroup_id: str
    elements: List[ElementOut] = Field(default_factory=list)
    nodes: List[NodeOut] = Field(default_factory=list)
    hasse: List[Tuple[int, int]] = Field(default_factory=list)
    minimum: int
    maximum: int
    height: int


class PairsOut(BaseModel):
    semigroup_id: str
    elements: List[ElementOut] = Field(default_factory=list)
    trace_count: int
    subsemigroup_count: int
    candidate_count: int
    pairs: List[PairOut] = Field(default_factory=list)


class PairCheckOut(BaseModel):
    pair: PairOut
    valid: bool
    valid_via_minimals: Optional[bool] = None
    valid_via_normality: bool
    in_normalizer: bool
    rho: Optional[Blocks] = None


class PairArithmeticOut(BaseModel):
    op: Literal["join", "meet"]
    p1: PairOut
    p2: PairOut
    result: PairOut
    rho: Blocks
    cross_check: bool


class DecomposeOut(BaseModel):
    rho: Blocks
    pair: PairOut
    nu_part: Blocks
    chi_part: Blocks
    witnesses: Dict[int, int] = Field(default_factory=dict)
    nu_generators: List[Tuple[int, int]] = Field(default_factory=list)
    chi_generators: List[Tuple[int, int]] = Field(default_factory=list)
