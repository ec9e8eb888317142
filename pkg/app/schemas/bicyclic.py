# app/schemas/bicyclic.py
from pydantic import BaseModel
from typing import Optional


class BicyclicCheckOut(BaseModel):
    trace: str
    sub: str
    valid: bool
    normalizer: str
    l: Optional[int] = None
    threshold: int
    period: Optional[int] = None
    infinite_start: Optional[int] = None
    sampled_mismatches: int = 0
