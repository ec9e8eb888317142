# app/schemas/semigroup.py
from pydantic import BaseModel, Field
from typing import Dict, List, Optional


class SemigroupSpec(BaseModel):
    """Generators as 1-based point -> image maps, e.g. {"1": 2} for beta."""
    degree: int = Field(ge=1)
    generators: List[Dict[int, int]] = Field(min_length=1)
    name: Optional[str] = None


class ElementOut(BaseModel):
    index: int
    label: str
    idempotent: bool
