# app/schemas/oracle.py
from pydantic import BaseModel, Field
from typing import List, Optional


class TheoremCheck(BaseModel):
    name: str
    passed: bool
    checked: int = 0
    counterexample: Optional[str] = None


class OracleReport(BaseModel):
    semigroup_id: str
    size: int
    strategy: str
    count: int
    congruences: List[List[List[int]]] = Field(default_factory=list)
    checks: List[TheoremCheck] = Field(default_factory=list)
    strategies_agree: Optional[bool] = None
    kernel_always_inverse: bool
    non_inverse_kernel: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)
