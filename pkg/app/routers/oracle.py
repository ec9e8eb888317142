# app/routers/oracle.py
from typing import List, Literal, Optional

from fastapi import APIRouter, Query

from app.dependencies import LatticeDep, SemigroupDep
from app.schemas.genset import NoetherianReport, OmegaFGReport
from app.schemas.oracle import OracleReport
from app.services.corpus import corpus_ids, corpus_semigroup
from app.services.genset import noetherian_report, omega_fg_analysis
from app.services.oracle import certify

router = APIRouter()


@router.post("/oracle", response_model=OracleReport)
def oracle_endpoint(
    S: SemigroupDep,
    strategy: Optional[Literal["partitions", "principal-joins"]] = Query(None),
):
    """Brute-force left congruences and the certification ledger."""
    return certify(S, strategy)


@router.get("/oracle/corpus", response_model=List[str])
def list_corpus():
    return corpus_ids()


@router.get("/oracle/corpus/{semigroup_id}", response_model=OracleReport)
def oracle_corpus_endpoint(semigroup_id: str):
    return certify(corpus_semigroup(semigroup_id))


@router.post("/genset/omega", response_model=OmegaFGReport)
def omega_endpoint(S: SemigroupDep):
    return omega_fg_analysis(S)


@router.post("/genset/noetherian", response_model=NoetherianReport)
def noetherian_endpoint(lattice: LatticeDep):
    return noetherian_report(lattice.S, lattice)
