# app/routers/lattice.py
from typing import Literal

from fastapi import APIRouter, Query
from fastapi.responses import PlainTextResponse

from app.dependencies import LatticeDep, SemigroupDep
from app.schemas.lattice import (
    DecomposeOut,
    LatticeOut,
    PairArithmeticOut,
    PairCheckOut,
    PairsOut,
)
from app.services.dot_export import render_hasse
from app.services.pairs_lattice import IKPair
from app.services.reports import (
    check_pair_report,
    decompose_report,
    lattice_report,
    pair_arithmetic_report,
    pairs_report,
)
from app.services.text_formats import parse_pair, parse_partition, parse_sub, parse_trace

router = APIRouter()


@router.post("/lattice", response_model=LatticeOut)
def get_lattice_endpoint(
    lattice: LatticeDep,
    format: Literal["json", "dot"] = Query("json"),
):
    """Every left congruence of the semigroup with its (trace, inverse kernel) pair."""
    if format == "dot":
        return PlainTextResponse(render_hasse(lattice), media_type="text/vnd.graphviz")
    return lattice_report(lattice)


@router.post("/pairs", response_model=PairsOut)
def list_pairs_endpoint(S: SemigroupDep):
    return pairs_report(S)


@router.post("/check-pair", response_model=PairCheckOut)
def check_pair_endpoint(
    S: SemigroupDep,
    tau: str = Query("", description="partition of idempotent indices, e.g. 0,1|2"),
    sub: str = Query("", description="non-idempotent members of T, e.g. 5,6"),
):
    return check_pair_report(S, IKPair(parse_trace(S, tau), parse_sub(S, sub)))


@router.post("/pair-arithmetic", response_model=PairArithmeticOut)
def pair_arithmetic_endpoint(
    S: SemigroupDep,
    p1: str = Query(..., description="<partition>/<sub>"),
    p2: str = Query(..., description="<partition>/<sub>"),
    op: Literal["join", "meet"] = Query("join"),
):
    return pair_arithmetic_report(S, op, parse_pair(S, p1), parse_pair(S, p2))


@router.post("/decompose", response_model=DecomposeOut)
def decompose_endpoint(
    S: SemigroupDep,
    rho: str = Query(..., description="partition of element indices"),
):
    return decompose_report(S, parse_partition(rho, S.size))
