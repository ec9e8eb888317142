# app/routers/bicyclic.py
from fastapi import APIRouter, Query

from app.schemas.bicyclic import BicyclicCheckOut
from app.services.reports import bicyclic_check_report
from app.services.text_formats import parse_bicyclic_trace, parse_tkd

router = APIRouter()


@router.get("/check", response_model=BicyclicCheckOut)
def bicyclic_check_endpoint(
    trace: str = Query(..., description="prefix=[..];tail=inf|per([..])"),
    sub: str = Query(..., description="k=K,d=D or E"),
    samples: int = Query(200, ge=0, le=10_000),
):
    return bicyclic_check_report(parse_bicyclic_trace(trace), parse_tkd(sub), samples=samples)
