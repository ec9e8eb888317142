# app/main.py
import logging

from fastapi import FastAPI, Request, APIRouter
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app.config import settings
from app.shared.errors import AppError
from app.routers import health, lattice, oracle, bicyclic


# -------- App --------
app = FastAPI(
    title="Inverse Congruence Lattice",
    description=(
        "Left congruences on finite inverse semigroups through (trace, inverse kernel) pairs: "
        "validity, lattice assembly, meets and joins, two-sided congruences, a brute-force "
        "certification oracle and the bicyclic monoid classification"
    ),
    version="1.0.0",
)

# CORS (tighten in prod)
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Logging
logging.basicConfig(level=settings.LOG_LEVEL)
logger = logging.getLogger(__name__)

# Error handlers
@app.exception_handler(AppError)
async def app_exception_handler(_: Request, err: AppError):
    if err.status_code >= 500:
        logger.error("%s: %s", type(err).__name__, err.message)
    return JSONResponse(status_code=err.status_code, content={"detail": err.message})

@app.exception_handler(Exception)
async def general_exception_handler(request: Request, exc: Exception):
    logger.error("Error occurred on path %s: %s", request.url.path, exc)
    return JSONResponse(status_code=500, content={"detail": "An unexpected error occurred. Please try again later."})

# Root
@app.get("/")
def read_root():
    return {"message": "Inverse congruence lattice service"}

# API router
api_router = APIRouter(prefix="/api/v1")
app.include_router(health.router, prefix="/system", tags=["System Health"])
api_router.include_router(lattice.router, tags=["Lattice"])
api_router.include_router(oracle.router, tags=["Oracle"])
api_router.include_router(bicyclic.router, prefix="/bicyclic", tags=["Bicyclic"])
app.include_router(api_router)
