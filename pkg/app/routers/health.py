from fastapi import APIRouter
import platform, time, datetime

from app.config import settings
from app.services.corpus import corpus_ids

router = APIRouter()

# Track uptime
start_time = time.time()

@router.get("/health")
def health_check():
    return {
        "status": "ok",
        "env": settings.ENV,
        "uptime_hours": round((time.time() - start_time) / 3600, 2),
        "limits": {
            "max_elements": settings.MAX_ELEMENTS,
            "max_subsemigroups": settings.MAX_SUBSEMIGROUPS,
            "max_pairs": settings.MAX_PAIRS,
            "oracle_partition_limit": settings.ORACLE_PARTITION_LIMIT,
        },
        "corpus": corpus_ids(),
        "server_info": {
            "python_version": platform.python_version(),
            "timestamp": datetime.datetime.now().isoformat(),
        },
    }
