# python scripts/certify_corpus.py [id ...]
import logging
import os
import sys

# Add project root to Python path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from app.config import settings
from app.services.oracle import certify_corpus


def main(ids) -> int:
    logging.basicConfig(stream=sys.stderr, level=settings.LOG_LEVEL)
    reports = certify_corpus(ids or None)
    failures = 0
    for report in reports:
        failed = [c.name for c in report.checks if not c.passed]
        failures += len(failed)
        status = "ok" if not failed else "FAILED " + ",".join(failed)
        print(f"{report.semigroup_id:10s} |S|={report.size:3d} congruences={report.count:4d} {status}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
