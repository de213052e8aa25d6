import os
from collections import defaultdict

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, print_blob=True, derandomize=True)
settings.load_profile("default")

# criterion number -> list of (part, passed, detail)
_ACCEPTANCE: dict[int, list] = defaultdict(list)


@pytest.fixture(scope="session")
def acceptance():
    def record(criterion: int, part: str, passed: bool, detail: str = ""):
        _ACCEPTANCE[criterion].append((part, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        parts = _ACCEPTANCE[k]
        ok = all(p[1] for p in parts)
        detail = "; ".join(f"{name}: {d}" if d else name for name, _, d in parts)
        tr.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def classes5():
    from indexcoding.digraph import enumerate_nonisomorphic

    return enumerate_nonisomorphic(5)


@pytest.fixture(scope="session")
def survey():
    """Reports for every class on one to five vertices, computed once."""
    import time

    from indexcoding.catalog import full_survey

    jobs = int(os.environ.get("INDEXCODING_JOBS", os.cpu_count() or 1))
    t0 = time.perf_counter()
    reports = full_survey(5, jobs=jobs, strict=False)
    return reports, time.perf_counter() - t0, jobs
