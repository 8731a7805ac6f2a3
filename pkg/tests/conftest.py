"""Shared pytest plumbing: acceptance criteria get one summary line each."""

_ACCEPTANCE_RESULTS = []


def record_criterion(criterion_id, passed, detail=""):
    _ACCEPTANCE_RESULTS.append((criterion_id, bool(passed), detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid, ok, detail in sorted(_ACCEPTANCE_RESULTS):
        status = "PASS" if ok else "FAIL"
        line = f"criterion {cid}: {status}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
