from __future__ import annotations

import _report


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not _report.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_report.RESULTS):
        label, status, detail = _report.RESULTS[num]
        line = f"criterion {num} ({label}): {status}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
