import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(text): acceptance criterion; printed as one PASS/FAIL line "
        "in the terminal summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker:
        report.criterion_text = marker.args[0]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    entries = []
    seen = set()
    for reports in terminalreporter.stats.values():
        for rep in reports:
            text = getattr(rep, "criterion_text", None)
            if text is None or rep.nodeid in seen:
                continue
            seen.add(rep.nodeid)
            detail = "; ".join(str(v) for k, v in rep.user_properties if k == "detail")
            entries.append((text, rep.outcome, detail))
    if entries:
        terminalreporter.section("acceptance criteria")
        for text, outcome, detail in entries:
            word = "PASS" if outcome == "passed" else "FAIL"
            line = f"{word}: {text}"
            if detail:
                line += f"  [{detail}]"
            terminalreporter.write_line(line)
