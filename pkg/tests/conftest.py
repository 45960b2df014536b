from hypothesis import settings

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("repo")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") == "call" and "test_acceptance.py::test_criterion_" in rep.nodeid:
                name = rep.nodeid.split("::test_criterion_")[1]
                lines.append((name, "PASS" if outcome == "passed" else "FAIL", rep.duration))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, verdict, secs in sorted(lines, key=lambda x: int(x[0].split("_")[0])):
            terminalreporter.write_line(f"{verdict} criterion {name.replace('_', ' ', 1)} ({secs:.2f}s)")
