# Collects the one-line verdicts printed by test_acceptance.py and repeats
# them in the terminal summary, where output capture cannot hide them.

VERDICTS = []


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
