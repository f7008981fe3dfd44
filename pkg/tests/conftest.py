def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section('acceptance criteria')
        for line in sorted(RESULTS, key=lambda s: int(s.split()[1].rstrip(':'))):
            terminalreporter.write_line(line)
