import pytest

# criterion number -> (passed, detail), filled in by test_acceptance
ACCEPTANCE = {}


@pytest.fixture
def criterion():
    def record(number, title, passed, detail=""):
        ACCEPTANCE[number] = (title, passed, detail)
        line = f"criterion {number} [{title}]: {'PASS' if passed else 'FAIL'}"
        print(f"{line}  {detail}" if detail else line)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(
            f"criterion {number} [{title}]: {'PASS' if passed else 'FAIL'}  {detail}".rstrip()
        )
