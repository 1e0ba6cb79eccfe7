import pytest

from mcor.seqdb import GapConstraint, IndexedDatabase, Pattern, SequenceDatabase, build_index

RUNNING = "adbdadcdccabadcd"


@pytest.fixture
def gap03():
    return GapConstraint(0, 3)


@pytest.fixture
def running_db():
    return SequenceDatabase.from_strings([RUNNING])


@pytest.fixture
def running_idx(running_db):
    return IndexedDatabase.build(running_db)


@pytest.fixture
def running_seq_idx():
    return build_index(RUNNING)


def pat(text, a=0, b=3):
    return Pattern(tuple(text), GapConstraint(a, b))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
