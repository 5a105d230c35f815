import warnings

import pytest

from qudit_transfer import ChainConfig

ACCEPTANCE_RESULTS = []


def make_config(*args, **kwargs):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return ChainConfig(*args, **kwargs)


@pytest.fixture
def paper_d3():
    return make_config(3, 20, 3, coupling_g=0.1)


@pytest.fixture
def paper_d4():
    return make_config(3, 20, 4, coupling_g=0.1)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
